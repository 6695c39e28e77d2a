//! `moufang`: command-line front end for the diagram prover, finite-model
//! checker, octonion verifier and deformation checks.
//!
//! Exit status: 0 on success, 1 on input errors, 2 when a derivation is not
//! found within budget or a checked identity fails.

mod commands;
mod records;
mod resolve;
mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use moufang_core::dsl::Format;
use moufang_core::rewrite::SearchBudget;

use commands::Outcome;

#[derive(Parser)]
#[command(name = "moufang", version, about = "Diagram rewriting and exact model checks for Moufang-type bialgebras")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    /// One JSON object per line, fixed field order.
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderAs {
    Ascii,
    Svg,
    Tikz,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a derivation of RHS from LHS, or of a named goal.
    Prove {
        /// Left side (DSL, `[..] + [..]` combination, Sweedler formula in x) or a goal name.
        lhs: String,
        rhs: Option<String>,
        /// Catalog theory name or theory file.
        #[arg(long)]
        theory: Option<String>,
        /// States, depth and seconds, e.g. `1000000,12,60`.
        #[arg(long)]
        budget: Option<String>,
        /// Also check every step on the registered models of the theory.
        #[arg(long)]
        check: bool,
        /// Extra models for --check (name or file).
        #[arg(long = "model")]
        models: Vec<String>,
    },
    /// Evaluate a diagram on a model.
    Eval {
        diagram: String,
        #[arg(long)]
        model: String,
        /// Basis indices, one per input wire; all inputs when omitted.
        #[arg(long)]
        input: Option<String>,
    },
    /// Report which catalog identities hold on models, or check one identity.
    CheckModel {
        #[arg(long = "model", required = true)]
        models: Vec<String>,
        lhs: Option<String>,
        rhs: Option<String>,
    },
    /// Exact identity checks on an octonion algebra.
    Octonion {
        #[arg(long, default_value = "-1,-1,-1", allow_hyphen_values = true)]
        params: String,
        /// Print the structure constants.
        #[arg(long)]
        export: bool,
    },
    /// Deformation checks, or the Lie-algebra case with --lie.
    Deform {
        /// binomial, o16, null-o16, null-loop-o16 or formal-loop.
        #[arg(long, conflicts_with_all = ["file", "lie"])]
        fixture: Option<String>,
        #[arg(long, conflicts_with = "lie")]
        file: Option<PathBuf>,
        /// sl2, abelian(N) or a Lie algebra file.
        #[arg(long)]
        lie: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Top degree of the binomial base and formal-loop fixtures.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Extra base models for --file.
        #[arg(long = "model")]
        models: Vec<String>,
        /// Print the deformation in file form.
        #[arg(long)]
        export: bool,
    },
    /// Draw a diagram.
    Render {
        diagram: String,
        #[arg(long = "as", value_enum, default_value_t = RenderAs::Ascii)]
        render_as: RenderAs,
    },
    /// Run the full check suite and print a pass/fail table.
    Suite {
        /// Restrict to these groups (comma-separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        budget: Option<String>,
    },
    /// Replay a saved trace (text or records).
    Replay {
        trace: PathBuf,
        #[arg(long)]
        theory: Option<String>,
        #[arg(long)]
        check: bool,
        #[arg(long = "model")]
        models: Vec<String>,
    },
}

fn budget(text: Option<&str>) -> Result<SearchBudget> {
    text.map_or_else(|| Ok(SearchBudget::default()), resolve::budget)
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Prove { lhs, rhs, theory, budget: b, check, models } => {
            let budget = budget(b.as_deref())?;
            commands::prove(&commands::ProveArgs { lhs, rhs, theory, budget, check, models })
        }
        Command::Eval { diagram, model, input } => commands::eval(&diagram, &model, input.as_deref()),
        Command::CheckModel { models, lhs, rhs } => commands::check_model(&models, lhs.as_deref(), rhs.as_deref()),
        Command::Octonion { params, export } => commands::octonion(&params, export),
        Command::Deform { fixture, file, lie, order, degree, models, export } => {
            commands::deform(&commands::DeformArgs { fixture, file, lie, order, degree, models, export })
        }
        Command::Render { diagram, render_as } => {
            let f = match render_as {
                RenderAs::Ascii => Format::Ascii,
                RenderAs::Svg => Format::Svg,
                RenderAs::Tikz => Format::Tikz,
            };
            commands::render_cmd(&diagram, f)
        }
        Command::Suite { only, budget: b } => {
            let budget = budget(b.as_deref())?;
            let seed = suite::seed_from_env()?;
            let mut records = suite::run(&only, &budget, seed)?;
            let summary = suite::summary(&records);
            let code = if records.iter().all(|r| r.passed()) { 0 } else { commands::FAILED };
            records.push(summary);
            Ok(Outcome { records, raw: None, code })
        }
        Command::Replay { trace, theory, check, models } => commands::replay(&trace, theory.as_deref(), check, &models),
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().context("cannot size the worker pool")?;
    }
    let outcome = dispatch(cli.command)?;
    let text = match cli.format {
        OutputFormat::Records => outcome.records.iter().map(|r| r.to_line() + "\n").collect(),
        OutputFormat::Text => match &outcome.raw {
            Some(raw) => raw.clone(),
            None => outcome.records.iter().map(|r| r.to_text() + "\n").collect(),
        },
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if outcome.code != 0 {
        let failing = outcome.records.iter().filter(|r| !r.passed()).count();
        if outcome.records.iter().any(|r| matches!(r, records::Record::Proof { found: false, .. })) {
            eprintln!("not found within budget");
        } else {
            eprintln!("{failing} check(s) failed");
        }
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
