//! Subcommand drivers. Each returns records plus an exit status; input
//! errors propagate as `Err` and become exit code 1.

use anyhow::{anyhow, bail, Context, Result};
use moufang_core::deform::lie::{casimir, h1, LieModule};
use moufang_core::deform::{
    binomial_conjugation_fixture, check_comoufang_mod, formal_loop_fixture, function_o16_fixture, kernel_map_rs,
    null_deformation, parse_deformation_file, write_deformation_file, DeformError, TruncatedDeformation,
};
use moufang_core::dsl::{render, Format};
use moufang_core::linalg::unflatten;
use moufang_core::models::{function_bialgebra, loop_bialgebra, FiniteBialgebraModel, IdentityCheck, MoufangSide, Tensor};
use moufang_core::octonion::{o16, traceless_malcev, CayleyAlgebra};
use moufang_core::rewrite::{check_soundness, search, LinComb, ProofTrace, SearchBudget};
use moufang_core::scalar::{fmt_scalar, parse_scalar};
use moufang_core::theories::{theory_by_name, Flag, Theory};
use num_traits::Zero;

use crate::records::{parse_records, Record};
use crate::resolve;

/// Exit status for "not found" and "identity fails".
pub const FAILED: u8 = 2;

pub struct Outcome {
    pub records: Vec<Record>,
    /// Verbatim text shown instead of the records in text mode.
    pub raw: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn new(records: Vec<Record>) -> Self {
        let code = if records.iter().all(Record::passed) { 0 } else { FAILED };
        Outcome { records, raw: None, code }
    }
}

fn soundness_records(trace: &ProofTrace, theory: &Theory, models: &[FiniteBialgebraModel]) -> Result<Vec<Record>> {
    let report = check_soundness(trace, theory, models)?;
    let mut out = Vec::new();
    if report.models.is_empty() {
        out.push(Record::check("soundness", "models", false, format!("no model satisfies {}", theory.name)));
    }
    for m in &report.models {
        let fails: Vec<_> = report.failures.iter().filter(|f| &f.model == m).collect();
        let mut r = Record::check(m, "soundness", fails.is_empty(), format!("{} steps compared", trace.len() + 1));
        if let (Some(f), Record::Check { degree, input, detail, .. }) = (fails.first(), &mut r) {
            *degree = Some(f.witness.degree);
            *input = Some(f.witness.input.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            *detail = format!("step {} disagrees", f.step);
        }
        out.push(r);
    }
    Ok(out)
}

pub struct ProveArgs {
    pub lhs: String,
    pub rhs: Option<String>,
    pub theory: Option<String>,
    pub budget: SearchBudget,
    pub check: bool,
    pub models: Vec<String>,
}

pub fn prove(a: &ProveArgs) -> Result<Outcome> {
    let loaded = a.theory.as_deref().map(resolve::theory).transpose()?;
    let (name, lhs, rhs, theory) = match &a.rhs {
        None => {
            let g = resolve::goal(&a.lhs, loaded.as_ref()).ok_or_else(|| anyhow!("unknown goal `{}`", a.lhs))?;
            let theory = match loaded {
                Some(t) => t.theory,
                None => theory_by_name(&g.theory)?,
            };
            (g.name, g.lhs.into(), g.rhs.into(), theory)
        }
        Some(rhs) => {
            let theory = match loaded {
                Some(t) => t.theory,
                None => theory_by_name("base")?,
            };
            let (l, r) = (resolve::side(&a.lhs).context("left side")?, resolve::side(rhs).context("right side")?);
            ("inline".to_string(), l, r, theory)
        }
    };
    let out = search(&lhs, &rhs, &theory, &a.budget)?;
    let mut records = vec![Record::Proof {
        goal: name,
        theory: theory.name.clone(),
        found: out.trace.is_some(),
        steps: out.trace.as_ref().map(ProofTrace::len),
        states: out.stats.states,
        depth: out.stats.depth,
        trace: out.trace.as_ref().map(ToString::to_string),
    }];
    let mut raw = None;
    if let Some(t) = &out.trace {
        t.replay(&theory).map_err(|e| anyhow!("internal error: fresh trace does not replay: {e}"))?;
        let mut text = t.to_string();
        if a.check {
            let checks = soundness_records(t, &theory, &resolve::models_with(&a.models)?)?;
            // comment lines keep the text form replayable
            for r in &checks {
                text.push_str(&format!("# {}\n", r.to_text()));
            }
            records.extend(checks);
        }
        raw = Some(text);
    }
    let mut o = Outcome::new(records);
    o.raw = raw;
    Ok(o)
}

pub fn replay(path: &std::path::Path, theory: Option<&str>, check: bool, models: &[String]) -> Result<Outcome> {
    let text = resolve::read(path)?;
    let trace_text = if text.trim_start().starts_with('{') {
        let recs = parse_records(&text).context("bad record file")?;
        recs.into_iter()
            .find_map(|r| match r {
                Record::Proof { trace: Some(t), .. } => Some(t),
                _ => None,
            })
            .ok_or_else(|| anyhow!("record file holds no proof"))?
    } else {
        text
    };
    let trace = ProofTrace::parse(&trace_text)?;
    let theory = match theory {
        Some(t) => resolve::theory(t)?.theory,
        None => theory_by_name(&trace.theory)?,
    };
    let mut records = vec![match trace.replay(&theory) {
        Ok(()) => Record::check("trace", "replay", true, format!("{} steps under {}", trace.len(), theory.name)),
        Err(e) => Record::check("trace", "replay", false, e.to_string()),
    }];
    if check && records[0].passed() {
        records.extend(soundness_records(&trace, &theory, &resolve::models_with(models)?)?);
    }
    Ok(Outcome::new(records))
}

pub fn eval(diagram: &str, model: &str, input: Option<&str>) -> Result<Outcome> {
    let comb: LinComb = resolve::side(diagram)?;
    let m = resolve::model(model)?;
    let (k, _) = comb.arity();
    let inputs: Vec<Vec<usize>> = match input {
        Some(s) => vec![resolve::indices(s)?],
        None => (0..m.dim().pow(k as u32)).map(|i| unflatten(i, m.dim(), k)).collect(),
    };
    let mut records = Vec::new();
    for idx in inputs {
        if idx.len() != k || idx.iter().any(|&i| i >= m.dim()) {
            bail!("input must be {k} indices below {}", m.dim());
        }
        let out = m.evaluate_comb(&comb, &Tensor::basis(m.dim(), &idx))?;
        records.push(Record::value(m.name(), &m.input_label(&idx), out.display(m.basis())));
    }
    Ok(Outcome::new(records))
}

fn identity_record(subject: &str, check: &str, result: &IdentityCheck, m: &FiniteBialgebraModel) -> Record {
    let mut r = Record::check(subject, check, result.holds(), "");
    if let (Some(w), Record::Check { degree, input, detail, .. }) = (result.witness(), &mut r) {
        *input = Some(m.input_label(&w.input));
        *degree = (w.degree > 0).then_some(w.degree);
        *detail = format!("difference {}", w.diff.display(m.basis()));
    }
    r
}

pub fn check_model(models: &[String], lhs: Option<&str>, rhs: Option<&str>) -> Result<Outcome> {
    if models.is_empty() {
        bail!("at least one --model is required");
    }
    let identity = match (lhs, rhs) {
        (Some(l), Some(r)) => Some((resolve::side(l)?, resolve::side(r)?)),
        (None, None) => None,
        _ => bail!("an identity needs both sides"),
    };
    let mut records = Vec::new();
    let mut code = 0;
    for spec in models {
        let m = resolve::model(spec)?;
        let flags: Vec<&str> = m.flags().iter().map(|f| f.name()).collect();
        records.push(Record::value(m.name(), "registered", format!("dim {}, flags [{}]", m.dim(), flags.join(" "))));
        match &identity {
            Some((l, r)) => {
                let res = m.holds_comb(l, r)?;
                if !res.holds() {
                    code = FAILED;
                }
                records.push(identity_record(m.name(), "identity", &res, &m));
            }
            None => {
                for f in Flag::ALL.iter().filter(|f| **f != Flag::Split) {
                    for rule in f.rules() {
                        let res = m.holds_comb(&rule.lhs, &rule.rhs)?;
                        records.push(identity_record(m.name(), &rule.name, &res, &m));
                    }
                }
            }
        }
    }
    Ok(Outcome { records, raw: None, code })
}

pub fn octonion_params(text: &str) -> Result<Vec<moufang_core::Scalar>> {
    let ps: Vec<_> = text
        .split(',')
        .map(|s| parse_scalar(s).ok_or_else(|| anyhow!("bad parameter `{s}`")))
        .collect::<Result<_>>()?;
    if ps.len() != 3 {
        bail!("octonions need three parameters");
    }
    Ok(ps)
}

/// Exact identity checks on one octonion algebra.
pub fn octonion_records(params: &[moufang_core::Scalar]) -> Result<Vec<Record>> {
    let a = CayleyAlgebra::octonions(params[0].clone(), params[1].clone(), params[2].clone())?;
    let subject = format!("O({})", params.iter().map(fmt_scalar).collect::<Vec<_>>().join(","));
    let quad = |q: &[usize]| q.iter().map(|&i| a.labels()[i].clone()).collect::<Vec<_>>().join(",");
    let mut out = Vec::new();
    let mut push = |check: &str, witness: Option<String>, ok_detail: &str| {
        let mut r = Record::check(&subject, check, witness.is_none(), ok_detail);
        if let (Some(w), Record::Check { input, detail, .. }) = (witness, &mut r) {
            *input = Some(w);
            detail.clear();
        }
        out.push(r);
    };
    push("alternative", a.alternativity_witness().map(|w| quad(&w)), "");
    let nalt = (0..a.dim()).find_map(|i| a.nalt_check(&a.basis(i)).err().map(|w| format!("{}; {}", a.labels()[i], quad(&w))));
    push("nalt-is-everything", nalt, "every basis element");
    for (side, name) in [(MoufangSide::Left, "moufang-left"), (MoufangSide::Middle, "moufang-middle"), (MoufangSide::Right, "moufang-right")] {
        push(name, a.check_moufang(side).map(|w| quad(&w)), "8^4 polarized checks");
    }
    let m = traceless_malcev(&a)?;
    let mquad = |q: &[usize]| q.iter().map(|&i| m.labels()[i].clone()).collect::<Vec<_>>().join(",");
    push("malcev", m.malcev_witness().map(|w| mquad(&w)), "7^4 polarized checks");
    let n = m.dim();
    let jac = (0..n * n * n).find(|&t| {
        let (i, j, k) = (t / (n * n), t / n % n, t % n);
        !m.jacobian(&m.basis(i), &m.basis(j), &m.basis(k)).iter().all(Zero::is_zero)
    });
    let detail = jac.map(|t| format!("Jac({}) ≠ 0", mquad(&[t / (n * n), t / n % n, t % n])));
    out.push(Record::check(&subject, "not-lie", jac.is_some(), detail.unwrap_or_else(|| "Jacobi holds".into())));
    Ok(out)
}

pub fn octonion(params: &str, export: bool) -> Result<Outcome> {
    let ps = octonion_params(params)?;
    let mut records = octonion_records(&ps)?;
    let mut raw = None;
    if export {
        let a = CayleyAlgebra::octonions(ps[0].clone(), ps[1].clone(), ps[2].clone())?;
        let text = format!("{}{}", a.export(), traceless_malcev(&a)?.export());
        records.push(Record::value("octonion", "structure-constants", text.clone()));
        raw = Some(text);
    }
    let mut o = Outcome::new(records);
    o.raw = raw;
    Ok(o)
}

pub fn render_cmd(diagram: &str, format: Format) -> Result<Outcome> {
    let d = moufang_core::dsl::parse(diagram)?;
    let text = render(&d, format);
    let mut o = Outcome::new(vec![Record::value(&d.to_string(), "rendering", text.clone())]);
    o.raw = Some(if text.ends_with('\n') { text } else { text + "\n" });
    Ok(o)
}

pub fn fixture(name: &str, order: usize, degree: usize) -> Result<TruncatedDeformation> {
    Ok(match name {
        "binomial" => binomial_conjugation_fixture(degree, order),
        "o16" => function_o16_fixture(order),
        "null-o16" => null_deformation(&function_bialgebra(&o16()), order),
        "null-loop-o16" => null_deformation(&loop_bialgebra(&o16()), order),
        "formal-loop" => formal_loop_fixture(degree),
        _ => bail!("unknown fixture `{name}` (binomial, o16, null-o16, null-loop-o16, formal-loop)"),
    })
}

/// Coassociator sizes, co-Moufang congruences and the kernel map of a deformation.
pub fn deformation_records(def: &TruncatedDeformation) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let subject = def.name().to_string();
    for n in 0..=def.order() {
        let c = def.coassociator(n)?;
        let nnz: usize = (0..c.dom()).map(|i| c.column(i).nnz()).sum();
        out.push(Record::value(&subject, &format!("coassociator h^{n}"), format!("{nnz} nonzero entries")));
    }
    let mut comoufang = true;
    for (side, name) in [(MoufangSide::Left, "comoufang-left"), (MoufangSide::Right, "comoufang-right")] {
        for n in 0..=def.order() {
            let res = check_comoufang_mod(def, side, n)?;
            let mut r = identity_record(&subject, &format!("{name} mod h^{}", n + 1), &res, def.base());
            if let (Some(w), Record::Check { degree, .. }) = (res.witness(), &mut r) {
                *degree = Some(w.degree);
            }
            comoufang &= res.holds();
            out.push(r);
            if !res.holds() {
                break;
            }
        }
    }
    if comoufang {
        let k = kernel_map_rs(def)?;
        let detail = match k.first_nonzero() {
            None => format!("vanishes at orders 0..={}", def.order()),
            Some(n) => format!("nonzero at h^{n}"),
        };
        out.push(Record::check(&subject, "kernel (R+S)C", k.vanishes(), detail));
    }
    Ok(out)
}

pub struct DeformArgs {
    pub fixture: Option<String>,
    pub file: Option<std::path::PathBuf>,
    pub lie: Option<String>,
    pub order: usize,
    pub degree: usize,
    pub models: Vec<String>,
    pub export: bool,
}

pub fn deform(a: &DeformArgs) -> Result<Outcome> {
    if let Some(spec) = &a.lie {
        return lie(spec);
    }
    let def = match (&a.fixture, &a.file) {
        (Some(f), None) => fixture(f, a.order, a.degree)?,
        (None, Some(p)) => {
            let bases = resolve::models_with(&a.models)?;
            let mut bases = bases;
            bases.push(function_bialgebra(&o16()));
            bases.push(loop_bialgebra(&o16()));
            parse_deformation_file(&resolve::read(p)?, &bases).with_context(|| format!("in {}", p.display()))?
        }
        _ => bail!("give exactly one of --fixture, --file or --lie"),
    };
    let records = deformation_records(&def)?;
    let mut o = Outcome::new(records);
    if a.export {
        o.raw = Some(write_deformation_file(&def));
        o.records.push(Record::value(def.name(), "file", write_deformation_file(&def)));
    }
    Ok(o)
}

fn lie(spec: &str) -> Result<Outcome> {
    let g = resolve::lie(spec)?;
    let mut out = Vec::new();
    let k = g.killing();
    out.push(Record::value(&g.name, "killing", format!("{:?}", k)));
    let modules = [("adjoint", LieModule::adjoint(&g)), ("wedge3-adjoint", LieModule::adjoint(&g).exterior_power(3))];
    for (name, module) in modules {
        let subject = format!("{} {name}", g.name);
        match casimir(&g, &module) {
            Ok(c) => {
                let value = c.as_scalar_multiple().map(|s| fmt_scalar(&s)).unwrap_or_else(|| "not scalar".into());
                out.push(Record::value(&subject, "casimir", value));
                let commutes = (0..g.dim()).all(|i| {
                    let a = module.action(i);
                    c.mul(a).sub(&a.mul(&c)).is_zero()
                });
                out.push(Record::check(&subject, "casimir-commutes", commutes, ""));
            }
            Err(DeformError::Degenerate(m)) => out.push(Record::value(&subject, "casimir", format!("undefined: {m}"))),
            Err(e) => return Err(e.into()),
        }
        let r = h1(&g, &module);
        out.push(Record::value(
            &subject,
            "h1",
            format!("{} ({} cocycles, {} coboundaries)", r.dimension(), r.cocycles, r.coboundaries),
        ));
    }
    Ok(Outcome::new(out))
}
