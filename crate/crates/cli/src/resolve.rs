//! Turning command-line arguments into theories, models, goals and budgets.

use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use moufang_core::deform::lie::LieAlgebraModel;
use moufang_core::dsl::{parse, sweedler};
use moufang_core::models::{
    function_bialgebra, loop_bialgebra, parse_model_file, standard_models, truncated_binomial_bialgebra,
    FiniteBialgebraModel, MoufangLoop,
};
use moufang_core::octonion::o16;
use moufang_core::rewrite::{LinComb, SearchBudget};
use moufang_core::theories::{goal_suite, parse_theory_file, theory_by_name, Goal, Theory};

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A theory with the goals its file declares (none for catalog names).
pub struct LoadedTheory {
    pub theory: Theory,
    pub goals: Vec<Goal>,
}

/// `NAME` from the catalog, or a theory file when the path exists.
pub fn theory(spec: &str) -> Result<LoadedTheory> {
    let path = Path::new(spec);
    if path.is_file() {
        let f = parse_theory_file(&read(path)?).with_context(|| format!("in theory file {spec}"))?;
        return Ok(LoadedTheory { theory: f.theory, goals: f.goals });
    }
    Ok(LoadedTheory { theory: theory_by_name(spec)?, goals: Vec::new() })
}

/// A catalog goal, or one declared in the theory file.
pub fn goal(name: &str, loaded: Option<&LoadedTheory>) -> Option<Goal> {
    if let Some(g) = loaded.and_then(|t| t.goals.iter().find(|g| g.name == name)) {
        return Some(g.clone());
    }
    goal_suite().get(name).cloned()
}

/// An equation side: DSL, a bracketed combination, or a Sweedler formula in `x`.
pub fn side(text: &str) -> Result<LinComb> {
    if text.contains('[') {
        return Ok(LinComb::parse(text, None)?);
    }
    match parse(text) {
        Ok(d) => Ok(d.into()),
        Err(e) => match sweedler(&['x'], text) {
            Ok(d) => Ok(d.into()),
            Err(_) => Err(e.into()),
        },
    }
}

fn named_loop(name: &str) -> Option<MoufangLoop> {
    if name == "O16" {
        return Some(o16());
    }
    let n: usize = name.strip_prefix('C')?.parse().ok()?;
    (n >= 1).then(|| MoufangLoop::cyclic(n))
}

fn call<'a>(text: &'a str, func: &str) -> Option<&'a str> {
    text.strip_prefix(func)?.strip_prefix('(')?.strip_suffix(')')
}

/// A model by name (`loop_bialgebra(O16)`, `function_bialgebra(C3)`,
/// `truncated_binomial_bialgebra(6)`, …) or from a model file.
pub fn model(spec: &str) -> Result<FiniteBialgebraModel> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse_model_file(&read(path)?).with_context(|| format!("in model file {spec}"));
    }
    if let Some(m) = standard_models().into_iter().find(|m| m.name() == spec) {
        return Ok(m);
    }
    if let Some(l) = call(spec, "loop_bialgebra").and_then(named_loop) {
        return Ok(loop_bialgebra(&l));
    }
    if let Some(l) = call(spec, "function_bialgebra").and_then(named_loop) {
        return Ok(function_bialgebra(&l));
    }
    if let Some(d) = call(spec, "truncated_binomial_bialgebra").and_then(|s| s.parse::<usize>().ok()) {
        if d == 0 {
            bail!("truncated binomial model needs D ≥ 1");
        }
        return Ok(truncated_binomial_bialgebra(d));
    }
    bail!("no model file or known model named `{spec}`")
}

/// The standard models followed by `extra`, dropping later duplicates by name.
pub fn models_with(extra: &[String]) -> Result<Vec<FiniteBialgebraModel>> {
    let mut out = standard_models();
    for spec in extra {
        let m = model(spec)?;
        if !out.iter().any(|o| o.name() == m.name()) {
            out.push(m);
        }
    }
    Ok(out)
}

pub fn lie(spec: &str) -> Result<LieAlgebraModel> {
    let path = Path::new(spec);
    if path.is_file() {
        return LieAlgebraModel::parse(&read(path)?).with_context(|| format!("in Lie algebra file {spec}"));
    }
    if spec == "sl2" {
        return Ok(LieAlgebraModel::sl2());
    }
    if let Some(n) = call(spec, "abelian").and_then(|s| s.parse::<usize>().ok()) {
        return Ok(LieAlgebraModel::abelian(n));
    }
    bail!("no Lie algebra file or known algebra named `{spec}`")
}

/// `S,D,T`: states, depth, seconds (fractional allowed).
pub fn budget(text: &str) -> Result<SearchBudget> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [s, d, t] = parts[..] else { bail!("budget must be S,D,T") };
    let secs: f64 = t.parse().with_context(|| format!("bad time limit `{t}`"))?;
    if !secs.is_finite() || secs <= 0.0 {
        bail!("time limit must be positive");
    }
    Ok(SearchBudget::new(
        s.parse().with_context(|| format!("bad state limit `{s}`"))?,
        d.parse().with_context(|| format!("bad depth limit `{d}`"))?,
        Duration::from_secs_f64(secs),
    )?)
}

/// Comma-separated basis indices.
pub fn indices(text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| s.trim().parse().with_context(|| format!("bad index `{s}`"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        let b = budget("100,4,0.5").unwrap();
        assert_eq!((b.max_states, b.max_depth), (100, 4));
        assert!(budget("0,4,1").is_err());
        assert!(budget("1,2").is_err());
        assert!(budget("1,2,-1").is_err());
    }

    #[test]
    fn model_names() {
        assert_eq!(model("loop_bialgebra(C5)").unwrap().dim(), 5);
        assert_eq!(model("truncated_binomial_bialgebra(3)").unwrap().dim(), 4);
        assert_eq!(model("function_bialgebra(O16)").unwrap().dim(), 16);
        assert!(model("nothing").is_err());
    }

    #[test]
    fn sides() {
        assert_eq!(side("comul ; swap").unwrap(), side("[comul ; swap]").unwrap());
        assert_eq!(side("x2 | x1").unwrap(), side("comul ; swap").unwrap());
        assert!(side("comul ;").is_err());
    }
}
