//! Every provable goal of the standard suite is found and replays.

use std::time::{Duration, Instant};

use moufang_core::models::{holds_identity, standard_models};
use moufang_core::rewrite::{check_soundness, search, ProofTrace, SearchBudget};
use moufang_core::theories::{goal_suite, theory_by_name, Expectation};

#[test]
fn provable_goals_are_found() {
    let budget = SearchBudget::default();
    for g in goal_suite().provable() {
        let theory = theory_by_name(&g.theory).unwrap();
        let t0 = Instant::now();
        let out = search(&g.lhs.clone().into(), &g.rhs.clone().into(), &theory, &budget).unwrap();
        let trace = out.trace.unwrap_or_else(|| panic!("{} not found: {:?}", g.name, out.stats));
        eprintln!("{}: {} steps, {} states, {:?}", g.name, trace.len(), out.stats.states, t0.elapsed());
        trace.replay(&theory).unwrap();
        if let Expectation::Provable { steps: Some(n) } = g.expect {
            assert_eq!(trace.len(), n, "{}", g.name);
        }
    }
}

#[test]
fn search_is_symmetric_and_deterministic() {
    let budget = SearchBudget::default();
    let suite = goal_suite();
    for name in ["counit-left-law", "comoufang-1", "comoufang-5", "kernel-rl-sr"] {
        let g = suite.get(name).unwrap();
        let theory = theory_by_name(&g.theory).unwrap();
        let (l, r) = (g.lhs.clone().into(), g.rhs.clone().into());
        let a = search(&l, &r, &theory, &budget).unwrap().trace.unwrap();
        let b = search(&l, &r, &theory, &budget).unwrap().trace.unwrap();
        assert_eq!(a, b, "{name}");
        let back = search(&r, &l, &theory, &budget).unwrap().trace.unwrap();
        back.replay(&theory).unwrap();
        assert!(back.len().abs_diff(a.len()) <= 1, "{name}: {} vs {}", a.len(), back.len());
        // the text form parses back to the same trace
        assert_eq!(ProofTrace::parse(&a.to_string()).unwrap(), a);
    }
}

#[test]
fn traces_are_sound_on_standard_models() {
    let models = standard_models();
    let budget = SearchBudget::default();
    for g in goal_suite().provable() {
        let theory = theory_by_name(&g.theory).unwrap();
        let trace = search(&g.lhs.clone().into(), &g.rhs.clone().into(), &theory, &budget).unwrap().trace.unwrap();
        let report = check_soundness(&trace, &theory, &models).unwrap();
        assert!(report.is_sound(), "{}: {:?}", g.name, report.failures);
    }
}

#[test]
fn countermodeled_goals_have_witnesses() {
    let models = standard_models();
    for g in goal_suite().goals.iter() {
        let Expectation::Countermodeled { model } = &g.expect else { continue };
        let theory = theory_by_name(&g.theory).unwrap();
        let m = models.iter().find(|m| m.name() == model).unwrap();
        assert!(m.models_theory(&theory), "{model} does not model {}", g.theory);
        let check = holds_identity(&g.lhs, &g.rhs, m).unwrap();
        assert!(check.witness().is_some(), "{}", g.name);
        // and the search cannot bridge it within a small budget
        let small = SearchBudget::new(2_000, 4, Duration::from_secs(10)).unwrap();
        assert!(search(&g.lhs.clone().into(), &g.rhs.clone().into(), &theory, &small).unwrap().trace.is_none());
    }
}
