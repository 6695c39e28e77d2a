//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use moufang_core::deform::lie::{casimir, h1, LieAlgebraModel, LieModule};
use moufang_core::deform::{
    binomial_conjugation_fixture, check_comoufang_mod, eigenspace, function_o16_fixture, kernel_map_rs,
    primitive_elements, q_operator, t_operator, TruncatedDeformation, TruncatedSeriesMap,
};
use moufang_core::linalg::{flatten, span_rank, LinMap, Matrix};
use moufang_core::models::{
    function_bialgebra, holds_identity, loop_bialgebra, standard_models, truncated_binomial_bialgebra, MoufangSide,
};
use moufang_core::octonion::{o16, traceless_malcev, CayleyAlgebra};
use moufang_core::rewrite::{check_soundness, search, ProofTrace, SearchBudget};
use moufang_core::scalar::{int, pow2, ratio, Scalar};
use moufang_core::theories::{goal_suite, theory_by_name, Flag, Theory};
use num_traits::{One, Zero};

/// Per-goal search limit.
const GOAL_LIMIT: Duration = Duration::from_secs(60);
const MODEL_LIMIT: Duration = Duration::from_secs(5);
const OCTONION_LIMIT: Duration = Duration::from_secs(30);
/// Casimir of sl2 on its adjoint module, fixed from the dual-basis expansion below.
const SL2_ADJOINT_CASIMIR: i64 = 1;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn comoufang_theory() -> Theory {
    theory_by_name("comoufang").expect("catalog theory")
}

/// Finds, times and replays each goal under the co-Moufang theory.
fn derive(names: &[&str], traces: &mut Vec<ProofTrace>) -> Verdict {
    let theory = comoufang_theory();
    let suite = goal_suite();
    let budget = SearchBudget::default();
    let mut lengths = Vec::new();
    for name in names {
        let g = suite.get(name).ok_or(format!("goal {name} missing"))?;
        let start = Instant::now();
        let out = search(&g.lhs.clone().into(), &g.rhs.clone().into(), &theory, &budget).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let trace = out.trace.ok_or(format!("{name}: not found ({} states)", out.stats.states))?;
        ensure(elapsed <= GOAL_LIMIT, format!("{name}: {elapsed:?}"))?;
        trace.replay(&theory).map_err(|e| format!("{name}: {e}"))?;
        lengths.push(format!("{name}={}", trace.len()));
        traces.push(trace);
    }
    Ok(format!("steps {}", lengths.join(" ")))
}

fn criterion_1(traces: &mut Vec<ProofTrace>) -> Verdict {
    let mut names = vec!["counit-left-law", "counit-right-law"];
    let parts: Vec<String> = (1..=6).map(|k| format!("comoufang-{k}")).collect();
    names.extend(parts.iter().map(String::as_str));
    derive(&names, traces)
}

fn criterion_2(traces: &mut Vec<ProofTrace>) -> Verdict {
    derive(&["kernel-rl-sr", "kernel-sl-rr"], traces)
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let m = function_bialgebra(&o16());
    for f in [Flag::ComoufangL, Flag::ComoufangR] {
        for r in f.rules() {
            ensure(m.holds_comb(&r.lhs, &r.rhs).map_err(|e| e.to_string())?.holds(), format!("{} fails", r.name))?;
        }
    }
    let coassoc = &Flag::Coassoc.rules()[0];
    let check = m.holds_comb(&coassoc.lhs, &coassoc.rhs).map_err(|e| e.to_string())?;
    let w = check.witness().ok_or("coassociativity holds")?;
    let elapsed = start.elapsed();
    ensure(elapsed < MODEL_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("coassociativity fails on {} ({} nonzero terms)", m.input_label(&w.input), w.diff.nnz()))
}

fn criterion_4() -> Verdict {
    let m = loop_bialgebra(&o16());
    for f in [Flag::MoufangL, Flag::MoufangM, Flag::MoufangR] {
        for r in f.rules() {
            ensure(m.holds_comb(&r.lhs, &r.rhs).map_err(|e| e.to_string())?.holds(), format!("{} fails", r.name))?;
        }
    }
    let assoc = &Flag::Assoc.rules()[0];
    let check = holds_identity(assoc.lhs.as_diagram().unwrap(), assoc.rhs.as_diagram().unwrap(), &m)
        .map_err(|e| e.to_string())?;
    let w = check.witness().ok_or("associativity holds")?;
    Ok(format!("associativity fails on {}", m.input_label(&w.input)))
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    for p in [[-1, -1, -1], [-1, -4, -1], [2, 3, 5]] {
        let a = CayleyAlgebra::octonions(int(p[0]), int(p[1]), int(p[2])).map_err(|e| e.to_string())?;
        ensure(a.alternativity_witness().is_none(), format!("{p:?} not alternative"))?;
        for i in 0..8 {
            a.nalt_check(&a.basis(i)).map_err(|w| format!("{p:?} Nalt fails at e{i}, {w:?}"))?;
        }
        for side in [MoufangSide::Left, MoufangSide::Middle, MoufangSide::Right] {
            ensure(a.check_moufang(side).is_none(), format!("{p:?} {side:?} Moufang fails"))?;
        }
        let m = traceless_malcev(&a).map_err(|e| e.to_string())?;
        ensure(m.malcev_witness().is_none(), format!("{p:?} Malcev fails"))?;
        let non_lie = (0..7 * 7 * 7).any(|t| {
            let j = m.jacobian(&m.basis(t / 49), &m.basis(t / 7 % 7), &m.basis(t % 7));
            j.iter().any(|x| !x.is_zero())
        });
        ensure(non_lie, format!("{p:?} traceless part satisfies Jacobi"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < OCTONION_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("three parameter sets in {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_6() -> Verdict {
    let m = truncated_binomial_bialgebra(10);
    let q = q_operator(&m);
    ensure(q.is_diagonal(), "Q is not diagonal")?;
    for n in 0..=10 {
        ensure(q[(n, n)] == pow2(n), format!("Q(a^{n}) has eigenvalue {}", q[(n, n)]))?;
    }
    let e2 = eigenspace(&q, &int(2));
    let a: Vec<Scalar> = (0..11).map(|i| if i == 1 { Scalar::one() } else { Scalar::zero() }).collect();
    ensure(e2.len() == 1 && span_rank(11, &[e2.clone(), vec![a]].concat()) == 1, "eigenspace(2) is not span{a}")?;
    ensure(primitive_elements(&m).len() == 1, "primitives are not a line")?;
    Ok("Q = diag(2^0..2^10), eigenspace(2) = span{a}".into())
}

fn criterion_7() -> Verdict {
    let m = truncated_binomial_bialgebra(4);
    let kernel = t_operator(&q_operator(&m)).nullspace();
    let expected: Vec<Vec<Scalar>> = (0..5)
        .map(|k| {
            let mut v = vec![Scalar::zero(); 125];
            v[flatten(&[1, 1, k], 5)] = Scalar::one();
            v
        })
        .collect();
    ensure(kernel.len() == 5, format!("kernel has dimension {}", kernel.len()))?;
    ensure(span_rank(125, &[kernel, expected].concat()) == 5, "kernel differs from span{a⊗a⊗a^k}")?;
    Ok("dimension 5, spanned by a⊗a⊗a^k".into())
}

fn criterion_8(traces: &[ProofTrace]) -> Verdict {
    ensure(!traces.is_empty(), "no traces from the derivation criteria")?;
    let theory = comoufang_theory();
    let models = standard_models();
    let mut comparisons = 0;
    for t in traces {
        let r = check_soundness(t, &theory, &models).map_err(|e| e.to_string())?;
        ensure(r.is_sound(), format!("{} -> {}: {:?}", t.lhs, t.rhs, r.failures))?;
        comparisons += r.comparisons;
    }
    Ok(format!("{} traces, {comparisons} model comparisons", traces.len()))
}

fn criterion_9() -> Verdict {
    let g = LieAlgebraModel::sl2();
    let ad = LieModule::adjoint(&g);
    let c = casimir(&g, &ad).map_err(|e| e.to_string())?;
    // basis e, f, h: the Killing-dual basis is f/4, e/4, h/8
    let (e, f, h) = (ad.action(0), ad.action(1), ad.action(2));
    let oracle = e.mul(f).add(&f.mul(e)).scale(&ratio(1, 4)).add(&h.mul(h).scale(&ratio(1, 8)));
    ensure(c == oracle, "Casimir differs from the dual-basis expansion")?;
    ensure(c == Matrix::scalar(3, &int(SL2_ADJOINT_CASIMIR)), "Casimir is not the golden scalar")?;
    ensure(h1(&g, &ad).dimension() == 0, "H^1 is nonzero")?;
    for i in 0..3 {
        ensure(c.mul(ad.action(i)).sub(&ad.action(i).mul(&c)).is_zero(), format!("[C, ad x{i}] ≠ 0"))?;
    }
    Ok(format!("Casimir = {SL2_ADJOINT_CASIMIR}·I, H^1 = 0, commutes with the action"))
}

/// Coefficient of h^n of the coassociator, by evaluating at h = 0..2N and
/// inverting the Vandermonde system.
fn interpolated(comul: &TruncatedSeriesMap, n: usize) -> LinMap {
    let top = 2 * comul.order();
    let d = comul.dom();
    let id = LinMap::identity(d);
    let hs: Vec<Scalar> = (0..=top).map(|k| int(k as i64)).collect();
    let rows = hs.iter().map(|h| (0..=top).map(|c| (0..c).fold(Scalar::one(), |acc, _| acc * h)).collect()).collect();
    let inv = Matrix::from_rows(rows).inverse().expect("distinct nodes");
    let mut acc = LinMap::zero(d, d * d * d);
    for (r, h) in hs.iter().enumerate() {
        let delta = comul.at(h);
        let value = delta.kron(&id).compose(&delta).sub(&id.kron(&delta).compose(&delta));
        acc = acc.add_scaled(&value, &inv[(n, r)]);
    }
    acc
}

fn criterion_10() -> Verdict {
    let o16_order3 = function_o16_fixture(3);
    let binomial = binomial_conjugation_fixture(6, 3);
    for def in [&o16_order3, &binomial] {
        let series = def.comul_series();
        for n in 0..=3 {
            let c = def.coassociator(n).map_err(|e| e.to_string())?;
            ensure(c == interpolated(&series, n), format!("{} coassociator differs at h^{n}", def.name()))?;
        }
    }
    let co_moufang: [&TruncatedDeformation; 2] = [&function_o16_fixture(2), &binomial];
    for def in co_moufang {
        for side in [MoufangSide::Left, MoufangSide::Right] {
            for n in 0..=def.order() {
                let ok = check_comoufang_mod(def, side, n).map_err(|e| e.to_string())?.holds();
                ensure(ok, format!("{} {side:?} co-Moufang fails mod h^{}", def.name(), n + 1))?;
            }
        }
        let k = kernel_map_rs(def).map_err(|e| e.to_string())?;
        ensure(k.vanishes(), format!("{}: (R+S)C nonzero at h^{:?}", def.name(), k.first_nonzero()))?;
    }
    Ok("coassociator matches interpolation to h^3; (R+S)C = 0 at every order".into())
}

fn run(label: &str, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let secs = start.elapsed().as_secs_f64();
    match verdict {
        Ok(detail) => {
            println!("PASS {label} ({secs:.1}s): {detail}");
            true
        }
        Err(reason) => {
            println!("FAIL {label} ({secs:.1}s): {reason}");
            false
        }
    }
}

fn main() {
    let mut traces = Vec::new();
    let results = [
        run("1 goal-suite derivations", || criterion_1(&mut traces)),
        run("2 kernel identities", || criterion_2(&mut traces)),
        run("3 co-Moufang model oracle", criterion_3),
        run("4 Moufang model oracle", criterion_4),
        run("5 octonion identities", criterion_5),
        run("6 Q spectrum", criterion_6),
        run("7 kernel of T", criterion_7),
        run("8 soundness sweep", || criterion_8(&traces)),
        run("9 Lie case", criterion_9),
        run("10 deformation bookkeeping", criterion_10),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
