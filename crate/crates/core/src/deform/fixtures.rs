//! Fixture deformations.
//!
//! Most fixtures conjugate a base model by `φ = exp(hE)`, which yields a
//! deformation isomorphic to the base at every order. Nonzero `E` still
//! gives nonzero `Δ_1` and `p_1`. `E` must kill the unit and be killed by the
//! counit so that those stay undeformed.

use super::{DeformError, TruncatedDeformation, TruncatedSeriesMap};
use crate::linalg::{LinMap, SparseVec};
use crate::models::{function_bialgebra, truncated_binomial_bialgebra, FiniteBialgebraModel};
use crate::octonion::o16;
use crate::scalar::{int, one, zero};
use num_traits::Zero;

/// The base model with all higher components zero.
pub fn null_deformation(base: &FiniteBialgebraModel, order: usize) -> TruncatedDeformation {
    let m = base.maps();
    TruncatedDeformation::register(
        format!("null({})", base.name()),
        base.clone(),
        TruncatedSeriesMap::constant(m.comul[0].clone(), order),
        TruncatedSeriesMap::constant(m.mul[0].clone(), order),
    )
    .expect("the base model satisfies its own laws")
}

/// `Δ_h = (φ⊗φ)Δφ⁻¹`, `p_h = φp(φ⁻¹⊗φ⁻¹)` with `φ = exp(hE)`.
pub fn conjugated(
    name: impl Into<String>,
    base: &FiniteBialgebraModel,
    e: &LinMap,
    order: usize,
) -> Result<TruncatedDeformation, DeformError> {
    let m = base.maps();
    let d = m.dim;
    if e.dom() != d || e.cod() != d {
        return Err(DeformError::Shape(format!("generator must be a {d}×{d} map")));
    }
    if !e.apply(&m.unit).is_zero() {
        return Err(DeformError::Precondition("generator does not kill the unit".into()));
    }
    let counit_of = |v: &SparseVec| v.iter().fold(zero(), |acc, (i, x)| acc + m.counit.get(i) * x);
    if (0..d).any(|j| !counit_of(e.column(j)).is_zero()) {
        return Err(DeformError::Precondition("counit does not kill the generator".into()));
    }
    let phi = TruncatedSeriesMap::exp(e, order);
    let inv = TruncatedSeriesMap::exp(&e.scale(&int(-1)), order);
    let comul = phi.kron(&phi).compose(&TruncatedSeriesMap::constant(m.comul[0].clone(), order)).compose(&inv);
    let mul = phi.compose(&TruncatedSeriesMap::constant(m.mul[0].clone(), order)).compose(&inv.kron(&inv));
    TruncatedDeformation::register(name, base.clone(), comul, mul)
}

/// Binomial base conjugated by `E(a^n) = n² a^n`.
pub fn binomial_conjugation_fixture(max_degree: usize, order: usize) -> TruncatedDeformation {
    let base = truncated_binomial_bialgebra(max_degree);
    let n = base.dim();
    let e = LinMap::from_columns(n, (0..n).map(|k| SparseVec::from_iter([(k, int((k * k) as i64))])).collect());
    conjugated(format!("binomial_conjugation({max_degree})"), &base, &e, order).expect("E kills unit and counit")
}

/// Functions on O16 conjugated by `E = P − id`, `P` swapping `δu` and `δv`.
pub fn function_o16_fixture(order: usize) -> TruncatedDeformation {
    let base = function_bialgebra(&o16());
    let n = base.dim();
    let mut cols: Vec<SparseVec> = vec![SparseVec::new(); n];
    for (x, y) in [(1, 2), (2, 1)] {
        cols[x] = SparseVec::from_iter([(y, one()), (x, int(-1))]);
    }
    let e = LinMap::from_columns(n, cols);
    conjugated("function_o16_conjugation", &base, &e, order).expect("E kills unit and counit")
}

/// Binomial base with `Δ_h(a) = a⊗1 + 1⊗a + h a⊗a²`, extended to powers
/// of `a` multiplicatively. Dual to the one-dimensional formal loop
/// `x + y + h x y²`, which is neither associative nor Moufang at order one.
pub fn formal_loop_fixture(max_degree: usize) -> TruncatedDeformation {
    assert!(max_degree >= 2, "the perturbation a⊗a² needs degree two");
    let base = truncated_binomial_bialgebra(max_degree);
    let m = base.maps();
    let n = base.dim();
    let p = &m.mul[0];
    // product in A⊗A
    let times = |u: &SparseVec, v: &SparseVec| {
        let mut out = SparseVec::new();
        for (i, x) in u.iter() {
            for (j, y) in v.iter() {
                let l = p.column((i / n) * n + j / n);
                let r = p.column((i % n) * n + j % n);
                out.add_scaled(&l.tensor(r, n), &(x * y));
            }
        }
        out
    };
    let t = SparseVec::basis(n + 2);
    let da = m.comul[0].column(1).clone();
    let mut cols = vec![SparseVec::new(); n];
    let mut power = SparseVec::basis(0); // Δ(a)^{k-1}
    for (k, col) in cols.iter_mut().enumerate().skip(1) {
        *col = times(&t, &power).scaled(&int(k as i64));
        power = times(&power, &da);
    }
    let d1 = LinMap::from_columns(n * n, cols);
    TruncatedDeformation::register(
        format!("formal_loop({max_degree})"),
        base.clone(),
        TruncatedSeriesMap::new(vec![m.comul[0].clone(), d1]),
        TruncatedSeriesMap::constant(p.clone(), 1),
    )
    .expect("the formal loop coproduct is counital and multiplicative")
}

/// Binomial coproduct plus `h a⊗a` on `a` only; not a bialgebra deformation,
/// used to exercise the coassociator directly.
pub fn sparse_comul_fixture(max_degree: usize) -> TruncatedSeriesMap {
    let base = truncated_binomial_bialgebra(max_degree);
    let n = base.dim();
    let mut d1 = LinMap::zero(n, n * n);
    d1.set_column(1, SparseVec::basis(n + 1));
    TruncatedSeriesMap::new(vec![base.maps().comul[0].clone(), d1])
}
