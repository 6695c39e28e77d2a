//! Formal deformations of finite bialgebra models, truncated at `h^{N+1}`.
//!
//! A [`TruncatedDeformation`] keeps the base model as its `h^0` layer and
//! carries series for the product and coproduct; unit and counit stay
//! undeformed. All checks are exact and respect the base model's waiver.

mod file;
mod fixtures;
pub mod lie;
mod series;
mod spectral;

use rayon::prelude::*;
use thiserror::Error;

use crate::dsl::parse;
use crate::linalg::{unflatten, LinMap, SparseVec};
use crate::models::{
    compare_at, evaluate_comb_series, first_failure, FiniteBialgebraModel, IdentityCheck, ModelError, MoufangSide,
    StructureMaps, Tensor,
};
use crate::rewrite::LinComb;
use crate::theories::{base_rules, comoufang_left, comoufang_right, moufang_middle, Flag};

pub use file::{parse_deformation_file, write_deformation_file};
pub use fixtures::{
    binomial_conjugation_fixture, conjugated, formal_loop_fixture, function_o16_fixture, null_deformation,
    sparse_comul_fixture,
};
pub use series::TruncatedSeriesMap;
pub use spectral::{
    antisymmetrizer, eigen_kernel_t, eigenspace, primitive_elements, q_operator, subspace_projector, t_operator,
    wedge_membership, GradedSpace, WedgeSlots,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("requested order {requested} exceeds the deformation order {order}")]
    Order { requested: usize, order: usize },
    #[error("bad series: {0}")]
    Shape(String),
    #[error("h^0 layer of `{0}` differs from the base model")]
    Base(String),
    #[error("deformation `{name}` fails `{rule}` at h^{degree} on input {input}")]
    Registration { name: String, rule: String, degree: usize, input: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("components {index} of the two maps differ")]
    MismatchBelow { index: usize },
    #[error("{which} is not multiplicative at h^{degree} on input {input}")]
    NotMultiplicative { which: String, degree: usize, input: String },
    #[error("Q is not diagonalizable here: {0}")]
    NotDiagonalizable(String),
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("unknown base model `{0}`")]
    UnknownBase(String),
    #[error("deformation file line {line}: {message}")]
    File { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    name: String,
    base: FiniteBialgebraModel,
    order: usize,
    maps: StructureMaps,
}

impl TruncatedDeformation {
    /// Checks that the `h^0` layers agree with `base` and that the base rules
    /// (unit, counit and compatibility laws) hold modulo `h^{N+1}` on all
    /// admissible basis inputs. The order is the larger of the two series
    /// orders; the shorter one is padded with zeros.
    pub fn register(
        name: impl Into<String>,
        base: FiniteBialgebraModel,
        comul: TruncatedSeriesMap,
        mul: TruncatedSeriesMap,
    ) -> Result<Self, DeformError> {
        let name = name.into();
        let order = comul.order().max(mul.order());
        let (comul, mul) = (comul.truncated(order), mul.truncated(order));
        let bm = base.maps();
        let d = bm.dim;
        if comul.dom() != d || comul.cod() != d * d || mul.dom() != d * d || mul.cod() != d {
            return Err(DeformError::Shape(format!("series do not fit a {d}-dimensional base")));
        }
        if comul.components()[0] != bm.comul[0] || mul.components()[0] != bm.mul[0] {
            return Err(DeformError::Base(name));
        }
        let maps = StructureMaps {
            dim: d,
            mul: mul.components().to_vec(),
            comul: comul.components().to_vec(),
            unit: bm.unit.clone(),
            counit: bm.counit.clone(),
        };
        let def = TruncatedDeformation { name, base, order, maps };
        for r in base_rules() {
            if let IdentityCheck::Fails(w) = def.check(&r.lhs, &r.rhs, order)? {
                return Err(DeformError::Registration {
                    name: def.name.clone(),
                    rule: r.name.clone(),
                    degree: w.degree,
                    input: def.base.input_label(&w.input),
                });
            }
        }
        Ok(def)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &FiniteBialgebraModel {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.maps.dim
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn comul_series(&self) -> TruncatedSeriesMap {
        TruncatedSeriesMap::new(self.maps.comul.clone())
    }

    pub fn mul_series(&self) -> TruncatedSeriesMap {
        TruncatedSeriesMap::new(self.maps.mul.clone())
    }

    fn ensure_order(&self, n: usize) -> Result<(), DeformError> {
        if n > self.order {
            return Err(DeformError::Order { requested: n, order: self.order });
        }
        Ok(())
    }

    /// `lhs = rhs` modulo `h^{n+1}` on every admissible basis input.
    pub fn check(&self, lhs: &LinComb, rhs: &LinComb, n: usize) -> Result<IdentityCheck, DeformError> {
        self.ensure_order(n)?;
        let allowed = |i: &[usize]| self.base.admissible(i);
        Ok(first_failure(lhs, rhs, &self.maps, n, &allowed)?)
    }

    /// Components `h^0 … h^n` of a combination applied to `input`.
    pub fn evaluate(&self, comb: &LinComb, input: &Tensor, n: usize) -> Result<Vec<Tensor>, DeformError> {
        self.ensure_order(n)?;
        Ok(evaluate_comb_series(comb, &self.maps, n, input)?)
    }

    /// `C_n`, the h^n component of this deformation's coassociator.
    pub fn coassociator(&self, n: usize) -> Result<LinMap, DeformError> {
        self.ensure_order(n)?;
        coassociator(&self.comul_series(), n)
    }
}

/// `C_n = Σ_{i+j=n} (Δ_i ⊗ id)Δ_j − (id ⊗ Δ_i)Δ_j`.
pub fn coassociator(comul: &TruncatedSeriesMap, n: usize) -> Result<LinMap, DeformError> {
    if n > comul.order() {
        return Err(DeformError::Order { requested: n, order: comul.order() });
    }
    let d = comul.dom();
    if comul.cod() != d * d {
        return Err(DeformError::Shape("coproduct must map V → V⊗V".into()));
    }
    let id = LinMap::identity(d);
    let mut acc = LinMap::zero(d, d * d * d);
    for i in 0..=n {
        let (di, dj) = (comul.component(i), comul.component(n - i));
        if di.is_zero() || dj.is_zero() {
            continue;
        }
        acc = acc.add(&di.kron(&id).compose(&dj)).sub(&id.kron(&di).compose(&dj));
    }
    Ok(acc)
}

/// The co-Moufang identity of one side, as a pair of diagrams.
pub fn comoufang_identity(side: MoufangSide) -> (LinComb, LinComb) {
    let (l, r) = match side {
        MoufangSide::Left => comoufang_left(),
        MoufangSide::Right => comoufang_right(),
        MoufangSide::Middle => {
            let (l, r) = moufang_middle();
            (l.flip(), r.flip())
        }
    };
    (l.into(), r.into())
}

/// Exhaustive check of one co-Moufang identity modulo `h^{n+1}`.
pub fn check_comoufang_mod(def: &TruncatedDeformation, side: MoufangSide, n: usize) -> Result<IdentityCheck, DeformError> {
    let (l, r) = comoufang_identity(side);
    def.check(&l, &r, n)
}

/// `(R+S)∘C_h`, component by component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub components: Vec<LinMap>,
}

impl KernelReport {
    pub fn vanishes(&self) -> bool {
        self.components.iter().all(LinMap::is_zero)
    }

    /// Lowest degree with a nonzero component.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.components.iter().position(|c| !c.is_zero())
    }
}

fn rs_series(def: &TruncatedDeformation) -> TruncatedSeriesMap {
    let d = def.dim();
    let n = def.order;
    let id2 = TruncatedSeriesMap::identity(d * d, n);
    let mid_swap = TruncatedSeriesMap::constant(LinMap::slot_permutation(d, &[0, 2, 1, 3]), n);
    let comul = def.comul_series();
    let mul = def.mul_series();
    // R: x⊗y⊗z ↦ x₁y ⊗ x₂ ⊗ z;  S: x⊗y⊗z ↦ xz₁ ⊗ y ⊗ z₂
    let mul_top = mul.kron(&id2);
    let r = mul_top.compose(&mid_swap).compose(&comul.kron(&id2));
    let s = mul_top.compose(&mid_swap).compose(&id2.kron(&comul));
    TruncatedSeriesMap::new(r.components().iter().zip(s.components()).map(|(a, b)| a.add(b)).collect())
}

/// Builds `R+S` and the coassociator as series and composes them. Refuses
/// deformations that are not co-Moufang (left and right) modulo `h^{N+1}`.
pub fn kernel_map_rs(def: &TruncatedDeformation) -> Result<KernelReport, DeformError> {
    for side in [MoufangSide::Left, MoufangSide::Right] {
        if let IdentityCheck::Fails(w) = check_comoufang_mod(def, side, def.order)? {
            return Err(DeformError::Precondition(format!(
                "{side:?} co-Moufang fails at h^{} on {}",
                w.degree,
                def.base.input_label(&w.input)
            )));
        }
    }
    let rs = rs_series(def);
    let c = TruncatedSeriesMap::new((0..=def.order).map(|n| def.coassociator(n)).collect::<Result<_, _>>()?);
    Ok(KernelReport { components: rs.compose(&c).components().to_vec() })
}

fn associator() -> LinComb {
    let l = LinComb::from(parse("mul * id(1) ; mul").expect("static diagram"));
    let r = LinComb::from(parse("id(1) * mul ; mul").expect("static diagram"));
    l.sub(&r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaltCheck {
    Holds,
    /// `(a,y,z) ≡ −(y,a,z) ≡ (y,z,a)` breaks at this degree.
    Fails { y: usize, z: usize, degree: usize },
}

impl NaltCheck {
    pub fn holds(&self) -> bool {
        matches!(self, NaltCheck::Holds)
    }
}

/// Whether `a` is primitive for the undeformed coproduct.
pub fn is_primitive(base: &FiniteBialgebraModel, a: &SparseVec) -> bool {
    let m = base.maps();
    let d = m.dim;
    let mut expect = a.tensor(&m.unit, d);
    expect.add_scaled(&m.unit.tensor(a, d), &crate::scalar::one());
    m.comul[0].apply(a) == expect
}

/// Verifies that the associator of the deformed product is alternating in
/// a primitive `a` modulo `h^{n+1}`, over all admissible basis `y, z`.
/// Requires the left and right Moufang identities to hold modulo `h^{n+1}`.
pub fn nalt_mod_h(def: &TruncatedDeformation, a: &SparseVec, n: usize) -> Result<NaltCheck, DeformError> {
    def.ensure_order(n)?;
    for flag in [Flag::MoufangL, Flag::MoufangR] {
        for r in flag.rules() {
            if let IdentityCheck::Fails(w) = def.check(&r.lhs, &r.rhs, n)? {
                return Err(DeformError::Precondition(format!(
                    "`{}` fails at h^{} on {}",
                    r.name,
                    w.degree,
                    def.base.input_label(&w.input)
                )));
            }
        }
    }
    if !is_primitive(&def.base, a) {
        return Err(DeformError::Precondition("element is not primitive in the base layer".into()));
    }
    let d = def.dim();
    let grading = def.base.grading();
    let a_deg = grading.map_or(0, |g| a.iter().map(|(i, _)| g[i]).max().unwrap_or(0));
    let assoc = associator();
    let place = |slots: [usize; 3], y: usize, z: usize| {
        // slots[k] names what goes in position k: 0 = a, 1 = y, 2 = z
        let mut t = Tensor::zero(d, 3);
        for (i, c) in a.iter() {
            let idx = slots.map(|s| match s {
                0 => i,
                1 => y,
                _ => z,
            });
            t.add_at(idx.to_vec(), c);
        }
        t
    };
    let found = (0..d * d).into_par_iter().find_map_first(|yz| {
        let (y, z) = (yz / d, yz % d);
        let within = match (def.base.waiver(), grading) {
            (Some(w), Some(g)) => a_deg + g[y] + g[z] <= w.max_input_degree,
            _ => true,
        };
        if !within {
            return None;
        }
        let eval = |t: Tensor| evaluate_comb_series(&assoc, &def.maps, n, &t);
        let res = (|| -> Result<Option<usize>, ModelError> {
            let ayz = eval(place([0, 1, 2], y, z))?;
            let yaz = eval(place([1, 0, 2], y, z))?;
            let yza = eval(place([1, 2, 0], y, z))?;
            Ok((0..=n).find(|&k| {
                let mut s = ayz[k].clone();
                s.add_scaled(&yaz[k], &crate::scalar::one());
                !s.is_zero() || ayz[k] != yza[k]
            }))
        })();
        match res {
            Ok(None) => None,
            Ok(Some(degree)) => Some(Ok(NaltCheck::Fails { y, z, degree })),
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        None => Ok(NaltCheck::Holds),
        Some(r) => Ok(r?),
    }
}

/// Result of comparing the first differing components of two algebra maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    /// `φ_n − ψ_n`.
    pub delta: LinMap,
    /// Basis pairs on which the twisted Leibniz rule fails.
    pub failures: Vec<(usize, usize)>,
}

impl DefectReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_multiplicative(def: &TruncatedDeformation, which: &str, f: &TruncatedSeriesMap, n: usize) -> Result<(), DeformError> {
    let mul = def.mul_series().truncated(n);
    let f = f.truncated(n);
    let lhs = f.compose(&mul);
    let rhs = mul.compose(&f.kron(&f));
    let d = def.dim();
    for k in 0..=n {
        let (a, b) = (&lhs.components()[k], &rhs.components()[k]);
        let bad = (0..d * d).find(|&c| a.column(c) != b.column(c) && def.base.admissible(&unflatten(c, d, 2)));
        if let Some(c) = bad {
            return Err(DeformError::NotMultiplicative {
                which: which.to_string(),
                degree: k,
                input: def.base.input_label(&unflatten(c, d, 2)),
            });
        }
    }
    Ok(())
}

/// For algebra maps `φ, ψ` of the deformed product (modulo `h^{n+1}`) that
/// agree below degree `n`, checks that `δ = φ_n − ψ_n` satisfies
/// `δ(xy) = δ(x)φ₀(y) + ψ₀(x)δ(y)` for the undeformed product.
pub fn derivation_defect(
    def: &TruncatedDeformation,
    phi: &TruncatedSeriesMap,
    psi: &TruncatedSeriesMap,
    n: usize,
) -> Result<DefectReport, DeformError> {
    def.ensure_order(n)?;
    let d = def.dim();
    for f in [phi, psi] {
        if f.dom() != d || f.cod() != d {
            return Err(DeformError::Shape(format!("maps must be endomorphisms of a {d}-dimensional space")));
        }
        if f.order() < n {
            return Err(DeformError::Order { requested: n, order: f.order() });
        }
    }
    if n == 0 {
        return Err(DeformError::Precondition("defect degree must be positive".into()));
    }
    if let Some(index) = (0..n).find(|&i| phi.component(i) != psi.component(i)) {
        return Err(DeformError::MismatchBelow { index });
    }
    check_multiplicative(def, "φ", phi, n)?;
    check_multiplicative(def, "ψ", psi, n)?;
    let delta = phi.component(n).sub(&psi.component(n));
    let p0 = &def.maps.mul[0];
    let (phi0, psi0) = (phi.component(0), psi.component(0));
    let failures = (0..d * d)
        .filter(|&c| def.base.admissible(&unflatten(c, d, 2)))
        .filter(|&c| {
            let (x, y) = (SparseVec::basis(c / d), SparseVec::basis(c % d));
            let lhs = delta.apply(&p0.apply(&x.tensor(&y, d)));
            let mut rhs = p0.apply(&delta.apply(&x).tensor(&phi0.apply(&y), d));
            rhs.add_scaled(&p0.apply(&psi0.apply(&x).tensor(&delta.apply(&y), d)), &crate::scalar::one());
            lhs != rhs
        })
        .map(|c| (c / d, c % d))
        .collect();
    Ok(DefectReport { delta, failures })
}

/// Number of admissible basis inputs where two combinations differ modulo
/// `h^{n+1}`.
pub fn count_differences(
    def: &TruncatedDeformation,
    lhs: &LinComb,
    rhs: &LinComb,
    n: usize,
) -> Result<usize, DeformError> {
    def.ensure_order(n)?;
    let k = lhs.arity().0;
    let d = def.dim();
    let mut count = 0;
    for idx in 0..d.pow(k as u32) {
        let input = unflatten(idx, d, k);
        if def.base.admissible(&input) && compare_at(lhs, rhs, &def.maps, n, &input)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}
