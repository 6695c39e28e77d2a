//! Exact finite-dimensional bialgebra models.
//!
//! A model interprets each generator as a structure map over the rationals.
//! Plain models carry only the h⁰ layer, so `%0` generators act as the plain
//! map and `%+` generators act as zero. Models are checked against the base
//! rules and against every declared flag when registered.

mod builders;
mod eval;
mod file;
mod loops;
mod tensor;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::linalg::{unflatten, LinMap, SparseVec};
use crate::rewrite::LinComb;
use crate::theories::{base_rules, Flag, Theory};

pub use builders::{function_bialgebra, loop_bialgebra, standard_models, truncated_binomial_bialgebra};
pub use eval::{evaluate_comb_series, evaluate_series, StructureMaps};
pub(crate) use file::{fmt_quad, parse_quad};
pub use file::{parse_model_file, write_model_file};
pub use loops::{MoufangLoop, MoufangSide};
pub use tensor::Tensor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("input has rank {got}, diagram expects {expected}")]
    Rank { expected: usize, got: usize },
    #[error("input has dimension {got}, model has {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("identity sides have arities {lhs:?} and {rhs:?}")]
    Arity { lhs: (usize, usize), rhs: (usize, usize) },
    #[error("bad structure maps: {0}")]
    Shape(String),
    #[error("invalid loop: {0}")]
    Loop(String),
    #[error("model `{model}` fails `{rule}` on input {input}")]
    Registration { model: String, rule: String, input: String },
    #[error("model file line {line}: {message}")]
    File { line: usize, message: String },
}

/// Inputs whose total degree exceeds the bound are skipped by identity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Waiver {
    pub max_input_degree: usize,
}

/// Basis input on which two sides differ; `degree` is the lowest h-degree
/// with a nonzero difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub input: Vec<usize>,
    pub degree: usize,
    pub diff: Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    Fails(Witness),
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            IdentityCheck::Fails(w) => Some(w),
            IdentityCheck::Holds => None,
        }
    }
}

/// Raw model contents before registration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelData {
    pub name: String,
    pub basis: Vec<String>,
    pub mul: LinMap,
    pub comul: LinMap,
    pub unit: SparseVec,
    pub counit: SparseVec,
    pub flags: BTreeSet<Flag>,
    /// Degree of each basis vector, when the model is graded.
    pub grading: Option<Vec<usize>>,
    pub waiver: Option<Waiver>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBialgebraModel {
    data: ModelData,
    maps: StructureMaps,
}

impl FiniteBialgebraModel {
    /// Validates shapes, then checks the base rules and every declared flag
    /// on all admissible basis inputs.
    pub fn register(data: ModelData) -> Result<Self, ModelError> {
        let dim = data.basis.len();
        if let Some(g) = &data.grading {
            if g.len() != dim {
                return Err(ModelError::Shape("grading length differs from dim".into()));
            }
        }
        if data.waiver.is_some() && data.grading.is_none() {
            return Err(ModelError::Shape("a waiver needs a grading".into()));
        }
        let maps = StructureMaps {
            dim,
            mul: vec![data.mul.clone()],
            comul: vec![data.comul.clone()],
            unit: data.unit.clone(),
            counit: data.counit.clone(),
        };
        maps.check_shapes()?;
        let model = FiniteBialgebraModel { data, maps };
        let mut rules = base_rules();
        for f in &model.data.flags {
            rules.extend(f.rules());
        }
        for r in rules {
            if let IdentityCheck::Fails(w) = model.holds_comb(&r.lhs, &r.rhs)? {
                return Err(ModelError::Registration {
                    model: model.data.name.clone(),
                    rule: r.name.clone(),
                    input: model.input_label(&w.input),
                });
            }
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn dim(&self) -> usize {
        self.maps.dim
    }

    pub fn basis(&self) -> &[String] {
        &self.data.basis
    }

    pub fn flags(&self) -> &BTreeSet<Flag> {
        &self.data.flags
    }

    pub fn data(&self) -> &ModelData {
        &self.data
    }

    pub fn maps(&self) -> &StructureMaps {
        &self.maps
    }

    pub fn waiver(&self) -> Option<Waiver> {
        self.data.waiver
    }

    pub fn grading(&self) -> Option<&[usize]> {
        self.data.grading.as_deref()
    }

    /// Whether every flag of `theory` (splitting aside, which all plain
    /// models satisfy) is declared by this model.
    pub fn models_theory(&self, theory: &Theory) -> bool {
        theory.flags.iter().all(|f| *f == Flag::Split || self.data.flags.contains(f))
    }

    pub fn input_label(&self, input: &[usize]) -> String {
        let names: Vec<&str> = input.iter().map(|&i| self.data.basis[i].as_str()).collect();
        if names.is_empty() {
            "()".into()
        } else {
            names.join("⊗")
        }
    }

    pub(crate) fn admissible(&self, input: &[usize]) -> bool {
        match (&self.data.waiver, &self.data.grading) {
            (Some(w), Some(g)) => input.iter().map(|&i| g[i]).sum::<usize>() <= w.max_input_degree,
            _ => true,
        }
    }

    pub fn evaluate(&self, d: &Diagram, input: &Tensor) -> Result<Tensor, ModelError> {
        Ok(evaluate_series(d, &self.maps, 0, input)?.swap_remove(0))
    }

    pub fn evaluate_comb(&self, c: &LinComb, input: &Tensor) -> Result<Tensor, ModelError> {
        Ok(evaluate_comb_series(c, &self.maps, 0, input)?.swap_remove(0))
    }

    pub fn holds_comb(&self, lhs: &LinComb, rhs: &LinComb) -> Result<IdentityCheck, ModelError> {
        let allowed = |i: &[usize]| self.admissible(i);
        first_failure(lhs, rhs, &self.maps, 0, &allowed)
    }

    /// Every failing basis input, ignoring the waiver.
    pub fn all_failures(&self, lhs: &Diagram, rhs: &Diagram) -> Result<Vec<Witness>, ModelError> {
        let (l, r) = (LinComb::from(lhs.clone()), LinComb::from(rhs.clone()));
        check_arity(&l, &r)?;
        let k = l.arity().0;
        let dim = self.dim();
        (0..dim.pow(k as u32))
            .into_par_iter()
            .map(|n| compare_at(&l, &r, &self.maps, 0, &unflatten(n, dim, k)))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.into_iter().flatten().collect())
    }
}

/// Evaluates `d` on a basis tensor of `model`.
pub fn evaluate(d: &Diagram, model: &FiniteBialgebraModel, input: &Tensor) -> Result<Tensor, ModelError> {
    model.evaluate(d, input)
}

/// Exhaustive basis check of `lhs = rhs` on `model`, respecting its waiver.
pub fn holds_identity(lhs: &Diagram, rhs: &Diagram, model: &FiniteBialgebraModel) -> Result<IdentityCheck, ModelError> {
    model.holds_comb(&lhs.clone().into(), &rhs.clone().into())
}

fn check_arity(lhs: &LinComb, rhs: &LinComb) -> Result<(), ModelError> {
    if lhs.arity() != rhs.arity() {
        return Err(ModelError::Arity { lhs: lhs.arity(), rhs: rhs.arity() });
    }
    Ok(())
}

pub(crate) fn compare_at(
    lhs: &LinComb,
    rhs: &LinComb,
    maps: &StructureMaps,
    order: usize,
    input: &[usize],
) -> Result<Option<Witness>, ModelError> {
    let t = Tensor::basis(maps.dim, input);
    let a = evaluate_comb_series(lhs, maps, order, &t)?;
    let b = evaluate_comb_series(rhs, maps, order, &t)?;
    for (degree, (x, y)) in a.iter().zip(&b).enumerate() {
        let diff = x.sub(y);
        if !diff.is_zero() {
            return Ok(Some(Witness { input: input.to_vec(), degree, diff }));
        }
    }
    Ok(None)
}

/// First admissible basis input (in lexicographic order) on which the two
/// sides differ at some h-degree up to `order`.
pub(crate) fn first_failure(
    lhs: &LinComb,
    rhs: &LinComb,
    maps: &StructureMaps,
    order: usize,
    allowed: &(dyn Fn(&[usize]) -> bool + Sync),
) -> Result<IdentityCheck, ModelError> {
    check_arity(lhs, rhs)?;
    let k = lhs.arity().0;
    let dim = maps.dim;
    let found = (0..dim.pow(k as u32)).into_par_iter().find_map_first(|n| {
        let input = unflatten(n, dim, k);
        if !allowed(&input) {
            return None;
        }
        match compare_at(lhs, rhs, maps, order, &input) {
            Ok(None) => None,
            Ok(Some(w)) => Some(Ok(w)),
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        None => Ok(IdentityCheck::Holds),
        Some(Ok(w)) => Ok(IdentityCheck::Fails(w)),
        Some(Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::scalar::{int, pow2};

    #[test]
    fn q_on_binomial_scales_by_powers_of_two() {
        let m = truncated_binomial_bialgebra(5);
        let q = parse("comul ; mul").unwrap();
        for n in 0..=5 {
            let out = m.evaluate(&q, &Tensor::basis(m.dim(), &[n])).unwrap();
            assert_eq!(out, Tensor::basis(m.dim(), &[n]).scaled(&pow2(n)));
        }
        let a3 = m.evaluate(&q, &Tensor::basis(6, &[3])).unwrap();
        assert_eq!(a3.get(&[3]), int(8));
    }

    #[test]
    fn binomial_coproduct_of_a_squared() {
        let m = truncated_binomial_bialgebra(4);
        let out = m.evaluate(&Diagram::comul(), &Tensor::basis(5, &[2])).unwrap();
        assert_eq!(out.display(m.basis()), "1⊗a^2 + 2 a⊗a + a^2⊗1");
    }

    #[test]
    fn compatibility_fails_only_past_the_top_degree() {
        let d = 4;
        let m = truncated_binomial_bialgebra(d);
        let l = parse("mul ; comul").unwrap();
        let r = parse("comul * comul ; id(1) * swap * id(1) ; mul * mul").unwrap();
        let fails = m.all_failures(&l, &r).unwrap();
        assert!(!fails.is_empty());
        for w in &fails {
            assert!(w.input[0] + w.input[1] > d, "{:?}", w.input);
        }
        assert!(fails.iter().any(|w| w.input == vec![4, 1]));
        assert!(holds_identity(&l, &r, &m).unwrap().holds());
    }

    #[test]
    fn plus_generators_vanish_on_plain_models() {
        let m = truncated_binomial_bialgebra(3);
        let out = m.evaluate(&parse("comul%+").unwrap(), &Tensor::basis(4, &[2])).unwrap();
        assert!(out.is_zero());
        let out0 = m.evaluate(&parse("comul%0").unwrap(), &Tensor::basis(4, &[2])).unwrap();
        assert_eq!(out0, m.evaluate(&Diagram::comul(), &Tensor::basis(4, &[2])).unwrap());
    }

    #[test]
    fn rank_and_dimension_errors() {
        let m = truncated_binomial_bialgebra(2);
        assert!(matches!(m.evaluate(&Diagram::mul(), &Tensor::basis(3, &[0])), Err(ModelError::Rank { .. })));
        assert!(matches!(m.evaluate(&Diagram::comul(), &Tensor::basis(5, &[0])), Err(ModelError::Dimension { .. })));
        assert!(matches!(holds_identity(&Diagram::mul(), &Diagram::comul(), &m), Err(ModelError::Arity { .. })));
    }

    #[test]
    fn corrupted_model_is_refused() {
        let mut data = truncated_binomial_bialgebra(2).data().clone();
        data.counit = SparseVec::basis(1);
        assert!(matches!(FiniteBialgebraModel::register(data), Err(ModelError::Registration { .. })));
    }
}
