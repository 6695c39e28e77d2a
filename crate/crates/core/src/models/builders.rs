//! Standard model constructions.

use std::collections::BTreeSet;

use super::{FiniteBialgebraModel, ModelData, MoufangLoop, Waiver};
use crate::linalg::{LinMap, SparseVec};
use crate::octonion::o16;
use crate::scalar::{binomial, one};
use crate::theories::Flag;

const MOUFANG: [Flag; 3] = [Flag::MoufangL, Flag::MoufangM, Flag::MoufangR];
const COMOUFANG: [Flag; 3] = [Flag::ComoufangL, Flag::ComoufangM, Flag::ComoufangR];

/// Loop algebra: basis = loop elements, `Δx = x⊗x`, `ε(x) = 1`.
/// Associativity implies the co-Moufang laws, so those are declared too.
pub fn loop_bialgebra(l: &MoufangLoop) -> FiniteBialgebraModel {
    let n = l.order();
    let mul = LinMap::from_columns(n, (0..n * n).map(|c| SparseVec::basis(l.mul(c / n, c % n))).collect());
    let comul = LinMap::from_columns(n * n, (0..n).map(|x| SparseVec::basis(x * n + x)).collect());
    let mut flags: BTreeSet<Flag> = [Flag::Coassoc, Flag::Cocomm].into_iter().chain(MOUFANG).chain(COMOUFANG).collect();
    if l.associativity_witness().is_none() {
        flags.insert(Flag::Assoc);
    }
    if l.is_commutative() {
        flags.insert(Flag::Comm);
    }
    FiniteBialgebraModel::register(ModelData {
        name: format!("loop_bialgebra({})", l.name),
        basis: l.labels().to_vec(),
        mul,
        comul,
        unit: SparseVec::basis(l.identity()),
        counit: (0..n).map(|x| (x, one())).collect(),
        flags,
        grading: None,
        waiver: None,
    })
    .expect("loop bialgebras satisfy their flags")
}

/// Functions on the loop: pointwise product on delta functions, coproduct
/// dual to the loop product.
pub fn function_bialgebra(l: &MoufangLoop) -> FiniteBialgebraModel {
    let n = l.order();
    let mul = LinMap::from_columns(
        n,
        (0..n * n).map(|c| if c / n == c % n { SparseVec::basis(c / n) } else { SparseVec::new() }).collect(),
    );
    let mut cols = vec![SparseVec::new(); n];
    for a in 0..n {
        for b in 0..n {
            cols[l.mul(a, b)].add_at(a * n + b, &one());
        }
    }
    let comul = LinMap::from_columns(n * n, cols);
    let mut flags: BTreeSet<Flag> = [Flag::Assoc, Flag::Comm].into_iter().chain(MOUFANG).chain(COMOUFANG).collect();
    if l.associativity_witness().is_none() {
        flags.insert(Flag::Coassoc);
    }
    if l.is_commutative() {
        flags.insert(Flag::Cocomm);
    }
    let basis = l.labels().iter().map(|x| format!("δ{x}")).collect();
    FiniteBialgebraModel::register(ModelData {
        name: format!("function_bialgebra({})", l.name),
        basis,
        mul,
        comul,
        unit: (0..n).map(|x| (x, one())).collect(),
        counit: SparseVec::basis(l.identity()),
        flags,
        grading: None,
        waiver: None,
    })
    .expect("function bialgebras satisfy their flags")
}

/// `span{1, a, …, a^D}` with `a^i a^j = a^{i+j}` (zero past `D`) and the
/// binomial coproduct. Compatibility breaks only past the top degree, so
/// identity checks skip inputs of total degree above `D/2`.
pub fn truncated_binomial_bialgebra(d: usize) -> FiniteBialgebraModel {
    assert!(d >= 1, "max degree must be positive");
    let n = d + 1;
    let mul = LinMap::from_columns(
        n,
        (0..n * n).map(|c| if c / n + c % n <= d { SparseVec::basis(c / n + c % n) } else { SparseVec::new() }).collect(),
    );
    let comul =
        LinMap::from_columns(n * n, (0..n).map(|k| (0..=k).map(|i| (i * n + (k - i), binomial(k, i))).collect()).collect());
    let basis = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    let flags = [Flag::Assoc, Flag::Coassoc, Flag::Comm, Flag::Cocomm].into_iter().chain(MOUFANG).chain(COMOUFANG).collect();
    FiniteBialgebraModel::register(ModelData {
        name: format!("truncated_binomial_bialgebra({d})"),
        basis,
        mul,
        comul,
        unit: SparseVec::basis(0),
        counit: SparseVec::basis(0),
        flags,
        grading: Some((0..n).collect()),
        waiver: Some(Waiver { max_input_degree: d / 2 }),
    })
    .expect("binomial bialgebra satisfies its flags below the waiver bound")
}

/// The registered models used for soundness sweeps.
pub fn standard_models() -> Vec<FiniteBialgebraModel> {
    let o = o16();
    vec![
        loop_bialgebra(&o),
        function_bialgebra(&o),
        loop_bialgebra(&MoufangLoop::cyclic(2)),
        function_bialgebra(&MoufangLoop::cyclic(3)),
        truncated_binomial_bialgebra(4),
    ]
}
