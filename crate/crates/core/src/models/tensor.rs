//! Sparse tensors over a fixed basis.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::linalg::{flatten, unflatten, SparseVec};
use crate::scalar::{fmt_scalar, Scalar};

/// Element of `V^{⊗rank}` with `dim V = dim`, stored by multi-index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    dim: usize,
    rank: usize,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero(dim: usize, rank: usize) -> Self {
        Tensor { dim, rank, entries: BTreeMap::new() }
    }

    /// Pure basis tensor `e_{i0} ⊗ e_{i1} ⊗ …`.
    pub fn basis(dim: usize, index: &[usize]) -> Self {
        let mut t = Tensor::zero(dim, index.len());
        t.add_at(index.to_vec(), &Scalar::one());
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, index: &[usize]) -> Scalar {
        self.entries.get(index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_at(&mut self, index: Vec<usize>, x: &Scalar) {
        debug_assert_eq!(index.len(), self.rank);
        if x.is_zero() {
            return;
        }
        match self.entries.entry(index) {
            Entry::Vacant(v) => {
                v.insert(x.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += x;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, s: &Scalar) {
        assert_eq!((self.dim, self.rank), (other.dim, other.rank), "tensor shape mismatch");
        for (k, v) in &other.entries {
            self.add_at(k.clone(), &(v * s));
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.dim, self.rank);
        out.add_scaled(self, s);
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    /// Flattened coordinates, slot 0 most significant.
    pub fn to_sparse(&self) -> SparseVec {
        self.entries.iter().map(|(k, v)| (flatten(k, self.dim), v.clone())).collect()
    }

    pub fn from_sparse(dim: usize, rank: usize, v: &SparseVec) -> Tensor {
        let mut t = Tensor::zero(dim, rank);
        for (i, x) in v.iter() {
            t.add_at(unflatten(i, dim, rank), x);
        }
        t
    }

    /// `2 a⊗b - 1/2 1⊗a` style text; `labels` name the basis vectors.
    pub fn display(&self, labels: &[String]) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (k, v)) in self.entries.iter().enumerate() {
            let neg = v.is_negative();
            out.push_str(match (n, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let a = v.abs();
            if !a.is_one() {
                out.push_str(&fmt_scalar(&a));
                out.push(' ');
            }
            if k.is_empty() {
                out.push_str("()");
            }
            let names: Vec<&str> = k.iter().map(|&i| labels.get(i).map_or("?", String::as_str)).collect();
            out.push_str(&names.join("⊗"));
        }
        out
    }
}
