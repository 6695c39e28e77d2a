//! Linear maps with coefficients in `Q[h]/(h^{N+1})`.

use num_traits::{One, Zero};

use crate::linalg::LinMap;
use crate::scalar::{int, Scalar};

/// `f_0 + h f_1 + … + h^N f_N`, all components of one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeriesMap {
    components: Vec<LinMap>,
}

impl TruncatedSeriesMap {
    pub fn new(components: Vec<LinMap>) -> Self {
        assert!(!components.is_empty(), "series needs an h^0 component");
        let (d, c) = (components[0].dom(), components[0].cod());
        assert!(components.iter().all(|m| m.dom() == d && m.cod() == c), "series components differ in shape");
        TruncatedSeriesMap { components }
    }

    /// `f` placed in degree 0, zero above, padded to `order`.
    pub fn constant(f: LinMap, order: usize) -> Self {
        let z = LinMap::zero(f.dom(), f.cod());
        let mut components = vec![f];
        components.resize(order + 1, z);
        TruncatedSeriesMap { components }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        Self::constant(LinMap::identity(n), order)
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn dom(&self) -> usize {
        self.components[0].dom()
    }

    pub fn cod(&self) -> usize {
        self.components[0].cod()
    }

    pub fn components(&self) -> &[LinMap] {
        &self.components
    }

    /// Component `n`, zero past the order.
    pub fn component(&self, n: usize) -> LinMap {
        self.components.get(n).cloned().unwrap_or_else(|| LinMap::zero(self.dom(), self.cod()))
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut components: Vec<LinMap> = self.components.iter().take(order + 1).cloned().collect();
        components.resize(order + 1, LinMap::zero(self.dom(), self.cod()));
        TruncatedSeriesMap { components }
    }

    /// `self ∘ inner`, truncated at the smaller order.
    pub fn compose(&self, inner: &TruncatedSeriesMap) -> Self {
        let order = self.order().min(inner.order());
        let components = (0..=order)
            .map(|n| {
                let mut acc = LinMap::zero(inner.dom(), self.cod());
                for i in 0..=n {
                    let (a, b) = (&self.components[i], &inner.components[n - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.compose(b));
                    }
                }
                acc
            })
            .collect();
        TruncatedSeriesMap { components }
    }

    /// `self ⊗ other`, truncated at the smaller order.
    pub fn kron(&self, other: &TruncatedSeriesMap) -> Self {
        let order = self.order().min(other.order());
        let components = (0..=order)
            .map(|n| {
                let mut acc = LinMap::zero(self.dom() * other.dom(), self.cod() * other.cod());
                for i in 0..=n {
                    let (a, b) = (&self.components[i], &other.components[n - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.kron(b));
                    }
                }
                acc
            })
            .collect();
        TruncatedSeriesMap { components }
    }

    pub fn sub(&self, other: &TruncatedSeriesMap) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeriesMap { components: (0..=order).map(|n| self.components[n].sub(&other.components[n])).collect() }
    }

    /// `exp(h e)` truncated at `order`.
    pub fn exp(e: &LinMap, order: usize) -> Self {
        let mut components = vec![LinMap::identity(e.dom())];
        for k in 1..=order {
            let next = e.compose(&components[k - 1]).scale(&(Scalar::one() / int(k as i64)));
            components.push(next);
        }
        TruncatedSeriesMap { components }
    }

    /// The polynomial evaluated at a concrete value of `h`.
    pub fn at(&self, h: &Scalar) -> LinMap {
        let mut acc = LinMap::zero(self.dom(), self.cod());
        let mut p = Scalar::one();
        for c in &self.components {
            if !p.is_zero() {
                acc = acc.add_scaled(c, &p);
            }
            p *= h;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, SparseVec};

    #[test]
    fn exp_of_minus_e_inverts() {
        let e = LinMap::from_matrix(&Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(2), int(3)]]));
        let f = TruncatedSeriesMap::exp(&e, 4);
        let g = TruncatedSeriesMap::exp(&e.scale(&int(-1)), 4);
        assert_eq!(f.compose(&g), TruncatedSeriesMap::identity(2, 4));
    }

    #[test]
    fn evaluation_at_h_is_a_homomorphism() {
        let a = TruncatedSeriesMap::new(vec![LinMap::identity(2), LinMap::from_columns(2, vec![SparseVec::basis(1), SparseVec::new()])]);
        let b = a.compose(&a);
        let h = int(3);
        // (1 + hN)² = 1 + 2hN since N² = 0; no truncation loss at order 1
        assert_eq!(b.at(&h), a.at(&h).compose(&a.at(&h)));
    }
}
