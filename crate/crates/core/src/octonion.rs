//! Cayley–Dickson algebras, their Moufang and alternative-nucleus checks, and
//! the Malcev algebra of traceless elements.
//!
//! Doubling convention: `(a,b)(c,d) = (ac + μ·d̄·b, d·a + b·c̄)` with
//! `conj(a,b) = (ā, -b)`. Basis of the eight-dimensional algebra:
//! `1, u, v, uv, w, uw, vw, (uv)w`; the traceless part drops `1`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{Matrix, SparseVec};
use crate::models::{fmt_quad, MoufangLoop, MoufangSide};
use crate::scalar::{int, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OctonionError {
    #[error("doubling beyond dimension 8 loses alternativity")]
    TooLarge,
    #[error("doubling parameter must be nonzero")]
    ZeroParameter,
    #[error("expected an eight-dimensional algebra")]
    NotOctonion,
    #[error("basis products are not signed basis elements; unit loop needs parameters (-1, -1, -1)")]
    NotClosed,
    #[error("Malcev identity fails at {0:?}")]
    NotMalcev([usize; 4]),
    #[error(transparent)]
    Loop(#[from] crate::models::ModelError),
}

pub type Vector = Vec<Scalar>;

const GENERATORS: [&str; 3] = ["u", "v", "w"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyAlgebra {
    pub params: Vec<Scalar>,
    labels: Vec<String>,
    /// `table[i][j]` = e_i e_j.
    table: Vec<Vec<SparseVec>>,
    conj: Matrix,
}

fn dense(v: &SparseVec, n: usize) -> Vector {
    v.to_dense(n)
}

impl CayleyAlgebra {
    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        CayleyAlgebra {
            params: Vec::new(),
            labels: vec!["1".into()],
            table: vec![vec![SparseVec::basis(0)]],
            conj: Matrix::identity(1),
        }
    }

    /// `O(α, β, γ)` by three doublings.
    pub fn octonions(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Result<Self, OctonionError> {
        Self::ground().double(alpha)?.double(beta)?.double(gamma)
    }

    pub fn split_free() -> Self {
        Self::octonions(int(-1), int(-1), int(-1)).expect("nonzero parameters")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vector {
        dense(&SparseVec::basis(i), self.dim())
    }

    pub fn one(&self) -> Vector {
        self.basis(0)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.table[i][j].iter() {
                    out[k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn conj(&self, x: &[Scalar]) -> Vector {
        self.conj.mul_vec(x)
    }

    /// `x x̄` as a scalar; panics if it is not a multiple of 1.
    pub fn norm(&self, x: &[Scalar]) -> Scalar {
        let p = self.mul(x, &self.conj(x));
        assert!(p[1..].iter().all(Zero::is_zero), "x x̄ is not scalar");
        p[0].clone()
    }

    pub fn conj_matrix(&self) -> &Matrix {
        &self.conj
    }

    /// One Cayley–Dickson doubling with parameter `mu`.
    pub fn double(&self, mu: Scalar) -> Result<Self, OctonionError> {
        let n = self.dim();
        if n >= 8 {
            return Err(OctonionError::TooLarge);
        }
        if mu.is_zero() {
            return Err(OctonionError::ZeroParameter);
        }
        let g = GENERATORS[self.params.len()];
        let mut labels = self.labels.clone();
        for l in &self.labels {
            labels.push(match l.as_str() {
                "1" => g.to_string(),
                s if s.len() == 1 => format!("{s}{g}"),
                s => format!("({s}){g}"),
            });
        }
        let split = |i: usize| -> (Vector, Vector) {
            let z = vec![Scalar::zero(); n];
            let e = self.basis(i % n);
            if i < n {
                (e, z)
            } else {
                (z, e)
            }
        };
        let add = |x: Vector, y: Vector| -> Vector { x.into_iter().zip(y).map(|(a, b)| a + b).collect() };
        let mut table = vec![vec![SparseVec::new(); 2 * n]; 2 * n];
        for (i, row) in table.iter_mut().enumerate() {
            let (a, b) = split(i);
            for (j, cell) in row.iter_mut().enumerate() {
                let (c, d) = split(j);
                let db: Vector = self.mul(&self.conj(&d), &b).into_iter().map(|x| x * &mu).collect();
                let first = add(self.mul(&a, &c), db);
                let second = add(self.mul(&d, &a), self.mul(&b, &self.conj(&c)));
                *cell = SparseVec::from_dense(&[first, second].concat());
            }
        }
        let mut conj = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                conj[(i, j)] = self.conj[(i, j)].clone();
            }
            conj[(n + i, n + i)] = -Scalar::one();
        }
        let mut params = self.params.clone();
        params.push(mu);
        Ok(CayleyAlgebra { params, labels, table, conj })
    }

    /// Copy with one structure constant overwritten: `e_i e_j` gets
    /// coefficient `value` on `e_k`. Used to build negative controls.
    pub fn corrupted(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        let old = out.table[i][j].get(k);
        out.table[i][j].add_at(k, &(value - old));
        out
    }

    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let l = self.mul(&self.mul(x, y), z);
        let r = self.mul(x, &self.mul(y, z));
        l.into_iter().zip(r).map(|(a, b)| a - b).collect()
    }

    fn assoc_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        self.associator(&self.basis(i), &self.basis(j), &self.basis(k))
    }

    /// Polarized `(x,x,y) = 0 = (y,x,x)`: first failing basis triple.
    pub fn alternativity_witness(&self) -> Option<[usize; 3]> {
        let n = self.dim();
        let zero = |v: &Vector| v.iter().all(Zero::is_zero);
        (0..n * n * n).into_par_iter().find_map_first(|t| {
            let (i, j, k) = (t / (n * n), t / n % n, t % n);
            let left = sum(&self.assoc_basis(i, j, k), &self.assoc_basis(j, i, k));
            let right = sum(&self.assoc_basis(k, i, j), &self.assoc_basis(k, j, i));
            (!zero(&left) || !zero(&right)).then_some([i, j, k])
        })
    }

    /// Checks `(a,x,y) = -(x,a,y) = (x,y,a)` over all basis pairs; returns
    /// the first failing pair.
    pub fn nalt_check(&self, a: &[Scalar]) -> Result<(), [usize; 2]> {
        let n = self.dim();
        let found = (0..n * n).into_par_iter().find_map_first(|t| {
            let (x, y) = (self.basis(t / n), self.basis(t % n));
            let p = self.associator(a, &x, &y);
            let q = self.associator(&x, a, &y);
            let r = self.associator(&x, &y, a);
            let ok = p.iter().zip(&q).zip(&r).all(|((p, q), r)| *p == -q.clone() && p == r);
            (!ok).then_some([t / n, t % n])
        });
        found.map_or(Ok(()), Err)
    }

    /// Polarized Moufang identity; returns the first failing basis quadruple
    /// `(a, b, x, y)`.
    pub fn check_moufang(&self, side: MoufangSide) -> Option<[usize; 4]> {
        let n = self.dim();
        let p = |a: &Vector, b: &Vector, x: &Vector, y: &Vector| -> Vector {
            let m = |s: &Vector, t: &Vector| self.mul(s, t);
            let (l, r) = match side {
                MoufangSide::Left => (m(a, &m(x, &m(b, y))), m(&m(&m(a, x), b), y)),
                MoufangSide::Middle => (m(&m(a, x), &m(y, b)), m(&m(a, &m(x, y)), b)),
                MoufangSide::Right => (m(&m(&m(x, a), y), b), m(x, &m(a, &m(y, b)))),
            };
            l.into_iter().zip(r).map(|(s, t)| s - t).collect()
        };
        (0..n.pow(4)).into_par_iter().find_map_first(|t| {
            let q = [t / (n * n * n), t / (n * n) % n, t / n % n, t % n];
            let [a, b, x, y] = q.map(|i| self.basis(i));
            let s = sum(&p(&a, &b, &x, &y), &p(&b, &a, &x, &y));
            (!s.iter().all(Zero::is_zero)).then_some(q)
        })
    }

    /// Structure constants as `mul (i, j, k, c)` lines.
    pub fn export(&self) -> String {
        let mut out = format!("algebra O{:?}\ndim {}\nbasis {}\n", self.param_text(), self.dim(), self.labels.join(" "));
        for (i, row) in self.table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                for (k, c) in cell.iter() {
                    out.push_str(&format!("mul {}\n", fmt_quad(i, j, k, c)));
                }
            }
        }
        out
    }

    fn param_text(&self) -> Vec<String> {
        self.params.iter().map(crate::scalar::fmt_scalar).collect()
    }

    /// The 16 signed basis units, as a Moufang loop. Needs every parameter -1.
    pub fn unit_loop(&self) -> Result<MoufangLoop, OctonionError> {
        let n = self.dim();
        if n != 8 {
            return Err(OctonionError::NotOctonion);
        }
        let mut signed = vec![vec![(0usize, false); n]; n];
        for i in 0..n {
            for j in 0..n {
                let cell = &self.table[i][j];
                let mut it = cell.iter();
                match (it.next(), it.next()) {
                    (Some((k, c)), None) if c.is_one() || (-c.clone()).is_one() => signed[i][j] = (k, !c.is_one()),
                    _ => return Err(OctonionError::NotClosed),
                }
            }
        }
        Ok(MoufangLoop::from_signed("O16", &self.labels, &signed)?)
    }
}

fn sum(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// The order-16 Moufang loop of signed units of `O(-1,-1,-1)`. Index `k < 8`
/// is `+e_k`, index `k + 8` is `-e_k`.
pub fn o16() -> MoufangLoop {
    CayleyAlgebra::split_free().unit_loop().expect("signed units close")
}

/// Anticommutative algebra given by bracket structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevAlgebra {
    labels: Vec<String>,
    /// `bracket[i][j]` = [e_i, e_j].
    bracket: Vec<Vec<Vector>>,
}

impl MalcevAlgebra {
    /// Builds from structure constants, checking antisymmetry and the
    /// polarized Malcev identity.
    pub fn new(labels: Vec<String>, bracket: Vec<Vec<Vector>>) -> Result<Self, OctonionError> {
        let m = MalcevAlgebra { labels, bracket };
        if let Some(q) = m.malcev_witness() {
            return Err(OctonionError::NotMalcev(q));
        }
        Ok(m)
    }

    /// Skips verification; for Lie tables and negative controls.
    pub fn unchecked(labels: Vec<String>, bracket: Vec<Vec<Vector>>) -> Self {
        MalcevAlgebra { labels, bracket }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]`.
    pub fn jacobian(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vector {
        let t1 = self.bracket(&self.bracket(a, b), c);
        let t2 = self.bracket(&self.bracket(b, c), a);
        let t3 = self.bracket(&self.bracket(c, a), b);
        sum(&sum(&t1, &t2), &t3)
    }

    pub fn antisymmetry_witness(&self) -> Option<[usize; 2]> {
        let n = self.dim();
        (0..n * n).map(|t| [t / n, t % n]).find(|&[i, j]| {
            self.bracket[i][j].iter().zip(&self.bracket[j][i]).any(|(x, y)| *x != -y.clone())
        })
    }

    /// Polarization of `Jac(a,b,[a,c]) = [Jac(a,b,c),a]` in `a`, over all
    /// basis quadruples `(a, d, b, c)`; antisymmetry failures report `[i, j, i, j]`.
    pub fn malcev_witness(&self) -> Option<[usize; 4]> {
        if let Some([i, j]) = self.antisymmetry_witness() {
            return Some([i, j, i, j]);
        }
        let n = self.dim();
        let p = |a: &Vector, d: &Vector, b: &Vector, c: &Vector| -> Vector {
            let l = self.jacobian(a, b, &self.bracket(d, c));
            let r = self.bracket(&self.jacobian(a, b, c), d);
            l.into_iter().zip(r).map(|(x, y)| x - y).collect()
        };
        (0..n.pow(4)).into_par_iter().find_map_first(|t| {
            let q = [t / (n * n * n), t / (n * n) % n, t / n % n, t % n];
            let [a, d, b, c] = q.map(|i| self.basis(i));
            let s = sum(&p(&a, &d, &b, &c), &p(&d, &a, &b, &c));
            (!s.iter().all(Zero::is_zero)).then_some(q)
        })
    }

    pub fn export(&self) -> String {
        let mut out = format!("malcev\ndim {}\nbasis {}\n", self.dim(), self.labels.join(" "));
        for (i, row) in self.bracket.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                for (k, c) in cell.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    out.push_str(&format!("bracket {}\n", fmt_quad(i, j, k, c)));
                }
            }
        }
        out
    }
}

/// Traceless elements of an eight-dimensional Cayley algebra under the
/// commutator, on basis `u, v, uv, w, uw, vw, (uv)w`.
pub fn traceless_malcev(a: &CayleyAlgebra) -> Result<MalcevAlgebra, OctonionError> {
    if a.dim() != 8 {
        return Err(OctonionError::NotOctonion);
    }
    let lift = |i: usize| a.basis(i + 1);
    let mut bracket = vec![vec![Vec::new(); 7]; 7];
    for (i, row) in bracket.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (x, y) = (lift(i), lift(j));
            let c: Vector = a.mul(&x, &y).into_iter().zip(a.mul(&y, &x)).map(|(p, q)| p - q).collect();
            assert!(c[0].is_zero(), "commutator of traceless elements is traceless");
            *cell = c[1..].to_vec();
        }
    }
    MalcevAlgebra::new(a.labels()[1..].to_vec(), bracket)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_numbers() {
        let c = CayleyAlgebra::ground().double(int(-1)).unwrap();
        let u = c.basis(1);
        assert_eq!(c.mul(&u, &u), vec![int(-1), int(0)]);
        assert_eq!(c.labels(), ["1", "u"]);
    }

    #[test]
    fn octonion_labels_and_limits() {
        let o = CayleyAlgebra::split_free();
        assert_eq!(o.labels(), ["1", "u", "v", "uv", "w", "uw", "vw", "(uv)w"]);
        assert_eq!(o.double(int(-1)).unwrap_err(), OctonionError::TooLarge);
        assert_eq!(CayleyAlgebra::ground().double(int(0)).unwrap_err(), OctonionError::ZeroParameter);
        // (uv)w as a product of generators
        let uvw = o.mul(&o.mul(&o.basis(1), &o.basis(2)), &o.basis(4));
        assert_eq!(uvw, o.basis(7));
    }

    #[test]
    fn associator_basics() {
        let o = CayleyAlgebra::split_free();
        let (u, v, w) = (o.basis(1), o.basis(2), o.basis(4));
        assert!(o.associator(&o.one(), &v, &w).iter().all(Zero::is_zero));
        assert!(o.associator(&u, &v, &w).iter().any(|x| !x.is_zero()));
        assert!(o.associator(&u, &u, &v).iter().all(Zero::is_zero));
    }

    #[test]
    fn norm_is_multiplicative() {
        let o = CayleyAlgebra::octonions(int(2), int(3), int(5)).unwrap();
        let x: Vector = (1..=8).map(int).collect();
        let y: Vector = (0..8).map(|k| int(k * k - 3)).collect();
        assert_eq!(o.norm(&o.mul(&x, &y)), o.norm(&x) * o.norm(&y));
    }

    #[test]
    fn corrupted_quaternions_lose_moufang_and_nalt() {
        let q = CayleyAlgebra::ground().double(int(-1)).unwrap().double(int(-1)).unwrap();
        assert_eq!(q.check_moufang(MoufangSide::Middle), None);
        let bad = q.corrupted(1, 2, 3, int(2));
        assert!(bad.nalt_check(&bad.basis(1)).is_err() || bad.alternativity_witness().is_some());
        assert!(bad.check_moufang(MoufangSide::Right).is_some());
    }

    #[test]
    fn ground_field_is_moufang() {
        assert_eq!(CayleyAlgebra::ground().check_moufang(MoufangSide::Middle), None);
    }

    #[test]
    fn unit_loop_of_octonions() {
        let l = o16();
        assert_eq!(l.order(), 16);
        assert_eq!(l.identity(), 0);
        assert!(l.associativity_witness().is_some());
        assert!(l.moufang_witness(MoufangSide::Left).is_none());
        assert!(CayleyAlgebra::octonions(int(2), int(3), int(5)).unwrap().unit_loop().is_err());
    }
}
