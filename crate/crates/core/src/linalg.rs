//! Exact linear algebra over the rationals: dense matrices with row
//! reduction, and sparse column-major linear maps for tensor-sized spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{fmt_scalar, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_scalar(&self[(r, c)])).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(n_rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product; row/column index of `self` is the more significant digit.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Returns `Some(c)` when the matrix equals `c * I`.
    pub fn as_scalar_multiple(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let c = if self.rows == 0 { Scalar::zero() } else { self[(0, 0)].clone() };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let expect = if r == k { &c } else { &Scalar::zero() };
                if &self[(r, k)] != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, c)] - &factor * &m[(row, c)];
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`, returning one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = matrix[(r, n + c)].clone();
            }
        }
        Some(inv)
    }
}

/// Rank of the span of the given vectors.
pub fn span_rank(n: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(n, vectors).rank()
}

/// Sparse vector keyed by basis index; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Scalar>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(i, Scalar::one());
        v
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        let mut out = SparseVec::new();
        for (i, x) in v.iter().enumerate() {
            out.add_at(i, x);
        }
        out
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        for (&i, x) in &self.0 {
            v[i] = x.clone();
        }
        v
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_at(&mut self, i: usize, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Scalar::zero);
        *entry += x;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (&i, x) in &other.0 {
            self.add_at(i, &(x * s));
        }
    }

    pub fn scaled(&self, s: &Scalar) -> SparseVec {
        let mut out = SparseVec::new();
        out.add_scaled(self, s);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, x)| (i, x))
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    /// Tensor product: index `i * other_dim + j`.
    pub fn tensor(&self, other: &SparseVec, other_dim: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add_at(i * other_dim + j, &(a * b));
            }
        }
        out
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in iter {
            v.add_at(i, &x);
        }
        v
    }
}

/// Linear map stored column by column (column `j` is the image of basis vector `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    dom: usize,
    cod: usize,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn zero(dom: usize, cod: usize) -> Self {
        LinMap { dom, cod, cols: vec![SparseVec::new(); dom] }
    }

    pub fn identity(n: usize) -> Self {
        LinMap { dom: n, cod: n, cols: (0..n).map(SparseVec::basis).collect() }
    }

    pub fn from_columns(cod: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| i < cod)));
        LinMap { dom: cols.len(), cod, cols }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let cols = (0..m.cols()).map(|c| SparseVec::from_dense(&m.column(c))).collect();
        LinMap { dom: m.cols(), cod: m.rows(), cols }
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cod, self.dom);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.iter() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn set_column(&mut self, j: usize, v: SparseVec) {
        self.cols[j] = v;
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v.iter() {
            out.add_scaled(&self.cols[j], x);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> LinMap {
        assert_eq!(inner.cod, self.dom, "composition shape mismatch");
        let cols = inner.cols.iter().map(|c| self.apply(c)).collect();
        LinMap { dom: inner.dom, cod: self.cod, cols }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        self.add_scaled(other, &-Scalar::one())
    }

    pub fn add_scaled(&self, other: &LinMap, s: &Scalar) -> LinMap {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod), "map shape mismatch");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.add_scaled(b, s);
                c
            })
            .collect();
        LinMap { dom: self.dom, cod: self.cod, cols }
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        let cols = self.cols.iter().map(|c| c.scaled(s)).collect();
        LinMap { dom: self.dom, cod: self.cod, cols }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// `self ⊗ other`, with `self` acting on the more significant tensor slot.
    pub fn kron(&self, other: &LinMap) -> LinMap {
        let mut cols = Vec::with_capacity(self.dom * other.dom);
        for i in 0..self.dom {
            for j in 0..other.dom {
                cols.push(self.cols[i].tensor(&other.cols[j], other.cod));
            }
        }
        LinMap { dom: self.dom * other.dom, cod: self.cod * other.cod, cols }
    }

    /// Permutation of tensor slots on `V^{⊗k}` with `dim V = d`: slot `s` of the
    /// input lands in slot `perm[s]` of the output.
    pub fn slot_permutation(d: usize, perm: &[usize]) -> LinMap {
        let k = perm.len();
        let n = d.pow(k as u32);
        let cols = (0..n)
            .map(|idx| {
                let digits = unflatten(idx, d, k);
                let mut out = vec![0; k];
                for (s, &digit) in digits.iter().enumerate() {
                    out[perm[s]] = digit;
                }
                SparseVec::basis(flatten(&out, d))
            })
            .collect();
        LinMap { dom: n, cod: n, cols }
    }

    /// First basis index where the two maps differ, if any.
    pub fn first_difference(&self, other: &LinMap) -> Option<usize> {
        (0..self.dom).find(|&j| self.cols[j] != other.cols[j])
    }
}

/// Flat index of a multi-index over `V^{⊗k}`; slot 0 is most significant.
pub fn flatten(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

pub fn unflatten(mut idx: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for s in (0..k).rev() {
        out[s] = idx % d;
        idx /= d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let x = a.solve(&[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[int(0), int(1)]).is_none());
    }

    #[test]
    fn kron_matches_linmap_kron() {
        let a = m(&[&[1, 2], &[0, 3]]);
        let b = m(&[&[0, 1], &[5, 0]]);
        let dense = a.kron(&b);
        let sparse = LinMap::from_matrix(&a).kron(&LinMap::from_matrix(&b));
        assert_eq!(sparse.to_matrix(), dense);
    }

    #[test]
    fn slot_permutation_swaps() {
        let tau = LinMap::slot_permutation(2, &[1, 0]);
        // e0⊗e1 (index 1) ↦ e1⊗e0 (index 2)
        assert_eq!(tau.apply(&SparseVec::basis(1)), SparseVec::basis(2));
        assert_eq!(tau.compose(&tau), LinMap::identity(4));
    }

    #[test]
    fn scalar_multiple_detection() {
        assert_eq!(Matrix::scalar(3, &ratio(1, 2)).as_scalar_multiple(), Some(ratio(1, 2)));
        assert_eq!(m(&[&[1, 1], &[0, 1]]).as_scalar_multiple(), None);
    }
}
