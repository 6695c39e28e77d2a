//! Finite-dimensional Lie algebras, their modules, Casimirs and `H¹`.
//!
//! File form:
//! ```text
//! lie sl2
//! basis e f h
//! bracket (0, 1, 2, 1)     # [e_0, e_1] has coefficient 1 on e_2
//! ```
//! Brackets are listed for `i < j` only; antisymmetry fills in the rest.

use num_traits::Zero;

use super::DeformError;
use crate::linalg::Matrix;
use crate::models::{fmt_quad, parse_quad};
use crate::scalar::{int, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraModel {
    pub name: String,
    labels: Vec<String>,
    /// `bracket[i][j]` = coordinates of `[e_i, e_j]`.
    bracket: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebraModel {
    /// Validates antisymmetry and the Jacobi identity on basis triples.
    pub fn new(name: impl Into<String>, labels: Vec<String>, bracket: Vec<Vec<Vec<Scalar>>>) -> Result<Self, DeformError> {
        let n = labels.len();
        if bracket.len() != n || bracket.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(DeformError::Shape(format!("bracket table must be {n}×{n}×{n}")));
        }
        let g = LieAlgebraModel { name: name.into(), labels, bracket };
        for i in 0..n {
            for j in 0..n {
                let s: Vec<Scalar> = g.bracket[i][j].iter().zip(&g.bracket[j][i]).map(|(a, b)| a + b).collect();
                if s.iter().any(|x| !x.is_zero()) {
                    return Err(DeformError::Precondition(format!("bracket not antisymmetric at ({i}, {j})")));
                }
            }
        }
        for t in 0..n * n * n {
            let (i, j, k) = (t / (n * n), t / n % n, t % n);
            let (a, b, c) = (g.basis(i), g.basis(j), g.basis(k));
            let mut sum = g.bracket(&a, &g.bracket(&b, &c));
            for (x, y) in sum.iter_mut().zip(g.bracket(&b, &g.bracket(&c, &a))) {
                *x += y;
            }
            for (x, y) in sum.iter_mut().zip(g.bracket(&c, &g.bracket(&a, &b))) {
                *x += y;
            }
            if sum.iter().any(|x| !x.is_zero()) {
                return Err(DeformError::Precondition(format!("Jacobi identity fails at ({i}, {j}, {k})")));
            }
        }
        Ok(g)
    }

    /// `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2() -> Self {
        let mut b = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, c: i64| {
            b[i][j][k] = int(c);
            b[j][i][k] = int(-c);
        };
        set(0, 1, 2, 1);
        set(2, 0, 0, 2);
        set(2, 1, 1, -2);
        LieAlgebraModel::new("sl2", ["e", "f", "h"].map(String::from).to_vec(), b).expect("sl2 is a Lie algebra")
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        LieAlgebraModel::new(format!("abelian{n}"), labels, vec![vec![vec![Scalar::zero(); n]; n]; n])
            .expect("zero bracket is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = int(1);
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in self.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += a * b * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i) = [e_i, ·]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(n, &(0..n).map(|j| self.bracket[i][j].clone()).collect::<Vec<_>>())
    }

    /// `K(e_i, e_j) = tr(ad e_i ad e_j)`.
    pub fn killing(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(i)).collect();
        Matrix::from_rows((0..n).map(|i| (0..n).map(|j| ads[i].mul(&ads[j]).trace()).collect()).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("lie {}\nbasis {}\n", self.name, self.labels.join(" "));
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in self.bracket[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out.push_str(&format!("bracket {}\n", fmt_quad(i, j, k, c)));
                    }
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, DeformError> {
        let mut name = None;
        let mut labels: Option<Vec<String>> = None;
        let mut entries = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| DeformError::File { line: ln + 1, message };
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match key {
                "lie" => name = Some(rest.trim().to_string()),
                "basis" => labels = Some(rest.split_whitespace().map(String::from).collect()),
                "bracket" => {
                    let (idx, c) = parse_quad(rest, 3).ok_or_else(|| bad(format!("bad entry `{}`", rest.trim())))?;
                    entries.push((ln + 1, idx, c));
                }
                other => return Err(bad(format!("unknown directive `{other}`"))),
            }
        }
        let missing = |what: &str| DeformError::File { line: 0, message: format!("missing `{what}`") };
        let name = name.ok_or_else(|| missing("lie"))?;
        let labels = labels.ok_or_else(|| missing("basis"))?;
        let n = labels.len();
        let mut b = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (line, idx, c) in entries {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            if i >= n || j >= n || k >= n || i == j {
                return Err(DeformError::File { line, message: "index out of range".into() });
            }
            b[i][j][k] += &c;
            b[j][i][k] -= &c;
        }
        LieAlgebraModel::new(name, labels, b)
    }
}

/// A representation: one matrix per basis element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    pub name: String,
    action: Vec<Matrix>,
}

impl LieModule {
    /// Checks `ρ([x,y]) = ρ(x)ρ(y) − ρ(y)ρ(x)` on basis pairs.
    pub fn new(g: &LieAlgebraModel, name: impl Into<String>, action: Vec<Matrix>) -> Result<Self, DeformError> {
        let n = g.dim();
        if action.len() != n {
            return Err(DeformError::Shape(format!("need {n} action matrices")));
        }
        let m = action.first().map_or(0, Matrix::rows);
        if action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(DeformError::Shape("action matrices must be square of one size".into()));
        }
        let rho = |v: &[Scalar]| {
            let mut acc = Matrix::zeros(m, m);
            for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                acc = acc.add(&action[i].scale(c));
            }
            acc
        };
        for i in 0..n {
            for j in 0..n {
                let lhs = rho(&g.bracket(&g.basis(i), &g.basis(j)));
                let rhs = action[i].mul(&action[j]).sub(&action[j].mul(&action[i]));
                if lhs != rhs {
                    return Err(DeformError::Precondition(format!("not a representation at ({i}, {j})")));
                }
            }
        }
        Ok(LieModule { name: name.into(), action })
    }

    pub fn adjoint(g: &LieAlgebraModel) -> Self {
        LieModule::new(g, "ad", (0..g.dim()).map(|i| g.ad(i)).collect()).expect("Jacobi makes ad a representation")
    }

    pub fn trivial(g: &LieAlgebraModel, dim: usize) -> Self {
        LieModule { name: format!("trivial{dim}"), action: vec![Matrix::zeros(dim, dim); g.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.action.first().map_or(0, Matrix::rows)
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// `Λ^k` of this module on the basis of increasing `k`-subsets.
    pub fn exterior_power(&self, k: usize) -> LieModule {
        let m = self.dim();
        let subsets = increasing_subsets(m, k);
        let index = |s: &[usize]| subsets.iter().position(|t| t == s);
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut out = Matrix::zeros(subsets.len(), subsets.len());
                for (col, s) in subsets.iter().enumerate() {
                    for t in 0..k {
                        for r in 0..m {
                            let c = &a[(r, s[t])];
                            if c.is_zero() || s.iter().enumerate().any(|(u, &x)| u != t && x == r) {
                                continue;
                            }
                            let mut word = s.clone();
                            word[t] = r;
                            let sign = sort_sign(&mut word);
                            let row = index(&word).expect("sorted subset");
                            out[(row, col)] += c * int(sign);
                        }
                    }
                }
                out
            })
            .collect();
        LieModule { name: format!("Λ{k}({})", self.name), action }
    }
}

fn increasing_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for s in increasing_subsets(m, k - 1) {
        let start = s.last().map_or(0, |&x| x + 1);
        for x in start..m {
            let mut t = s.clone();
            t.push(x);
            out.push(t);
        }
    }
    out
}

/// Sorts distinct entries in place, returning the sign of the permutation.
fn sort_sign(word: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// `Σ ρ(x_i)ρ(x^i)` with `x^i` the Killing-dual basis.
pub fn casimir(g: &LieAlgebraModel, module: &LieModule) -> Result<Matrix, DeformError> {
    let k = g.killing();
    let inv = k.inverse().ok_or_else(|| DeformError::Degenerate(format!("Killing form of {} is singular", g.name)))?;
    let n = g.dim();
    let m = module.dim();
    let mut c = Matrix::zeros(m, m);
    for i in 0..n {
        // x^i = Σ_j (K⁻¹)_{ji} x_j
        let mut dual = Matrix::zeros(m, m);
        for j in 0..n {
            if !inv[(j, i)].is_zero() {
                dual = dual.add(&module.action(j).scale(&inv[(j, i)]));
            }
        }
        c = c.add(&module.action(i).mul(&dual));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub cocycles: usize,
    pub coboundaries: usize,
}

impl H1Report {
    pub fn dimension(&self) -> usize {
        self.cocycles - self.coboundaries
    }
}

/// Dimensions of 1-cocycles `c([x,y]) = x·c(y) − y·c(x)` and of the
/// coboundaries `x ↦ x·r`.
pub fn h1(g: &LieAlgebraModel, module: &LieModule) -> H1Report {
    let (n, m) = (g.dim(), module.dim());
    // unknown c(e_i)_r sits at column i*m + r
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let br = &g.bracket[a][b];
            for out in 0..m {
                let mut row = vec![Scalar::zero(); n * m];
                for (k, coef) in br.iter().enumerate() {
                    if !coef.is_zero() {
                        row[k * m + out] += coef;
                    }
                }
                for r in 0..m {
                    row[b * m + r] -= &module.action(a)[(out, r)];
                    row[a * m + r] += &module.action(b)[(out, r)];
                }
                rows.push(row);
            }
        }
    }
    let cocycles = if rows.is_empty() { n * m } else { n * m - Matrix::from_rows(rows).rank() };
    let cob: Vec<Vec<Scalar>> =
        (0..n * m).map(|row| (0..m).map(|r| module.action(row / m)[(row % m, r)].clone()).collect()).collect();
    let coboundaries = if n * m == 0 { 0 } else { Matrix::from_rows(cob).rank() };
    H1Report { cocycles, coboundaries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_signs() {
        let mut w = [2, 0, 1];
        assert_eq!(sort_sign(&mut w), 1);
        assert_eq!(w, [0, 1, 2]);
        let mut w = [1, 0];
        assert_eq!(sort_sign(&mut w), -1);
    }

    #[test]
    fn top_exterior_power_acts_by_the_trace() {
        let g = LieAlgebraModel::abelian(1);
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(5)]]);
        let m = LieModule::new(&g, "plane", vec![a.clone()]).unwrap();
        let top = m.exterior_power(2);
        assert_eq!(top.dim(), 1);
        assert_eq!(top.action(0)[(0, 0)], a.trace());
    }
}
