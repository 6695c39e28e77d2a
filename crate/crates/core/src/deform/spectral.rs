//! The operator `Q = p∘Δ`, the kernel of `T`, and exterior-power membership.

use num_traits::{One, Zero};

use super::DeformError;
use crate::linalg::{flatten, unflatten, LinMap, Matrix, SparseVec};
use crate::models::{FiniteBialgebraModel, Tensor};
use crate::scalar::{int, Scalar};

/// `Q = p∘Δ` on the undeformed layer.
pub fn q_operator(model: &FiniteBialgebraModel) -> Matrix {
    let m = model.maps();
    m.mul[0].compose(&m.comul[0]).to_matrix()
}

/// `T = Q⊗Q⊗id − Q⊗id⊗id − id⊗Q⊗id`, as a dense matrix.
pub fn t_operator(q: &Matrix) -> Matrix {
    let id = Matrix::identity(q.rows());
    let qq = q.kron(q).kron(&id);
    let qi = q.kron(&id).kron(&id);
    let iq = id.kron(q).kron(&id);
    qq.sub(&qi).sub(&iq)
}

/// Basis of `{ v : Qv = λv }`.
pub fn eigenspace(q: &Matrix, lambda: &Scalar) -> Vec<Vec<Scalar>> {
    q.sub(&Matrix::scalar(q.rows(), lambda)).nullspace()
}

/// Basis of the primitive elements `Δx = x⊗1 + 1⊗x`.
pub fn primitive_elements(model: &FiniteBialgebraModel) -> Vec<Vec<Scalar>> {
    let m = model.maps();
    let d = m.dim;
    let cols = (0..d)
        .map(|x| {
            let e = SparseVec::basis(x);
            let mut c = m.comul[0].column(x).clone();
            c.add_scaled(&e.tensor(&m.unit, d), &-Scalar::one());
            c.add_scaled(&m.unit.tensor(&e, d), &-Scalar::one());
            c
        })
        .collect();
    LinMap::from_columns(d * d, cols).to_matrix().nullspace()
}

/// A basis graded by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    pub degrees: Vec<usize>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<usize>) -> Self {
        GradedSpace { degrees }
    }

    pub fn of_model(model: &FiniteBialgebraModel) -> Option<Self> {
        model.grading().map(|g| GradedSpace::new(g.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
}

/// Kernel of `T` through the eigenbasis of `Q`. `Q` must preserve the
/// grading and act on each graded piece by a scalar `λ_n`; then
/// `e_i⊗e_j⊗e_k` is an eigenvector of `T` with eigenvalue `λ_iλ_j − λ_i − λ_j`
/// and the kernel is spanned by those with eigenvalue zero.
pub fn eigen_kernel_t(q: &Matrix, space: &GradedSpace) -> Result<Vec<Vec<Scalar>>, DeformError> {
    let d = space.dim();
    if q.rows() != d || q.cols() != d {
        return Err(DeformError::Shape(format!("Q is {}×{}, space has dimension {d}", q.rows(), q.cols())));
    }
    let mut lambda: Vec<Option<Scalar>> = vec![None; d];
    for j in 0..d {
        for i in 0..d {
            let x = &q[(i, j)];
            if i != j && !x.is_zero() {
                return Err(DeformError::NotDiagonalizable(format!("Q mixes basis vectors {j} and {i}")));
            }
        }
        let deg = space.degrees[j];
        let same = (0..j).find(|&k| space.degrees[k] == deg);
        if let Some(k) = same {
            if lambda[k].as_ref() != Some(&q[(j, j)]) {
                return Err(DeformError::NotDiagonalizable(format!("Q is not scalar on degree {deg}")));
            }
        }
        lambda[j] = Some(q[(j, j)].clone());
    }
    let lambda: Vec<Scalar> = lambda.into_iter().map(Option::unwrap).collect();
    let mut out = Vec::new();
    for idx in 0..d * d * d {
        let [i, j, _] = unflatten(idx, d, 3)[..] else { unreachable!() };
        if (&lambda[i] * &lambda[j] - &lambda[i] - &lambda[j]).is_zero() {
            let mut v = vec![Scalar::zero(); d * d * d];
            v[idx] = Scalar::one();
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeSlots {
    /// Antisymmetric in the first two slots.
    FirstTwo,
    /// Antisymmetric in every slot.
    All,
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting the largest element passes over k-1-pos others
            let sign = if (k - 1 - pos).is_multiple_of(2) { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// `(1/k!) Σ sign(σ) σ` on the antisymmetrized slots of `V^{⊗rank}`.
pub fn antisymmetrizer(dim: usize, rank: usize, slots: WedgeSlots) -> LinMap {
    let k = match slots {
        WedgeSlots::FirstTwo => 2.min(rank),
        WedgeSlots::All => rank,
    };
    let perms = permutations(k);
    let scale = Scalar::one() / int(perms.len() as i64);
    let n = dim.pow(rank as u32);
    let cols = (0..n)
        .map(|idx| {
            let digits = unflatten(idx, dim, rank);
            let mut col = SparseVec::new();
            for (p, sign) in &perms {
                let mut out = digits.clone();
                for (s, &t) in p.iter().enumerate() {
                    out[t] = digits[s];
                }
                col.add_at(flatten(&out, dim), &(int(*sign) * &scale));
            }
            col
        })
        .collect();
    LinMap::from_columns(n, cols)
}

/// Projector onto `span(basis)` along the span of the standard basis
/// vectors outside its pivot columns.
pub fn subspace_projector(dim: usize, basis: &[Vec<Scalar>]) -> Result<LinMap, DeformError> {
    if basis.iter().any(|v| v.len() != dim) {
        return Err(DeformError::Shape(format!("subspace vectors must have length {dim}")));
    }
    let span = Matrix::from_columns(dim, basis);
    let pivots = span.transpose().rref().pivots;
    if pivots.len() != basis.len() {
        return Err(DeformError::Shape("subspace vectors are linearly dependent".into()));
    }
    let mut cols: Vec<Vec<Scalar>> = basis.to_vec();
    for c in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut e = vec![Scalar::zero(); dim];
        e[c] = Scalar::one();
        cols.push(e);
    }
    let b = Matrix::from_columns(dim, &cols);
    let inv = b.inverse().expect("pivot complement is a basis");
    let mut keep = Matrix::zeros(dim, dim);
    for i in 0..basis.len() {
        keep[(i, i)] = Scalar::one();
    }
    Ok(LinMap::from_matrix(&b.mul(&keep).mul(&inv)))
}

/// Whether `t` lies in `Λ²m`, `(Λ²m)⊗V` or `Λ³m`, by exact projection.
pub fn wedge_membership(t: &Tensor, slots: WedgeSlots, primitives: &[Vec<Scalar>]) -> Result<bool, DeformError> {
    let (d, r) = (t.dim(), t.rank());
    let p = subspace_projector(d, primitives)?;
    let id = LinMap::identity(d);
    let proj = match (r, slots) {
        (2, WedgeSlots::FirstTwo) | (2, WedgeSlots::All) => p.kron(&p),
        (3, WedgeSlots::FirstTwo) => p.kron(&p).kron(&id),
        (3, WedgeSlots::All) => p.kron(&p).kron(&p),
        _ => return Err(DeformError::Shape(format!("wedge membership needs rank 2 or 3, got {r}"))),
    };
    let v = t.to_sparse();
    let a = antisymmetrizer(d, r, slots);
    Ok(a.apply(&v) == v && proj.apply(&v) == v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::truncated_binomial_bialgebra;

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert!(p.contains(&(vec![0, 1, 2], 1)));
        assert!(p.contains(&(vec![1, 0, 2], -1)));
        assert!(p.contains(&(vec![1, 2, 0], 1)));
    }

    #[test]
    fn binomial_primitives_are_the_line_of_a() {
        let m = truncated_binomial_bialgebra(4);
        let prim = primitive_elements(&m);
        assert_eq!(prim.len(), 1);
        assert!(prim[0].iter().enumerate().all(|(i, x)| (i == 1) != x.is_zero()));
    }

    #[test]
    fn projector_is_idempotent_and_fixes_the_subspace() {
        let v = vec![vec![int(1), int(2), int(0)], vec![int(0), int(1), int(1)]];
        let p = subspace_projector(3, &v).unwrap();
        assert_eq!(p.compose(&p), p);
        for x in &v {
            let s = SparseVec::from_dense(x);
            assert_eq!(p.apply(&s), s);
        }
        assert!(subspace_projector(3, &[v[0].clone(), v[0].clone()]).is_err());
    }
}
