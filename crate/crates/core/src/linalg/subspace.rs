use std::sync::OnceLock;

use num_traits::Zero;

use super::elim::{inverse, rref};
use super::matrix::Matrix;
use crate::scalar::Scalar;

/// A subspace of `Q^n` given by a linearly independent basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    solver: OnceLock<Coordinates>,
}

#[derive(Debug, Clone)]
struct Coordinates {
    rows: Vec<usize>,
    inverse: Matrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    /// Wraps vectors already known to be independent.
    pub fn from_independent(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(basis.iter().all(|v| v.len() == ambient_dim));
        Self {
            ambient_dim,
            basis,
            solver: OnceLock::new(),
        }
    }

    /// Span of arbitrary vectors, with the reduced echelon rows as basis.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let m = Matrix::from_rows(vectors.to_vec(), ambient_dim);
        let r = rref(&m);
        let basis = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        Self::from_independent(ambient_dim, basis)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_independent(ambient_dim, Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_independent(ambient_dim, Matrix::identity(ambient_dim).to_rows())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis, self.ambient_dim)
    }

    fn solver(&self) -> &Coordinates {
        self.solver.get_or_init(|| {
            let k = self.basis.len();
            let rows = rref(&Matrix::from_rows(self.basis.clone(), self.ambient_dim)).pivots;
            let square = Matrix::from_fn(k, k, |i, j| self.basis[j][rows[i]].clone());
            let inverse = inverse(&square).expect("basis vectors are independent");
            Coordinates { rows, inverse }
        })
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let s = self.solver();
        let restricted: Vec<Scalar> = s.rows.iter().map(|&r| v[r].clone()).collect();
        let c = s.inverse.mul_vec(&restricted);
        let mut back = vec![Scalar::zero(); self.ambient_dim];
        for (coef, b) in c.iter().zip(&self.basis) {
            if coef.is_zero() {
                continue;
            }
            for (acc, x) in back.iter_mut().zip(b) {
                if !x.is_zero() {
                    *acc += coef * x;
                }
            }
        }
        (back == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Linear combination of basis vectors with the given coefficients.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (acc, x) in out.iter_mut().zip(b) {
                *acc += c * x;
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }
}
