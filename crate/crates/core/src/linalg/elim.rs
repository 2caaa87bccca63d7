use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::scalar::{bit_size, Scalar};

/// Reduced row echelon form together with the pivot column of each
/// nonzero row.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Among candidate rows for a pivot column the
/// entry with the smallest bit size is chosen.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[(i, c)].is_zero())
            .min_by_key(|&i| bit_size(&a[(i, c)]));
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = Scalar::one() / &a[(r, c)];
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let delta = &f * &a[(r, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn nullspace_basis(m: &Matrix) -> Subspace {
    let cols = m.cols();
    let Rref { matrix, pivots } = rref(m);
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = -matrix[(row, free)].clone();
        }
        basis.push(v);
    }
    Subspace::from_independent(cols, basis)
}

/// One solution of `m x = b`, with free variables set to zero.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let cols = m.cols();
    let mut aug = Matrix::zeros(m.rows(), cols + 1);
    aug.set_block(0, 0, m);
    for (i, x) in b.iter().enumerate() {
        aug[(i, cols)] = x.clone();
    }
    let Rref { matrix, pivots } = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = matrix[(row, cols)].clone();
    }
    Some(x)
}

/// Solves `x m = b` for a row vector `x`.
pub fn solve_left(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    solve(&m.transpose(), b)
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, &Matrix::identity(n));
    let Rref { matrix, pivots } = rref(&aug);
    if n > 0 && pivots.get(n - 1) != Some(&(n - 1)) {
        return None;
    }
    Some(matrix.block(0, n, n, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn mat(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&Matrix::identity(3)).dim(), 0);
        assert_eq!(nullspace_basis(&Matrix::zeros(2, 3)).dim(), 3);
        let ns = nullspace_basis(&mat(&[&[1, 1]]));
        assert_eq!(ns.basis(), &[vec![int(-1), int(1)]]);
        let m = mat(&[&[1, 1]]);
        assert!(m.mul_vec(&ns.basis()[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let x = solve(&m, &[int(3), int(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(3), int(6)]);
        assert!(solve(&m, &[int(1), int(1)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
        assert!(inverse(&Matrix::zeros(0, 0)).is_some());
    }
}
