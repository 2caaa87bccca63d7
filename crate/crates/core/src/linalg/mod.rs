//! Exact linear algebra over the rationals.

mod elim;
mod matrix;
mod quotient;
mod subspace;

pub use elim::{inverse, nullspace_basis, rank, rref, solve, solve_left, Rref};
pub use matrix::Matrix;
pub use quotient::{quotient_space, to_sparse, QuotientSpace, SparseEchelon, SparseVec};
pub use subspace::Subspace;
