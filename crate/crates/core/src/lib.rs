//! Exact computations with multiple Rota-Baxter algebras, their modules,
//! the operator ring, Hom spaces and tensor products.

pub mod error;
pub mod lincomb;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub mod algebra;
pub mod catalog;
pub mod modules;
pub mod operated;
pub mod opring;
pub mod tensor;
pub mod expr;
pub mod io;
