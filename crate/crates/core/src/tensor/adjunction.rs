use super::space::{tensor_right_structure, TensorSpace};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::modules::{hom_module, hom_space, FdBimodule, FdRightModule, HomModule, HomModuleInput};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `dim Hom(M ⊗ S, T)`.
    pub tensor_side_dim: usize,
    /// `dim Hom(M, Hom(S, T))`.
    pub hom_side_dim: usize,
    /// `θ` in coordinates of the two Hom-space bases.
    pub theta: Matrix,
    pub theta_prime: Matrix,
    pub theta_after_theta_prime_is_identity: bool,
    pub theta_prime_after_theta_is_identity: bool,
}

impl AdjunctionReport {
    pub fn is_isomorphism(&self) -> bool {
        self.tensor_side_dim == self.hom_side_dim
            && self.theta_after_theta_prime_is_identity
            && self.theta_prime_after_theta_is_identity
    }
}

fn coords(space: &Subspace, m: &Matrix, what: &str) -> Result<Vec<Scalar>> {
    space
        .coordinates(&m.to_vec())
        .ok_or_else(|| Error::Hypothesis(format!("{what} is not a module homomorphism")))
}

/// For `M` a right module, `S` a bimodule whose left side acts over the
/// instance of `M`, and `T` a right module over the right instance of `S`,
/// builds `θ(f)(m)(s) = f(m ⊗ s)` and its inverse candidate
/// `θ'(g)(m ⊗ s) = g(m)(s)` and compares them.
pub fn adjunction_check(m: &FdRightModule, s: &FdBimodule, t: &FdRightModule) -> Result<AdjunctionReport> {
    let tensor = TensorSpace::new(m, s.left())?;
    let ms = tensor_right_structure(&tensor, s)?;
    let lhs = hom_space(&ms, t)?;
    let inner = hom_module(HomModuleInput::D { m: s, n: t })?;
    let HomModule::Right(h) = &inner.module else {
        unreachable!("variant D yields a right module")
    };
    let rhs = hom_space(m, h)?;
    let (dm, ds, dt, dh) = (m.dim(), s.dim(), t.dim(), h.dim());
    let project = tensor.quotient().project_matrix();

    let mut theta_cols = Vec::with_capacity(lhs.dim());
    for f in lhs.basis() {
        let f = Matrix::from_vec(dt, tensor.dim(), f.clone());
        let fp = f.mul(&project);
        let mut g = Matrix::zeros(dh, dm);
        for p in 0..dm {
            // s ↦ f(v_p ⊗ s)
            let fs = fp.block(0, p * ds, dt, ds);
            let c = coords(&inner.space, &fs, "θ(f)(m)")?;
            for (k, x) in c.into_iter().enumerate() {
                g[(k, p)] = x;
            }
        }
        theta_cols.push(coords(&rhs, &g, "θ(f)")?);
    }
    let theta = Matrix::from_columns(&theta_cols, rhs.dim());

    let mut prime_cols = Vec::with_capacity(rhs.dim());
    for g in rhs.basis() {
        let g = Matrix::from_vec(dh, dm, g.clone());
        let mut f = Matrix::zeros(dt, tensor.dim());
        for (col, (p, q)) in tensor.representative_pairs().into_iter().enumerate() {
            let phi = inner.space.combine(&g.column(p));
            let phi = Matrix::from_vec(dt, ds, phi);
            for r in 0..dt {
                f[(r, col)] = phi[(r, q)].clone();
            }
        }
        prime_cols.push(coords(&lhs, &f, "θ'(g)")?);
    }
    let theta_prime = Matrix::from_columns(&prime_cols, lhs.dim());

    Ok(AdjunctionReport {
        tensor_side_dim: lhs.dim(),
        hom_side_dim: rhs.dim(),
        theta_after_theta_prime_is_identity: theta.mul(&theta_prime).is_identity(),
        theta_prime_after_theta_is_identity: theta_prime.mul(&theta).is_identity(),
        theta,
        theta_prime,
    })
}
