use std::sync::Arc;

use num_traits::Zero;

use super::hom::ModuleHom;
use super::module::{same_instance, FdLeftModule, FdModule, InstanceRef, LeftSide, ModuleSide};
use crate::algebra::{reweight, ReweightSpec};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_basis, quotient_space, Matrix, QuotientSpace, Subspace};
use crate::operated::GeneratorSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct QuotientModule<S: ModuleSide> {
    pub module: FdModule<S>,
    pub space: QuotientSpace,
    pub projection: ModuleHom<S>,
}

/// `M / N` for a subspace `N` closed under the action and every operator.
pub fn quotient_module<S: ModuleSide>(
    m: &FdModule<S>,
    n: &Subspace,
) -> Result<QuotientModule<S>> {
    if n.ambient_dim() != m.dim() {
        return Err(Error::InvalidArgument("subspace lives in a different space".into()));
    }
    let inst = m.instance();
    let labels = inst.algebra().basis_labels();
    let named = m
        .action()
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("action of {}", labels[i]), a))
        .chain(
            m.operators()
                .iter()
                .enumerate()
                .map(|(w, a)| (format!("operator {}", inst.omega()[w]), a)),
        );
    for (name, a) in named {
        if n.basis().iter().any(|v| !n.contains(&a.mul_vec(v))) {
            return Err(Error::ClosureViolation { generator: name });
        }
    }
    let space = quotient_space(m.dim(), n.basis());
    let p = space.project_matrix();
    let s = space.section_matrix();
    let induce = |a: &Matrix| p.mul(a).mul(&s);
    let module = FdModule::new(
        inst.clone(),
        space.dim(),
        m.action().iter().map(induce).collect(),
        m.operators().iter().map(induce).collect(),
    )?;
    let projection = ModuleHom::new_unchecked(m.clone(), module.clone(), p)?;
    Ok(QuotientModule {
        module,
        space,
        projection,
    })
}

/// Smallest subspace containing the seeds and closed under the action and
/// every operator.
pub fn generated_submodule<S: ModuleSide>(m: &FdModule<S>, seeds: &[Vec<Scalar>]) -> Subspace {
    let mut current = Subspace::span(m.dim(), seeds);
    loop {
        let mut vectors = current.basis().to_vec();
        for a in m.action().iter().chain(m.operators()) {
            for v in current.basis() {
                vectors.push(a.mul_vec(v));
            }
        }
        let next = Subspace::span(m.dim(), &vectors);
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

#[derive(Debug, Clone)]
pub struct DirectSum<S: ModuleSide> {
    pub module: FdModule<S>,
    pub inclusions: Vec<ModuleHom<S>>,
    pub projections: Vec<ModuleHom<S>>,
}

impl<S: ModuleSide> DirectSum<S> {
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.inclusions
            .iter()
            .map(|i| {
                let o = acc;
                acc += i.source().dim();
                o
            })
            .collect()
    }
}

/// Block-diagonal direct sum with its canonical inclusions and projections.
pub fn direct_sum<S: ModuleSide>(instance: &InstanceRef, parts: &[FdModule<S>]) -> Result<DirectSum<S>> {
    if parts.iter().any(|p| !same_instance(p.instance(), instance)) {
        return Err(Error::InstanceMismatch);
    }
    let dim: usize = parts.iter().map(|p| p.dim()).sum();
    let blocks = |pick: &dyn Fn(&FdModule<S>) -> &Matrix| {
        Matrix::block_diagonal(&parts.iter().map(pick).collect::<Vec<_>>())
    };
    let action = (0..instance.dim())
        .map(|i| blocks(&|p| p.action_matrix(i)))
        .collect();
    let operators = (0..instance.omega_len())
        .map(|w| blocks(&|p| p.operator(w)))
        .collect();
    let module = FdModule::new(instance.clone(), dim, action, operators)?;
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for p in parts {
        let mut inc = Matrix::zeros(dim, p.dim());
        inc.set_block(offset, 0, &Matrix::identity(p.dim()));
        projections.push(ModuleHom::new_unchecked(module.clone(), p.clone(), inc.transpose())?);
        inclusions.push(ModuleHom::new_unchecked(p.clone(), module.clone(), inc)?);
        offset += p.dim();
    }
    Ok(DirectSum {
        module,
        inclusions,
        projections,
    })
}

/// `⊕ψ_i: ⊕M_i -> ⊕N_i`.
pub fn direct_sum_hom<S: ModuleSide>(
    source: &DirectSum<S>,
    target: &DirectSum<S>,
    homs: &[ModuleHom<S>],
) -> Result<ModuleHom<S>> {
    let blocks: Vec<&Matrix> = homs.iter().map(|h| h.matrix()).collect();
    ModuleHom::new_unchecked(
        source.module.clone(),
        target.module.clone(),
        Matrix::block_diagonal(&blocks),
    )
}

/// `{m : m_ω(b_i m) = P_ω(b_i) m for all i, ω}`.
pub fn module_constants(m: &FdLeftModule) -> Subspace {
    let inst = m.instance();
    let mut parts = Vec::new();
    for w in 0..inst.omega_len() {
        for i in 0..inst.dim() {
            let pb = inst.apply(w, &inst.algebra().basis_vector(i));
            parts.push(m.operator(w).mul(m.action_matrix(i)).sub(&m.act_by(&pb)));
        }
    }
    nullspace_basis(&Matrix::vstack(&parts, m.dim()))
}

/// `R^X` with coordinatewise action and `P_ω` applied in each coordinate.
/// Coordinate `x * dim R + k` holds the `b_k` component of the `x` slot.
#[derive(Debug, Clone)]
pub struct RestrictedFree {
    pub generators: GeneratorSet,
    pub module: FdLeftModule,
}

pub fn restricted_free(instance: &InstanceRef, generators: &GeneratorSet) -> RestrictedFree {
    let n = generators.len();
    let regular = FdLeftModule::regular(instance.clone());
    let parts = vec![regular; n];
    let module = direct_sum(instance, &parts).expect("same instance").module;
    RestrictedFree {
        generators: generators.clone(),
        module,
    }
}

impl RestrictedFree {
    /// Coordinates of `r · x`.
    pub fn embed(&self, generator: usize, r: &[Scalar]) -> Vec<Scalar> {
        let d = self.module.instance().dim();
        let mut v = vec![Scalar::zero(); self.module.dim()];
        v[generator * d..(generator + 1) * d].clone_from_slice(r);
        v
    }

    /// Coordinates of the generator `x` itself, i.e. `1 · x`.
    pub fn generator_vector(&self, generator: usize) -> Vec<Scalar> {
        self.embed(generator, self.module.instance().algebra().unit())
    }
}

/// The unique homomorphism `Σ r_x x ↦ Σ r_x φ(x)`; every image must be a
/// module constant of the target.
pub fn restricted_lift(
    free: &RestrictedFree,
    images: &[Vec<Scalar>],
    target: &FdLeftModule,
) -> Result<ModuleHom<LeftSide>> {
    if images.len() != free.generators.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} generator images",
            free.generators.len()
        )));
    }
    if !same_instance(free.module.instance(), target.instance()) {
        return Err(Error::InstanceMismatch);
    }
    let mc = module_constants(target);
    let d = target.instance().dim();
    let mut columns = Vec::with_capacity(free.module.dim());
    for (x, img) in images.iter().enumerate() {
        if img.len() != target.dim() {
            return Err(Error::InvalidArgument("image has the wrong length".into()));
        }
        if !mc.contains(img) {
            return Err(Error::NotModuleConstant {
                generator: free.generators.names()[x].clone(),
            });
        }
        for k in 0..d {
            columns.push(target.action_matrix(k).mul_vec(img));
        }
    }
    let matrix = Matrix::from_columns(&columns, target.dim());
    ModuleHom::new(free.module.clone(), target.clone(), matrix)
}

/// The module over the recombined instance with `m̄_i = Σ a_{i,ω} m_ω`.
pub fn reweight_module<S: ModuleSide>(m: &FdModule<S>, spec: &ReweightSpec) -> Result<FdModule<S>> {
    let inst = m.instance();
    let coeffs = spec.coefficients(inst)?;
    let new_inst = Arc::new(reweight(inst, spec)?);
    let operators = coeffs
        .iter()
        .map(|row| {
            let mut acc = Matrix::zeros(m.dim(), m.dim());
            for (w, a) in row.iter().enumerate() {
                acc.add_scaled(m.operator(w), a);
            }
            acc
        })
        .collect();
    m.over(new_inst, operators)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub sum_kernel_dim: usize,
    pub component_kernel_dims: Vec<usize>,
    /// Every embedded component kernel lies in the kernel of the sum.
    pub components_contained: bool,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.components_contained
            && self.sum_kernel_dim == self.component_kernel_dims.iter().sum::<usize>()
    }
}

/// Compares `ker(⊕ψ_i)` with `⊕ker(ψ_i)`.
pub fn kernel_additivity<S: ModuleSide>(instance: &InstanceRef, homs: &[ModuleHom<S>]) -> Result<KernelReport> {
    let sources: Vec<FdModule<S>> = homs.iter().map(|h| h.source().clone()).collect();
    let targets: Vec<FdModule<S>> = homs.iter().map(|h| h.target().clone()).collect();
    let src = direct_sum(instance, &sources)?;
    let tgt = direct_sum(instance, &targets)?;
    let psi = direct_sum_hom(&src, &tgt, homs)?;
    let big = psi.kernel();
    let mut dims = Vec::with_capacity(homs.len());
    let mut contained = true;
    for (h, inc) in homs.iter().zip(&src.inclusions) {
        let k = h.kernel();
        dims.push(k.dim());
        contained &= k.basis().iter().all(|v| big.contains(&inc.apply(v)));
    }
    Ok(KernelReport {
        sum_kernel_dim: big.dim(),
        component_kernel_dims: dims,
        components_contained: contained,
    })
}
