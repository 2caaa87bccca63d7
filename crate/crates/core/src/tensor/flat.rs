use super::space::{induced_map_left, induced_map_right, TensorSpace};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_basis, rank, Matrix};
use crate::modules::{
    direct_sum, lift_through_epi, module_constants, restricted_free, restricted_lift, FdLeftModule,
    FdModule, FdRightModule, InstanceRef, LeftModuleHom, ModuleHom, ModuleSide, RightModuleHom,
};
use crate::operated::GeneratorSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub probe: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub tensor_source_dim: usize,
    pub tensor_target_dim: usize,
    pub induced_rank: usize,
    pub preserved: bool,
    /// A nonzero class killed by the induced map, when broken.
    pub witness: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlatnessReport {
    pub probes: Vec<ProbeResult>,
}

impl FlatnessReport {
    pub fn all_preserved(&self) -> bool {
        self.probes.iter().all(|p| p.preserved)
    }
}

fn result(name: &str, source_dim: usize, target_dim: usize, t1: &TensorSpace, t2: &TensorSpace, map: &Matrix) -> ProbeResult {
    let r = rank(map);
    let preserved = r == t1.dim();
    let witness = (!preserved).then(|| nullspace_basis(map).basis()[0].clone());
    ProbeResult {
        probe: name.to_string(),
        source_dim,
        target_dim,
        tensor_source_dim: t1.dim(),
        tensor_target_dim: t2.dim(),
        induced_rank: r,
        preserved,
        witness,
    }
}

fn require_injective<S: ModuleSide>(i: &ModuleHom<S>) -> Result<()> {
    if i.is_injective() {
        Ok(())
    } else {
        Err(Error::NotInjective)
    }
}

/// For each injection `i: N -> N'` of left modules, whether
/// `id_M ⊗ i: M ⊗ N -> M ⊗ N'` stays injective.
pub fn flatness_probe(m: &FdRightModule, injections: &[(String, LeftModuleHom)]) -> Result<FlatnessReport> {
    let mut report = FlatnessReport::default();
    for (name, i) in injections {
        require_injective(i)?;
        let t1 = TensorSpace::new(m, i.source())?;
        let t2 = TensorSpace::new(m, i.target())?;
        let map = induced_map_right(&t1, &t2, i)?;
        report.probes.push(result(name, i.source().dim(), i.target().dim(), &t1, &t2, &map));
    }
    Ok(report)
}

/// For each injection `i: A -> A'` of right modules, whether
/// `i ⊗ id_P: A ⊗ P -> A' ⊗ P` stays injective.
pub fn flatness_probe_left(p: &FdLeftModule, injections: &[(String, RightModuleHom)]) -> Result<FlatnessReport> {
    let mut report = FlatnessReport::default();
    for (name, i) in injections {
        require_injective(i)?;
        let t1 = TensorSpace::new(i.source(), p)?;
        let t2 = TensorSpace::new(i.target(), p)?;
        let map = induced_map_left(&t1, &t2, i)?;
        report.probes.push(result(name, i.source().dim(), i.target().dim(), &t1, &t2, &map));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumTensorReport {
    pub total_dim: usize,
    pub part_dims: Vec<usize>,
    pub f1_after_f2_is_identity: bool,
    pub f2_after_f1_is_identity: bool,
}

impl DirectSumTensorReport {
    pub fn dims_add(&self) -> bool {
        self.total_dim == self.part_dims.iter().sum::<usize>()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.dims_add() && self.f1_after_f2_is_identity && self.f2_after_f1_is_identity
    }
}

/// Compares `S ⊗ (⊕M_i)` with `⊕(S ⊗ M_i)` through
/// `f1: s ⊗ (m_i) ↦ (s ⊗ m_i)` and `f2: s ⊗ m_i ↦ s ⊗ ι_i(m_i)`.
pub fn direct_sum_tensor_check(s: &FdRightModule, parts: &[FdLeftModule]) -> Result<DirectSumTensorReport> {
    let inst = s.instance();
    let sum = direct_sum(inst, parts)?;
    let total = TensorSpace::new(s, &sum.module)?;
    let pieces = parts
        .iter()
        .map(|p| TensorSpace::new(s, p))
        .collect::<Result<Vec<_>>>()?;
    let part_dims: Vec<usize> = pieces.iter().map(TensorSpace::dim).collect();
    let dim_sum: usize = part_dims.iter().sum();
    let offsets = sum.offsets();
    let big = sum.module.dim();

    // f1 on the quotients, built summand by summand.
    let mut f1 = Matrix::zeros(dim_sum, total.dim());
    let mut f2 = Matrix::zeros(total.dim(), dim_sum);
    let mut row = 0;
    for ((piece, part), &off) in pieces.iter().zip(parts).zip(&offsets) {
        let n = part.dim();
        let mut amb1 = Matrix::zeros(piece.ambient_dim(), total.ambient_dim());
        let mut amb2 = Matrix::zeros(total.ambient_dim(), piece.ambient_dim());
        for p in 0..s.dim() {
            for q in 0..n {
                amb1[(p * n + q, p * big + off + q)] = Scalar::from_integer(1.into());
                amb2[(p * big + off + q, p * n + q)] = Scalar::from_integer(1.into());
            }
        }
        let block1 = total.descend(piece, &amb1)?;
        let block2 = piece.descend(&total, &amb2)?;
        f1.set_block(row, 0, &block1);
        f2.set_block(0, row, &block2);
        row += piece.dim();
    }
    Ok(DirectSumTensorReport {
        total_dim: total.dim(),
        part_dims,
        f1_after_f2_is_identity: f1.mul(&f2).is_identity(),
        f2_after_f1_is_identity: f2.mul(&f1).is_identity(),
    })
}

/// Submodules of the regular module spanned by a subset of basis vectors
/// that is closed under the action and the operators, listed by subset.
pub fn basis_submodules<S: ModuleSide>(instance: &InstanceRef) -> Vec<(Vec<usize>, ModuleHom<S>)> {
    let regular = FdModule::<S>::regular(instance.clone());
    let d = instance.dim();
    let mut out = Vec::new();
    for mask in 1u32..(1 << d) - 1 {
        let subset: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let closed = regular
            .action()
            .iter()
            .chain(regular.operators())
            .all(|a| {
                subset.iter().all(|&c| {
                    (0..d).all(|r| subset.contains(&r) || num_traits::Zero::is_zero(&a[(r, c)]))
                })
            });
        if !closed {
            continue;
        }
        let restrict = |a: &Matrix| Matrix::from_fn(subset.len(), subset.len(), |i, j| a[(subset[i], subset[j])].clone());
        let sub = FdModule::<S>::new(
            instance.clone(),
            subset.len(),
            regular.action().iter().map(restrict).collect(),
            regular.operators().iter().map(restrict).collect(),
        )
        .expect("restricted shapes");
        let inc = Matrix::from_fn(d, subset.len(), |r, j| {
            if subset[j] == r {
                Scalar::from_integer(1.into())
            } else {
                Scalar::from_integer(0.into())
            }
        });
        let hom = ModuleHom::new(sub, regular.clone(), inc).expect("inclusion of a closed span");
        out.push((subset, hom));
    }
    out
}

/// The standard probe set: closed basis-span submodules of the regular
/// module, the zero submodule, and the first-summand and diagonal
/// inclusions of the regular module into two copies of itself.
pub fn catalog_injections<S: ModuleSide>(instance: &InstanceRef) -> Vec<(String, ModuleHom<S>)> {
    let labels = instance.algebra().basis_labels();
    let regular = FdModule::<S>::regular(instance.clone());
    let mut out = Vec::new();
    let zero = FdModule::<S>::zero(instance.clone());
    out.push((
        "zero into regular".to_string(),
        ModuleHom::zero(&zero, &regular).expect("zero map"),
    ));
    for (subset, hom) in basis_submodules::<S>(instance) {
        let names: Vec<&str> = subset.iter().map(|&i| labels[i].as_str()).collect();
        out.push((format!("span{{{}}} into regular", names.join(",")), hom));
    }
    let double = direct_sum(instance, &[regular.clone(), regular.clone()]).expect("same instance");
    out.push(("regular into first summand".to_string(), double.inclusions[0].clone()));
    let d = instance.dim();
    let diag = Matrix::vstack(&[Matrix::identity(d), Matrix::identity(d)], d);
    out.push((
        "regular diagonally".to_string(),
        ModuleHom::new(regular, double.module, diag).expect("diagonal is a homomorphism"),
    ));
    out
}

#[derive(Debug, Clone)]
pub struct SplittingProbe {
    /// Epimorphism from the restricted free module on a basis of `MC(P)`.
    pub epi: Option<LeftModuleHom>,
    /// A section of the epimorphism, when one exists.
    pub section: Option<LeftModuleHom>,
}

impl SplittingProbe {
    pub fn splits(&self) -> bool {
        self.section.is_some()
    }
}

/// Maps the restricted free module on a basis of the module constants onto
/// `P` and tries to lift `id_P` through it.
pub fn splitting_probe(p: &FdLeftModule) -> Result<SplittingProbe> {
    let mc = module_constants(p);
    let names = (1..=mc.dim()).map(|i| format!("x{i}")).collect();
    let free = restricted_free(p.instance(), &GeneratorSet::new(names)?);
    let epi = restricted_lift(&free, mc.basis(), p)?;
    if !epi.is_surjective() {
        return Ok(SplittingProbe {
            epi: None,
            section: None,
        });
    }
    let section = lift_through_epi(&epi, &ModuleHom::identity(p))?;
    Ok(SplittingProbe {
        epi: Some(epi),
        section,
    })
}
