use num_traits::Zero;

use super::module::{same_instance, FdBimodule, FdLeftModule, FdModule, FdRightModule, InstanceRef, ModuleSide};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_basis, rank, solve, Matrix, Subspace};
use crate::scalar::Scalar;

/// A module homomorphism stored as a `dim(target) × dim(source)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleHom<S: ModuleSide> {
    source: FdModule<S>,
    target: FdModule<S>,
    matrix: Matrix,
}

impl<S: ModuleSide> ModuleHom<S> {
    /// Checks shapes and that the matrix intertwines actions and operators.
    pub fn new(source: FdModule<S>, target: FdModule<S>, matrix: Matrix) -> Result<Self> {
        let hom = Self::new_unchecked(source, target, matrix)?;
        if !hom.intertwines() {
            return Err(Error::Hypothesis(
                "matrix does not commute with the module structure".into(),
            ));
        }
        Ok(hom)
    }

    /// Checks shapes and instances only.
    pub fn new_unchecked(source: FdModule<S>, target: FdModule<S>, matrix: Matrix) -> Result<Self> {
        if !same_instance(source.instance(), target.instance()) {
            return Err(Error::InstanceMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Malformed(format!(
                "homomorphism matrix must be {}x{}",
                target.dim(),
                source.dim()
            )));
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &FdModule<S>) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.dim()),
        }
    }

    pub fn zero(source: &FdModule<S>, target: &FdModule<S>) -> Result<Self> {
        Self::new_unchecked(source.clone(), target.clone(), Matrix::zeros(target.dim(), source.dim()))
    }

    pub fn source(&self) -> &FdModule<S> {
        &self.source
    }

    pub fn target(&self) -> &FdModule<S> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn intertwines(&self) -> bool {
        let f = &self.matrix;
        self.source
            .action()
            .iter()
            .zip(self.target.action())
            .chain(self.source.operators().iter().zip(self.target.operators()))
            .all(|(a, b)| f.mul(a) == b.mul(f))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHom<S>) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::InvalidArgument("composition of non-adjacent maps".into()));
        }
        Ok(Self {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn add(&self, other: &ModuleHom<S>) -> Result<Self> {
        if other.source != self.source || other.target != self.target {
            return Err(Error::InvalidArgument("sum of maps with different ends".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn kernel(&self) -> Subspace {
        nullspace_basis(&self.matrix)
    }
}

pub type LeftModuleHom = ModuleHom<super::module::LeftSide>;
pub type RightModuleHom = ModuleHom<super::module::RightSide>;

/// All `n × m` matrices `f` with `f A = B f` for every listed pair `(A, B)`,
/// as row-major vectors.
pub fn intertwiner_space(m: usize, n: usize, pairs: &[(&Matrix, &Matrix)]) -> Subspace {
    let unknowns = n * m;
    let mut rows = Vec::with_capacity(pairs.len() * unknowns);
    for (a, b) in pairs {
        for r in 0..n {
            for c in 0..m {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..m {
                    let x = &a[(k, c)];
                    if !x.is_zero() {
                        row[r * m + k] += x;
                    }
                }
                for k in 0..n {
                    let x = &b[(r, k)];
                    if !x.is_zero() {
                        row[k * m + c] -= x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    nullspace_basis(&Matrix::from_rows(rows, unknowns))
}

/// Homomorphisms `M -> N` as a subspace of row-major `dim N × dim M`
/// matrices.
pub fn hom_space<S: ModuleSide>(m: &FdModule<S>, n: &FdModule<S>) -> Result<Subspace> {
    if !same_instance(m.instance(), n.instance()) {
        return Err(Error::InstanceMismatch);
    }
    let pairs: Vec<(&Matrix, &Matrix)> = m
        .action()
        .iter()
        .zip(n.action())
        .chain(m.operators().iter().zip(n.operators()))
        .collect();
    Ok(intertwiner_space(m.dim(), n.dim(), &pairs))
}

/// Unpacks a basis vector of [`hom_space`] into a homomorphism.
pub fn hom_from_vector<S: ModuleSide>(
    m: &FdModule<S>,
    n: &FdModule<S>,
    v: &[Scalar],
) -> Result<ModuleHom<S>> {
    ModuleHom::new_unchecked(m.clone(), n.clone(), Matrix::from_vec(n.dim(), m.dim(), v.to_vec()))
}

/// Finds `ψ: S -> M` with `θ ∘ ψ = φ` inside the homomorphism space, or
/// `None` when no such module map exists.
pub fn lift_through_epi<S: ModuleSide>(
    theta: &ModuleHom<S>,
    phi: &ModuleHom<S>,
) -> Result<Option<ModuleHom<S>>> {
    if theta.target() != phi.target() {
        return Err(Error::InvalidArgument("maps have different targets".into()));
    }
    if !theta.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let (s, m) = (phi.source(), theta.source());
    let space = hom_space(s, m)?;
    let columns: Vec<Vec<Scalar>> = space
        .basis()
        .iter()
        .map(|v| {
            let h = Matrix::from_vec(m.dim(), s.dim(), v.clone());
            theta.matrix().mul(&h).to_vec()
        })
        .collect();
    let target = phi.matrix().to_vec();
    let system = Matrix::from_columns(&columns, target.len());
    let Some(coeffs) = solve(&system, &target) else {
        return Ok(None);
    };
    let lift = space.combine(&coeffs);
    Ok(Some(hom_from_vector(s, m, &lift)?))
}

/// Which side of the Hom space carries the induced structure, with the
/// modules it is built from.
#[derive(Debug, Clone, Copy)]
pub enum HomModuleInput<'a> {
    /// `M` right, `N` a bimodule whose right side matches `M`; result is a
    /// left module over the left instance of `N`.
    A { m: &'a FdRightModule, n: &'a FdBimodule },
    /// `M` left, `N` a bimodule whose left side matches `M`; result is a
    /// right module over the right instance of `N`.
    B { m: &'a FdLeftModule, n: &'a FdBimodule },
    /// `M` a bimodule whose left side matches `N`; result is a left module
    /// over the right instance of `M`.
    C { m: &'a FdBimodule, n: &'a FdLeftModule },
    /// `M` a bimodule whose right side matches `N`; result is a right
    /// module over the left instance of `M`.
    D { m: &'a FdBimodule, n: &'a FdRightModule },
}

#[derive(Debug, Clone, PartialEq)]
pub enum HomModule {
    Left(FdLeftModule),
    Right(FdRightModule),
}

impl HomModule {
    pub fn dim(&self) -> usize {
        match self {
            HomModule::Left(m) => m.dim(),
            HomModule::Right(m) => m.dim(),
        }
    }

    pub fn report(&self) -> super::module::ModuleReport {
        match self {
            HomModule::Left(m) => m.check(),
            HomModule::Right(m) => m.check(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HomModuleResult {
    /// Row-major `rows × cols` matrices spanning the Hom space.
    pub space: Subspace,
    pub rows: usize,
    pub cols: usize,
    pub module: HomModule,
}

enum Compose<'a> {
    /// `φ ↦ T ∘ φ`
    Post(&'a Matrix),
    /// `φ ↦ φ ∘ T`
    Pre(&'a Matrix),
}

fn induced_matrices(
    space: &Subspace,
    rows: usize,
    cols: usize,
    maps: &[Compose<'_>],
) -> Result<Vec<Matrix>> {
    let h = space.dim();
    maps.iter()
        .map(|t| {
            let columns = space
                .basis()
                .iter()
                .map(|v| {
                    let phi = Matrix::from_vec(rows, cols, v.clone());
                    let image = match t {
                        Compose::Post(m) => m.mul(&phi),
                        Compose::Pre(m) => phi.mul(m),
                    };
                    space.coordinates(&image.to_vec()).ok_or_else(|| {
                        Error::Hypothesis("induced map leaves the Hom space".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(&columns, h))
        })
        .collect()
}

fn require<S: ModuleSide>(m: &FdModule<S>, name: &str) -> Result<()> {
    if m.check().is_empty() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{name} fails the module checker")))
    }
}

fn build<S: ModuleSide>(
    instance: &InstanceRef,
    space: Subspace,
    rows: usize,
    cols: usize,
    action: &[Matrix],
    operators: &[Matrix],
    post: bool,
) -> Result<(Subspace, FdModule<S>)> {
    fn wrap(ms: &[Matrix], post: bool) -> Vec<Compose<'_>> {
        ms.iter()
            .map(|m| if post { Compose::Post(m) } else { Compose::Pre(m) })
            .collect()
    }
    let act = induced_matrices(&space, rows, cols, &wrap(action, post))?;
    let ops = induced_matrices(&space, rows, cols, &wrap(operators, post))?;
    let module = FdModule::new(instance.clone(), space.dim(), act, ops)?;
    Ok((space, module))
}

/// The Hom space with the structure induced from the bimodule argument.
pub fn hom_module(input: HomModuleInput<'_>) -> Result<HomModuleResult> {
    match input {
        HomModuleInput::A { m, n } => {
            require(m, "M")?;
            n.require_valid()?;
            let space = hom_space(m, n.right())?;
            let (rows, cols) = (n.dim(), m.dim());
            let (space, module) = build(
                n.left().instance(),
                space,
                rows,
                cols,
                n.left().action(),
                n.left().operators(),
                true,
            )?;
            Ok(HomModuleResult { space, rows, cols, module: HomModule::Left(module) })
        }
        HomModuleInput::B { m, n } => {
            require(m, "M")?;
            n.require_valid()?;
            let space = hom_space(m, n.left())?;
            let (rows, cols) = (n.dim(), m.dim());
            let (space, module) = build(
                n.right().instance(),
                space,
                rows,
                cols,
                n.right().action(),
                n.right().operators(),
                true,
            )?;
            Ok(HomModuleResult { space, rows, cols, module: HomModule::Right(module) })
        }
        HomModuleInput::C { m, n } => {
            require(n, "N")?;
            m.require_valid()?;
            let space = hom_space(m.left(), n)?;
            let (rows, cols) = (n.dim(), m.dim());
            let (space, module) = build(
                m.right().instance(),
                space,
                rows,
                cols,
                m.right().action(),
                m.right().operators(),
                false,
            )?;
            Ok(HomModuleResult { space, rows, cols, module: HomModule::Left(module) })
        }
        HomModuleInput::D { m, n } => {
            require(n, "N")?;
            m.require_valid()?;
            let space = hom_space(m.right(), n)?;
            let (rows, cols) = (n.dim(), m.dim());
            let (space, module) = build(
                m.left().instance(),
                space,
                rows,
                cols,
                m.left().action(),
                m.left().operators(),
                false,
            )?;
            Ok(HomModuleResult { space, rows, cols, module: HomModule::Right(module) })
        }
    }
}
