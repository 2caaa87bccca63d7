use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, to_sparse, Matrix, QuotientSpace, SparseVec};
use crate::modules::{
    same_instance, FdBimodule, FdLeftModule, FdModule, FdRightModule, LeftModuleHom, ModuleSide,
    RightModuleHom,
};
use crate::scalar::Scalar;

/// `M ⊗ N` for a right module `M` and a left module `N` over the same
/// instance, as the quotient of `M ⊗_k N` by
/// `mr ⊗ n - m ⊗ rn` and `m_ω(m) ⊗ n - m ⊗ n_ω(n)`.
/// Ambient index of `v_p ⊗ w_q` is `p * dim N + q`.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    left: FdRightModule,
    right: FdLeftModule,
    quotient: QuotientSpace,
}

/// Relation vectors of one family, one per basis pair.
fn family(a: &Matrix, b: &Matrix) -> Vec<SparseVec> {
    let diff = a.kron(&Matrix::identity(b.rows())).sub(&Matrix::identity(a.rows()).kron(b));
    (0..diff.cols())
        .map(|c| to_sparse(&diff.column(c)))
        .filter(|v| !v.is_empty())
        .collect()
}

impl TensorSpace {
    pub fn new(left: &FdRightModule, right: &FdLeftModule) -> Result<Self> {
        if !same_instance(left.instance(), right.instance()) {
            return Err(Error::InstanceMismatch);
        }
        let mut relations = Vec::new();
        for (a, b) in left.action().iter().zip(right.action()) {
            relations.extend(family(a, b));
        }
        for (a, b) in left.operators().iter().zip(right.operators()) {
            relations.extend(family(a, b));
        }
        let quotient = QuotientSpace::new(left.dim() * right.dim(), relations);
        Ok(Self {
            left: left.clone(),
            right: right.clone(),
            quotient,
        })
    }

    pub fn left(&self) -> &FdRightModule {
        &self.left
    }

    pub fn right(&self) -> &FdLeftModule {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    /// `(p, q)` pairs whose pure tensors form the chosen quotient basis.
    pub fn representative_pairs(&self) -> Vec<(usize, usize)> {
        let b = self.right.dim();
        self.quotient
            .representatives()
            .iter()
            .map(|&i| (i / b, i % b))
            .collect()
    }

    /// `ζ(m, n)`: the class of `m ⊗ n`.
    pub fn zeta(&self, m: &[Scalar], n: &[Scalar]) -> Vec<Scalar> {
        let mut v = SparseVec::new();
        let b = self.right.dim();
        for (p, x) in m.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in n.iter().enumerate() {
                if !y.is_zero() {
                    v.insert(p * b + q, x * y);
                }
            }
        }
        self.quotient.project_sparse(v)
    }

    /// Class of an ambient vector.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.quotient.project(v)
    }

    /// Matrix of an ambient linear map `ambient(self) -> ambient(target)`
    /// on the quotients, provided it maps relations into relations.
    pub fn descend(&self, target: &TensorSpace, ambient: &Matrix) -> Result<Matrix> {
        descend(&self.quotient, &target.quotient, ambient)
    }

    /// All four relation families evaluated through `ζ` on basis elements.
    pub fn bilinearity_report(&self) -> BilinearityReport {
        let (a, b) = (self.left.dim(), self.right.dim());
        let inst = self.left.instance();
        let basis = |n: usize, i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        let mut report = BilinearityReport::default();
        let mut record = |name: &'static str, v: Vec<Scalar>| {
            report.checked += 1;
            if v.iter().any(|x| !x.is_zero()) {
                report.failures.push(name);
            }
        };
        for p in 0..a {
            for q in 0..b {
                let (m, n) = (basis(a, p), basis(b, q));
                for p2 in 0..a {
                    let m2 = basis(a, p2);
                    let sum: Vec<Scalar> = m.iter().zip(&m2).map(|(x, y)| x + y).collect();
                    let lhs = self.zeta(&sum, &n);
                    let rhs1 = self.zeta(&m, &n);
                    let rhs2 = self.zeta(&m2, &n);
                    record(
                        "additive in the left factor",
                        lhs.iter().zip(&rhs1).zip(&rhs2).map(|((x, y), z)| x - y - z).collect(),
                    );
                }
                for q2 in 0..b {
                    let n2 = basis(b, q2);
                    let sum: Vec<Scalar> = n.iter().zip(&n2).map(|(x, y)| x + y).collect();
                    let lhs = self.zeta(&m, &sum);
                    let rhs1 = self.zeta(&m, &n);
                    let rhs2 = self.zeta(&m, &n2);
                    record(
                        "additive in the right factor",
                        lhs.iter().zip(&rhs1).zip(&rhs2).map(|((x, y), z)| x - y - z).collect(),
                    );
                }
                for i in 0..inst.dim() {
                    let mr = self.left.action_matrix(i).mul_vec(&m);
                    let rn = self.right.action_matrix(i).mul_vec(&n);
                    let x = self.zeta(&mr, &n);
                    let y = self.zeta(&m, &rn);
                    record("balanced action", x.iter().zip(&y).map(|(s, t)| s - t).collect());
                }
                for w in 0..inst.omega_len() {
                    let mm = self.left.operator(w).mul_vec(&m);
                    let nn = self.right.operator(w).mul_vec(&n);
                    let x = self.zeta(&mm, &n);
                    let y = self.zeta(&m, &nn);
                    record("balanced operators", x.iter().zip(&y).map(|(s, t)| s - t).collect());
                }
            }
        }
        report
    }
}

pub fn tensor_product(m: &FdRightModule, n: &FdLeftModule) -> Result<TensorSpace> {
    TensorSpace::new(m, n)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilinearityReport {
    pub checked: usize,
    pub failures: Vec<&'static str>,
}

impl BilinearityReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(crate) fn descend(source: &QuotientSpace, target: &QuotientSpace, ambient: &Matrix) -> Result<Matrix> {
    assert_eq!(ambient.cols(), source.ambient_dim());
    assert_eq!(ambient.rows(), target.ambient_dim());
    let relations: Vec<SparseVec> = {
        // Rebuild relation generators from the echelon basis of the source.
        let p = source.project_matrix();
        let s = source.section_matrix();
        let back = s.mul(&p);
        (0..source.ambient_dim())
            .map(|i| {
                let mut col = back.column(i);
                col[i] -= Scalar::one();
                to_sparse(&col)
            })
            .filter(|v| !v.is_empty())
            .collect()
    };
    for r in relations {
        let mut dense = vec![Scalar::zero(); source.ambient_dim()];
        for (k, x) in r {
            dense[k] = x;
        }
        if !target.is_zero_class(&ambient.mul_vec(&dense)) {
            return Err(Error::NotWellDefined("a relation maps outside the target relations".into()));
        }
    }
    Ok(target.project_matrix().mul(ambient).mul(&source.section_matrix()))
}

/// `id_M ⊗ θ` for a left module map `θ: N -> N'`.
pub fn induced_map_right(source: &TensorSpace, target: &TensorSpace, theta: &LeftModuleHom) -> Result<Matrix> {
    if source.left != target.left || theta.source() != &source.right || theta.target() != &target.right {
        return Err(Error::InvalidArgument("tensor spaces do not match the map".into()));
    }
    let ambient = Matrix::identity(source.left.dim()).kron(theta.matrix());
    source.descend(target, &ambient)
}

/// `θ ⊗ id_N` for a right module map `θ: M -> M'`.
pub fn induced_map_left(source: &TensorSpace, target: &TensorSpace, theta: &RightModuleHom) -> Result<Matrix> {
    if source.right != target.right || theta.source() != &source.left || theta.target() != &target.left {
        return Err(Error::InvalidArgument("tensor spaces do not match the map".into()));
    }
    let ambient = theta.matrix().kron(&Matrix::identity(source.right.dim()));
    source.descend(target, &ambient)
}

fn structure<S: ModuleSide>(
    t: &TensorSpace,
    instance: &crate::modules::InstanceRef,
    action: Vec<Matrix>,
    operators: Vec<Matrix>,
) -> Result<FdModule<S>> {
    let lower = |m: &Matrix| t.descend(t, m);
    let action = action.iter().map(lower).collect::<Result<Vec<_>>>()?;
    let operators = operators.iter().map(lower).collect::<Result<Vec<_>>>()?;
    FdModule::new(instance.clone(), t.dim(), action, operators)
}

/// Left module structure on `M ⊗ N` from a bimodule `M` whose right side is
/// the left factor of `t`: `r'(m ⊗ n) = r'm ⊗ n`, `q_ω(m ⊗ n) = m_ω(m) ⊗ n`.
pub fn tensor_left_structure(m: &FdBimodule, t: &TensorSpace) -> Result<FdLeftModule> {
    m.require_valid()?;
    if m.right() != t.left() {
        return Err(Error::InvalidArgument("bimodule is not the left factor".into()));
    }
    let id = Matrix::identity(t.right().dim());
    structure(
        t,
        m.left().instance(),
        m.left().action().iter().map(|a| a.kron(&id)).collect(),
        m.left().operators().iter().map(|a| a.kron(&id)).collect(),
    )
}

/// Right module structure on `M ⊗ N` from a bimodule `N` whose left side is
/// the right factor of `t`.
pub fn tensor_right_structure(t: &TensorSpace, n: &FdBimodule) -> Result<FdRightModule> {
    n.require_valid()?;
    if n.left() != t.right() {
        return Err(Error::InvalidArgument("bimodule is not the right factor".into()));
    }
    let id = Matrix::identity(t.left().dim());
    structure(
        t,
        n.right().instance(),
        n.right().action().iter().map(|a| id.kron(a)).collect(),
        n.right().operators().iter().map(|a| id.kron(a)).collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitReport {
    pub module_dim: usize,
    pub tensor_dim: usize,
    /// Whether `m ⊗ r ↦ mr` kills every relation.
    pub well_defined: bool,
    pub map_rank: Option<usize>,
    pub isomorphism: bool,
}

/// Compares `M ⊗ R` with `M` through `m ⊗ r ↦ mr`.
pub fn tensor_unit_check(m: &FdRightModule) -> Result<UnitReport> {
    let inst = m.instance();
    let regular = FdLeftModule::regular(inst.clone());
    let t = TensorSpace::new(m, &regular)?;
    let d = inst.dim();
    let columns: Vec<Vec<Scalar>> = (0..m.dim() * d)
        .map(|idx| m.action_matrix(idx % d).column(idx / d))
        .collect();
    let ambient = Matrix::from_columns(&columns, m.dim());
    let target = QuotientSpace::new(m.dim(), std::iter::empty());
    let (well_defined, map_rank) = match descend(t.quotient(), &target, &ambient) {
        Ok(map) => (true, Some(rank(&map))),
        Err(_) => (false, None),
    };
    let isomorphism = well_defined && t.dim() == m.dim() && map_rank == Some(m.dim());
    Ok(UnitReport {
        module_dim: m.dim(),
        tensor_dim: t.dim(),
        well_defined,
        map_rank,
        isomorphism,
    })
}
