use std::marker::PhantomData;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{MrbAlgebraInstance, Side};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type InstanceRef = Arc<MrbAlgebraInstance>;

/// Marker for the side a module is acted on from.
pub trait ModuleSide: Clone + std::fmt::Debug + Send + Sync + 'static {
    const SIDE: Side;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeftSide;
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RightSide;

impl ModuleSide for LeftSide {
    const SIDE: Side = Side::Left;
}

impl ModuleSide for RightSide {
    const SIDE: Side = Side::Right;
}

/// A finite-dimensional module over an instance. `action[i]` is the matrix
/// of the basis element `b_i` acting on column coordinate vectors, and
/// `operators[ω]` the matrix of `m_ω`, in the label order of the instance.
#[derive(Debug, Clone)]
pub struct FdModule<S: ModuleSide> {
    instance: InstanceRef,
    dim: usize,
    action: Vec<Matrix>,
    operators: Vec<Matrix>,
    side: PhantomData<S>,
}

pub type FdLeftModule = FdModule<LeftSide>;
pub type FdRightModule = FdModule<RightSide>;

impl<S: ModuleSide> PartialEq for FdModule<S> {
    fn eq(&self, other: &Self) -> bool {
        same_instance(&self.instance, &other.instance)
            && self.dim == other.dim
            && self.action == other.action
            && self.operators == other.operators
    }
}

pub fn same_instance(a: &InstanceRef, b: &InstanceRef) -> bool {
    Arc::ptr_eq(a, b) || a.same_data(b)
}

/// Failure of the plain module laws on basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    Associativity { pair: (usize, usize), residual: Matrix },
    Unit { residual: Matrix },
}

/// Failure of the operator identity at `(b_i, v_p)` for labels `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleViolation {
    pub basis_index: usize,
    pub vector_index: usize,
    pub alpha: String,
    pub beta: String,
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub evaluations: usize,
    pub action: Vec<ActionViolation>,
    pub identity: Vec<ModuleViolation>,
}

impl ModuleReport {
    pub fn is_empty(&self) -> bool {
        self.action.is_empty() && self.identity.is_empty()
    }
}

impl<S: ModuleSide> FdModule<S> {
    pub fn new(
        instance: InstanceRef,
        dim: usize,
        action: Vec<Matrix>,
        operators: Vec<Matrix>,
    ) -> Result<Self> {
        if action.len() != instance.dim() {
            return Err(Error::Malformed(format!(
                "expected {} action matrices, found {}",
                instance.dim(),
                action.len()
            )));
        }
        if operators.len() != instance.omega_len() {
            return Err(Error::Malformed(format!(
                "expected {} operator matrices, found {}",
                instance.omega_len(),
                operators.len()
            )));
        }
        for m in action.iter().chain(&operators) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Malformed(format!("module matrices must be {dim}x{dim}")));
            }
        }
        Ok(Self {
            instance,
            dim,
            action,
            operators,
            side: PhantomData,
        })
    }

    /// The algebra acting on itself with `m_ω = P_ω`.
    pub fn regular(instance: InstanceRef) -> Self {
        let a = instance.algebra();
        let action = (0..a.dim())
            .map(|i| match S::SIDE {
                Side::Left => a.left_mult(i),
                Side::Right => a.right_mult(i),
            })
            .collect();
        let operators = instance.operators().matrices.clone();
        let d = a.dim();
        Self::new(instance, d, action, operators).expect("regular module shapes")
    }

    pub fn zero(instance: InstanceRef) -> Self {
        let action = vec![Matrix::zeros(0, 0); instance.dim()];
        let operators = vec![Matrix::zeros(0, 0); instance.omega_len()];
        Self::new(instance, 0, action, operators).expect("zero module shapes")
    }

    pub fn instance(&self) -> &InstanceRef {
        &self.instance
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_matrix(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    pub fn operator(&self, w: usize) -> &Matrix {
        &self.operators[w]
    }

    pub fn side(&self) -> Side {
        S::SIDE
    }

    /// Matrix of the action of a general algebra element.
    pub fn act_by(&self, r: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, x) in r.iter().enumerate() {
            m.add_scaled(&self.action[i], x);
        }
        m
    }

    pub fn with_operator(&self, w: usize, m: Matrix) -> Self {
        let mut out = self.clone();
        out.operators[w] = m;
        out
    }

    pub fn with_operators(&self, operators: Vec<Matrix>) -> Result<Self> {
        Self::new(self.instance.clone(), self.dim, self.action.clone(), operators)
    }

    /// Same module data viewed over another instance with the same algebra.
    pub fn over(&self, instance: InstanceRef, operators: Vec<Matrix>) -> Result<Self> {
        if instance.algebra() != self.instance.algebra() {
            return Err(Error::InstanceMismatch);
        }
        Self::new(instance, self.dim, self.action.clone(), operators)
    }

    pub fn check_action(&self) -> Vec<ActionViolation> {
        let a = self.instance.algebra();
        let d = a.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let lhs = match S::SIDE {
                    Side::Left => self.action[i].mul(&self.action[j]),
                    Side::Right => self.action[j].mul(&self.action[i]),
                };
                let rhs = self.act_by(a.basis_product(i, j));
                if lhs != rhs {
                    out.push(ActionViolation::Associativity {
                        pair: (i, j),
                        residual: lhs.sub(&rhs),
                    });
                }
            }
        }
        let u = self.act_by(a.unit());
        if !u.is_identity() {
            out.push(ActionViolation::Unit {
                residual: u.sub(&Matrix::identity(self.dim)),
            });
        }
        out
    }

    /// Residual matrix of the operator identity for basis element `b_i`
    /// and labels `(α, β)`; column `p` is the residual at `v_p`.
    pub fn identity_residual(&self, i: usize, alpha: usize, beta: usize) -> Matrix {
        let inst = &self.instance;
        let x = inst.algebra().basis_vector(i);
        let px = self.act_by(&inst.apply(alpha, &x));
        let rx = &self.action[i];
        let (ma, mb) = (&self.operators[alpha], &self.operators[beta]);
        let (la, lb) = (inst.weight(alpha), inst.weight(beta));
        match S::SIDE {
            // P_α(x)m_β(m) - m_α(x m_β(m)) - m_β(P_α(x)m) - λ_β m_α(xm) - λ_α m_β(xm)
            Side::Left => px
                .mul(mb)
                .sub(&ma.mul(rx).mul(mb))
                .sub(&mb.mul(&px))
                .sub(&ma.mul(rx).scale(lb))
                .sub(&mb.mul(rx).scale(la)),
            // m_β(mP_α(x)) - m_β(m_α(m)x) - m_β(m)P_α(x) - λ_β m_α(m)x - λ_α m_β(m)x
            Side::Right => mb
                .mul(&px)
                .sub(&mb.mul(rx).mul(ma))
                .sub(&px.mul(mb))
                .sub(&rx.mul(ma).scale(lb))
                .sub(&rx.mul(mb).scale(la)),
        }
    }

    pub fn check_identity(&self) -> (usize, Vec<ModuleViolation>) {
        let inst = &self.instance;
        let mut out = Vec::new();
        let mut evaluations = 0;
        for i in 0..inst.dim() {
            for alpha in 0..inst.omega_len() {
                for beta in 0..inst.omega_len() {
                    let res = self.identity_residual(i, alpha, beta);
                    evaluations += self.dim;
                    for p in 0..self.dim {
                        let col = res.column(p);
                        if col.iter().any(|x| !x.is_zero()) {
                            out.push(ModuleViolation {
                                basis_index: i,
                                vector_index: p,
                                alpha: inst.omega()[alpha].clone(),
                                beta: inst.omega()[beta].clone(),
                                residual: col,
                            });
                        }
                    }
                }
            }
        }
        (evaluations, out)
    }

    /// Module laws followed by the operator identity on all basis pairs.
    pub fn check(&self) -> ModuleReport {
        let (evaluations, identity) = self.check_identity();
        ModuleReport {
            evaluations,
            action: self.check_action(),
            identity,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }
}

pub fn check_left_module(m: &FdLeftModule) -> ModuleReport {
    m.check()
}

pub fn check_right_module(m: &FdRightModule) -> ModuleReport {
    m.check()
}

/// A space that is a left module over one instance and a right module over
/// another. `left.operators()` is the family attached to the left
/// structure, `right.operators()` the family attached to the right one.
#[derive(Debug, Clone, PartialEq)]
pub struct FdBimodule {
    left: FdLeftModule,
    right: FdRightModule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatFamily {
    /// Left and right actions commute.
    Actions,
    /// Right-side operators commute with the left action.
    RightOperatorsLeftAction,
    /// Left-side operators commute with the right action.
    LeftOperatorsRightAction,
    /// The two operator families commute.
    Operators,
}

impl CompatFamily {
    pub fn name(self) -> &'static str {
        match self {
            CompatFamily::Actions => "actions",
            CompatFamily::RightOperatorsLeftAction => "right operators with left action",
            CompatFamily::LeftOperatorsRightAction => "left operators with right action",
            CompatFamily::Operators => "operator families",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatViolation {
    pub family: CompatFamily,
    /// Left-side index then right-side index.
    pub indices: (usize, usize),
    pub residual: Matrix,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BimoduleReport {
    pub left: ModuleReport,
    pub right: ModuleReport,
    pub compat: Vec<CompatViolation>,
}

impl BimoduleReport {
    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty() && self.compat.is_empty()
    }
}

impl FdBimodule {
    pub fn new(left: FdLeftModule, right: FdRightModule) -> Result<Self> {
        if left.dim() != right.dim() {
            return Err(Error::Malformed(
                "left and right structures have different dimensions".into(),
            ));
        }
        Ok(Self { left, right })
    }

    /// An instance acting on itself from both sides, both families `P_Ω`.
    pub fn regular(instance: InstanceRef) -> Self {
        Self {
            left: FdModule::regular(instance.clone()),
            right: FdModule::regular(instance),
        }
    }

    pub fn zero(left: InstanceRef, right: InstanceRef) -> Self {
        Self {
            left: FdModule::zero(left),
            right: FdModule::zero(right),
        }
    }

    pub fn left(&self) -> &FdLeftModule {
        &self.left
    }

    pub fn right(&self) -> &FdRightModule {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn compat_violations(&self) -> Vec<CompatViolation> {
        let mut out = Vec::new();
        let mut push = |family, indices, a: &Matrix, b: &Matrix| {
            let r = a.mul(b).sub(&b.mul(a));
            if !r.is_zero() {
                out.push(CompatViolation {
                    family,
                    indices,
                    residual: r,
                });
            }
        };
        let (l, r) = (&self.left, &self.right);
        for (i, li) in l.action().iter().enumerate() {
            for (j, rj) in r.action().iter().enumerate() {
                push(CompatFamily::Actions, (i, j), li, rj);
            }
        }
        for (i, li) in l.action().iter().enumerate() {
            for (w, mw) in r.operators().iter().enumerate() {
                push(CompatFamily::RightOperatorsLeftAction, (i, w), li, mw);
            }
        }
        for (w, mw) in l.operators().iter().enumerate() {
            for (j, rj) in r.action().iter().enumerate() {
                push(CompatFamily::LeftOperatorsRightAction, (w, j), mw, rj);
            }
        }
        for (a, ma) in l.operators().iter().enumerate() {
            for (b, mb) in r.operators().iter().enumerate() {
                push(CompatFamily::Operators, (a, b), ma, mb);
            }
        }
        out
    }

    pub fn check(&self) -> BimoduleReport {
        BimoduleReport {
            left: self.left.check(),
            right: self.right.check(),
            compat: self.compat_violations(),
        }
    }

    /// Errors with the first failing condition, if any.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.check();
        if !report.left.is_empty() {
            return Err(Error::Hypothesis("left structure of the bimodule".into()));
        }
        if !report.right.is_empty() {
            return Err(Error::Hypothesis("right structure of the bimodule".into()));
        }
        if let Some(v) = report.compat.first() {
            return Err(Error::Hypothesis(format!(
                "bimodule compatibility: {} at {:?}",
                v.family.name(),
                v.indices
            )));
        }
        Ok(())
    }
}

pub fn check_bimodule(m: &FdBimodule) -> BimoduleReport {
    m.check()
}
