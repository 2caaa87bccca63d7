//! Finite-dimensional algebras with families of Rota-Baxter type operators.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// An associative unital algebra given by structure constants:
/// `b_i * b_j = sum_k c[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    basis: Vec<String>,
    structure: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitViolation {
    pub basis_index: usize,
    pub side: Side,
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PresentationReport {
    pub associativity: Vec<AssociativityViolation>,
    pub unit: Vec<UnitViolation>,
}

impl PresentationReport {
    pub fn is_empty(&self) -> bool {
        self.associativity.is_empty() && self.unit.is_empty()
    }
}

impl AlgebraPresentation {
    /// Validates shapes only; the algebra laws are checked by
    /// [`AlgebraPresentation::check_presentation`].
    pub fn new(
        basis: Vec<String>,
        structure: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let d = basis.len();
        if structure.len() != d
            || structure
                .iter()
                .any(|row| row.len() != d || row.iter().any(|v| v.len() != d))
        {
            return Err(Error::Malformed(format!(
                "structure constants must have shape {d}x{d}x{d}"
            )));
        }
        if unit.len() != d {
            return Err(Error::Malformed(format!("unit must have length {d}")));
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b) {
                return Err(Error::Malformed(format!("duplicate basis label `{b}`")));
            }
        }
        Ok(Self {
            basis,
            structure,
            unit,
        })
    }

    /// `k^d` with `e_i e_j = delta_ij e_i`.
    pub fn componentwise(d: usize) -> Self {
        let basis = (1..=d).map(|i| format!("e{i}")).collect();
        let structure = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![Scalar::zero(); d];
                        if i == j {
                            v[i] = Scalar::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(basis, structure, vec![Scalar::one(); d]).expect("well-formed shape")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.structure
    }

    /// Coordinates of `b_i * b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> b_i x`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(d, d, |k, j| self.structure[i][j][k].clone())
    }

    /// Matrix of `x -> x b_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(d, d, |k, j| self.structure[j][i][k].clone())
    }

    /// Matrix of `x -> a x` for a general element `a`.
    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, x) in a.iter().enumerate() {
            m.add_scaled(&self.left_mult(i), x);
        }
        m
    }

    pub fn check_presentation(&self) -> PresentationReport {
        let d = self.dim();
        let mut report = PresentationReport::default();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul(&self.structure[i][j], &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.structure[j][k]);
                    if left != right {
                        let residual = left.iter().zip(&right).map(|(a, b)| a - b).collect();
                        report.associativity.push(AssociativityViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            for side in [Side::Left, Side::Right] {
                let p = match side {
                    Side::Left => self.mul(&self.unit, &b),
                    Side::Right => self.mul(&b, &self.unit),
                };
                if p != b {
                    let residual = p.iter().zip(&b).map(|(a, b)| a - b).collect();
                    report.unit.push(UnitViolation {
                        basis_index: i,
                        side,
                        residual,
                    });
                }
            }
        }
        report
    }
}

/// An ordered family of operators indexed by the labels of `Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorFamily {
    pub labels: Vec<String>,
    pub matrices: Vec<Matrix>,
}

/// One weight per label of `Ω`, in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFamily {
    pub values: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrbViolation {
    pub pair: (usize, usize),
    pub alpha: String,
    pub beta: String,
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MrbReport {
    pub evaluations: usize,
    pub violations: Vec<MrbViolation>,
}

impl MrbReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An algebra together with operators `P_ω` and weights `λ_ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrbAlgebraInstance {
    algebra: AlgebraPresentation,
    operators: OperatorFamily,
    weights: WeightFamily,
    verified: bool,
}

impl MrbAlgebraInstance {
    pub fn new(
        algebra: AlgebraPresentation,
        operators: OperatorFamily,
        weights: WeightFamily,
    ) -> Result<Self> {
        let d = algebra.dim();
        let s = operators.labels.len();
        if operators.matrices.len() != s || weights.values.len() != s {
            return Err(Error::Malformed(
                "every operator label needs one matrix and one weight".into(),
            ));
        }
        if s == 0 {
            return Err(Error::Malformed("operator label set is empty".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &operators.labels {
            if !seen.insert(l) {
                return Err(Error::Malformed(format!("duplicate operator label `{l}`")));
            }
        }
        for (l, m) in operators.labels.iter().zip(&operators.matrices) {
            if m.rows() != d || m.cols() != d {
                return Err(Error::Malformed(format!(
                    "operator `{l}` must be a {d}x{d} matrix"
                )));
            }
        }
        Ok(Self {
            algebra,
            operators,
            weights,
            verified: false,
        })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn omega(&self) -> &[String] {
        &self.operators.labels
    }

    pub fn omega_len(&self) -> usize {
        self.operators.labels.len()
    }

    pub fn omega_index(&self, label: &str) -> Option<usize> {
        self.operators.labels.iter().position(|l| l == label)
    }

    pub fn omega_index_or_err(&self, label: &str) -> Result<usize> {
        self.omega_index(label).ok_or_else(|| Error::UnknownLabel {
            kind: "operator",
            label: label.to_string(),
        })
    }

    pub fn basis_index_or_err(&self, label: &str) -> Result<usize> {
        self.algebra.index_of(label).ok_or_else(|| Error::UnknownLabel {
            kind: "basis",
            label: label.to_string(),
        })
    }

    pub fn operators(&self) -> &OperatorFamily {
        &self.operators
    }

    pub fn weights(&self) -> &WeightFamily {
        &self.weights
    }

    pub fn operator(&self, w: usize) -> &Matrix {
        &self.operators.matrices[w]
    }

    pub fn weight(&self, w: usize) -> &Scalar {
        &self.weights.values[w]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn apply(&self, w: usize, r: &[Scalar]) -> Vec<Scalar> {
        self.operator(w).mul_vec(r)
    }

    /// `P_α(r1)P_β(r2) - P_α(r1P_β(r2)) - P_β(P_α(r1)r2) - λ_βP_α(r1r2) - λ_αP_β(r1r2)`.
    pub fn mrb_residual(&self, alpha: usize, beta: usize, r1: &[Scalar], r2: &[Scalar]) -> Vec<Scalar> {
        let a = &self.algebra;
        let pa_r1 = self.apply(alpha, r1);
        let pb_r2 = self.apply(beta, r2);
        let r1r2 = a.mul(r1, r2);
        let lhs = a.mul(&pa_r1, &pb_r2);
        let t1 = self.apply(alpha, &a.mul(r1, &pb_r2));
        let t2 = self.apply(beta, &a.mul(&pa_r1, r2));
        let t3 = self.apply(alpha, &r1r2);
        let t4 = self.apply(beta, &r1r2);
        let (la, lb) = (self.weight(alpha), self.weight(beta));
        (0..self.dim())
            .map(|k| &lhs[k] - &t1[k] - &t2[k] - lb * &t3[k] - la * &t4[k])
            .collect()
    }

    /// Evaluates the multiple Rota-Baxter identity on every basis pair and
    /// every ordered pair of labels. An empty report marks the instance as
    /// verified.
    pub fn check_mrb_identity(&mut self) -> MrbReport {
        let report = self.mrb_report();
        self.verified = report.is_empty();
        report
    }

    pub fn mrb_report(&self) -> MrbReport {
        let d = self.dim();
        let s = self.omega_len();
        let mut report = MrbReport::default();
        for i in 0..d {
            let bi = self.algebra.basis_vector(i);
            for j in 0..d {
                let bj = self.algebra.basis_vector(j);
                for alpha in 0..s {
                    for beta in 0..s {
                        report.evaluations += 1;
                        let residual = self.mrb_residual(alpha, beta, &bi, &bj);
                        if residual.iter().any(|x| !x.is_zero()) {
                            report.violations.push(MrbViolation {
                                pair: (i, j),
                                alpha: self.omega()[alpha].clone(),
                                beta: self.omega()[beta].clone(),
                                residual,
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Consumes the instance and returns it verified, or the failing report.
    pub fn verified(mut self) -> std::result::Result<Self, MrbReport> {
        let report = self.check_mrb_identity();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(report)
        }
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::NotVerified)
        }
    }

    /// Same instance with one weight replaced; the result is unverified.
    pub fn with_weight(&self, w: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.weights.values[w] = value;
        out.verified = false;
        out
    }

    /// Same instance with one operator replaced; the result is unverified.
    pub fn with_operator(&self, w: usize, m: Matrix) -> Self {
        let mut out = self.clone();
        out.operators.matrices[w] = m;
        out.verified = false;
        out
    }

    /// True when both instances present the same data, ignoring the
    /// verification flag.
    pub fn same_data(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.operators == other.operators
            && self.weights == other.weights
    }
}

/// Linear recombination of an operator family: row `i` with coefficients
/// `a_{i,ω}` defines `P_i = Σ a_{i,ω} P_ω` and `λ_i = Σ a_{i,ω} λ_ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReweightSpec {
    pub rows: Vec<(String, BTreeMap<String, Scalar>)>,
}

impl ReweightSpec {
    /// One row per label, each the indicator of its own label.
    pub fn identity(inst: &MrbAlgebraInstance) -> Self {
        Self {
            rows: inst
                .omega()
                .iter()
                .map(|l| (l.clone(), BTreeMap::from([(l.clone(), Scalar::one())])))
                .collect(),
        }
    }

    /// Dense coefficient matrix, rows indexed by spec rows and columns by `Ω`.
    pub fn coefficients(&self, inst: &MrbAlgebraInstance) -> Result<Vec<Vec<Scalar>>> {
        if self.rows.is_empty() {
            return Err(Error::InvalidArgument("reweighting spec is empty".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(self.rows.len());
        for (label, row) in &self.rows {
            if !seen.insert(label) {
                return Err(Error::InvalidArgument(format!("duplicate row label `{label}`")));
            }
            let mut dense = vec![Scalar::zero(); inst.omega_len()];
            for (w, c) in row {
                dense[inst.omega_index_or_err(w)?] = c.clone();
            }
            if dense.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArgument(format!(
                    "row `{label}` is zero and defines an empty operator"
                )));
            }
            out.push(dense);
        }
        Ok(out)
    }

    pub fn labels(&self) -> Vec<String> {
        self.rows.iter().map(|(l, _)| l.clone()).collect()
    }
}

/// Builds the recombined instance and runs the identity checker on it.
pub fn reweight(inst: &MrbAlgebraInstance, spec: &ReweightSpec) -> Result<MrbAlgebraInstance> {
    inst.require_verified()?;
    let coeffs = spec.coefficients(inst)?;
    let d = inst.dim();
    let mut matrices = Vec::with_capacity(coeffs.len());
    let mut weights = Vec::with_capacity(coeffs.len());
    for row in &coeffs {
        let mut m = Matrix::zeros(d, d);
        let mut l = Scalar::zero();
        for (w, a) in row.iter().enumerate() {
            m.add_scaled(inst.operator(w), a);
            l += a * inst.weight(w);
        }
        matrices.push(m);
        weights.push(l);
    }
    let mut out = MrbAlgebraInstance::new(
        inst.algebra.clone(),
        OperatorFamily {
            labels: spec.labels(),
            matrices,
        },
        WeightFamily { values: weights },
    )?;
    out.check_mrb_identity();
    Ok(out)
}
