//! JSON documents for instances and modules.
//!
//! Scalars are strings matching `-?[0-9]+(/[1-9][0-9]*)?`. Operator
//! matrices are lists of rows acting on column vectors. A module action
//! entry `a[i][p][q]` is the coefficient of `v_q` in `b_i · v_p`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, MrbAlgebraInstance, OperatorFamily, WeightFamily};
use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{FdBimodule, FdLeftModule, FdModule, FdRightModule, InstanceRef, ModuleSide};
use crate::scalar::{format_rational, parse_rational, Scalar};

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub dim: usize,
    pub basis: Vec<String>,
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    pub omega: Vec<String>,
    pub operators: IndexMap<String, MatrixDoc>,
    pub weights: IndexMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceField {
    Name(String),
    Inline(Box<InstanceDoc>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub instance: InstanceField,
    pub dim: usize,
    pub action: Vec<Vec<Vec<String>>>,
    pub operators: IndexMap<String, MatrixDoc>,
    pub side: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_instance: Option<InstanceField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_action: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_operators: Option<IndexMap<String, MatrixDoc>>,
}

#[derive(Debug, Clone)]
pub enum LoadedModule {
    Left(FdLeftModule),
    Right(FdRightModule),
    Bimodule(FdBimodule),
}

fn scalar(s: &str) -> Result<Scalar> {
    parse_rational(s).ok_or_else(|| Error::Document(format!("`{s}` is not a rational")))
}

fn scalars(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| scalar(s)).collect()
}

pub fn matrix_from_doc(rows: &MatrixDoc, n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Document(format!("{what} must be a {n}x{n} matrix")));
    }
    let rows = rows.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows, n))
}

pub fn matrix_to_doc(m: &Matrix) -> MatrixDoc {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

pub fn vector_to_doc(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn family(labels: &[String], map: &IndexMap<String, MatrixDoc>, n: usize, what: &str) -> Result<Vec<Matrix>> {
    for k in map.keys() {
        if !labels.contains(k) {
            return Err(Error::UnknownLabel { kind: "operator", label: k.clone() });
        }
    }
    labels
        .iter()
        .map(|l| {
            let m = map
                .get(l)
                .ok_or_else(|| Error::Document(format!("missing {what} for label `{l}`")))?;
            matrix_from_doc(m, n, &format!("{what} `{l}`"))
        })
        .collect()
}

impl InstanceDoc {
    pub fn to_instance(&self) -> Result<MrbAlgebraInstance> {
        let d = self.dim;
        if self.basis.len() != d {
            return Err(Error::Document(format!("basis must have {d} labels")));
        }
        let structure = self
            .structure_constants
            .iter()
            .map(|a| a.iter().map(|b| scalars(b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let algebra = AlgebraPresentation::new(self.basis.clone(), structure, scalars(&self.unit)?)?;
        let matrices = family(&self.omega, &self.operators, d, "operator")?;
        for k in self.weights.keys() {
            if !self.omega.contains(k) {
                return Err(Error::UnknownLabel { kind: "operator", label: k.clone() });
            }
        }
        let weights = self
            .omega
            .iter()
            .map(|l| {
                self.weights
                    .get(l)
                    .ok_or_else(|| Error::Document(format!("missing weight for label `{l}`")))
                    .and_then(|w| scalar(w))
            })
            .collect::<Result<Vec<_>>>()?;
        MrbAlgebraInstance::new(
            algebra,
            OperatorFamily { labels: self.omega.clone(), matrices },
            WeightFamily { values: weights },
        )
    }

    pub fn from_instance(inst: &MrbAlgebraInstance) -> Self {
        let a = inst.algebra();
        let omega = inst.omega().to_vec();
        Self {
            dim: a.dim(),
            basis: a.basis_labels().to_vec(),
            structure_constants: a
                .structure_constants()
                .iter()
                .map(|r| r.iter().map(|v| vector_to_doc(v)).collect())
                .collect(),
            unit: vector_to_doc(a.unit()),
            operators: omega.iter().enumerate().map(|(w, l)| (l.clone(), matrix_to_doc(inst.operator(w)))).collect(),
            weights: omega.iter().enumerate().map(|(w, l)| (l.clone(), format_rational(inst.weight(w)))).collect(),
            omega,
        }
    }
}

pub fn parse_instance(text: &str) -> Result<MrbAlgebraInstance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_instance()
}

pub fn instance_to_json(inst: &MrbAlgebraInstance) -> String {
    serde_json::to_string(&InstanceDoc::from_instance(inst)).expect("serializable")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

/// A catalog name such as `scaled_projection(1,2)` or a path to an
/// instance document.
pub fn load_instance(spec: &str) -> Result<MrbAlgebraInstance> {
    load_instance_relative(spec, None)
}

fn load_instance_relative(spec: &str, base: Option<&Path>) -> Result<MrbAlgebraInstance> {
    if let Ok(inst) = catalog::by_name(spec) {
        return Ok(inst);
    }
    let mut path = PathBuf::from(spec);
    if path.is_relative() {
        if let Some(b) = base {
            let joined = b.join(&path);
            if joined.exists() {
                path = joined;
            }
        }
    }
    if !path.exists() {
        return Err(Error::UnknownLabel { kind: "instance", label: spec.to_string() });
    }
    parse_instance(&read(&path)?)
}

impl InstanceField {
    pub fn resolve(&self, base: Option<&Path>) -> Result<MrbAlgebraInstance> {
        match self {
            InstanceField::Name(n) => load_instance_relative(n, base),
            InstanceField::Inline(doc) => doc.to_instance(),
        }
    }
}

fn action_from_doc(a: &[Vec<Vec<String>>], inst: &MrbAlgebraInstance, n: usize) -> Result<Vec<Matrix>> {
    if a.len() != inst.dim() {
        return Err(Error::Document(format!("action needs {} entries", inst.dim())));
    }
    a.iter()
        .enumerate()
        .map(|(i, m)| Ok(matrix_from_doc(m, n, &format!("action of basis element {}", i + 1))?.transpose()))
        .collect()
}

fn action_to_doc(a: &[Matrix]) -> Vec<Vec<Vec<String>>> {
    a.iter().map(|m| matrix_to_doc(&m.transpose())).collect()
}

fn operators_to_doc(inst: &MrbAlgebraInstance, ops: &[Matrix]) -> IndexMap<String, MatrixDoc> {
    inst.omega().iter().cloned().zip(ops.iter().map(matrix_to_doc)).collect()
}

fn one_sided<S: ModuleSide>(
    inst: InstanceRef,
    dim: usize,
    action: &[Vec<Vec<String>>],
    ops: &IndexMap<String, MatrixDoc>,
) -> Result<FdModule<S>> {
    let action = action_from_doc(action, &inst, dim)?;
    let ops = family(inst.omega(), ops, dim, "module operator")?;
    FdModule::new(inst, dim, action, ops)
}

impl ModuleDoc {
    /// Instances are checked and shared between both sides when they agree.
    pub fn to_module(&self, base: Option<&Path>) -> Result<LoadedModule> {
        let mut inst = self.instance.resolve(base)?;
        inst.check_mrb_identity();
        let inst = Arc::new(inst);
        match self.side.as_str() {
            "left" => Ok(LoadedModule::Left(one_sided(inst, self.dim, &self.action, &self.operators)?)),
            "right" => Ok(LoadedModule::Right(one_sided(inst, self.dim, &self.action, &self.operators)?)),
            "bimodule" => {
                let right_inst = match &self.right_instance {
                    Some(f) if f != &self.instance => {
                        let mut r = f.resolve(base)?;
                        r.check_mrb_identity();
                        Arc::new(r)
                    }
                    _ => inst.clone(),
                };
                let (Some(ra), Some(ro)) = (&self.right_action, &self.right_operators) else {
                    return Err(Error::Document("bimodule documents need right_action and right_operators".into()));
                };
                let left = one_sided(inst, self.dim, &self.action, &self.operators)?;
                let right = one_sided(right_inst, self.dim, ra, ro)?;
                Ok(LoadedModule::Bimodule(FdBimodule::new(left, right)?))
            }
            other => Err(Error::Document(format!("unknown side `{other}`"))),
        }
    }

    pub fn from_module<S: ModuleSide>(m: &FdModule<S>, instance: InstanceField) -> Self {
        Self {
            instance,
            dim: m.dim(),
            action: action_to_doc(m.action()),
            operators: operators_to_doc(m.instance(), m.operators()),
            side: match S::SIDE {
                crate::algebra::Side::Left => "left",
                crate::algebra::Side::Right => "right",
            }
            .into(),
            right_instance: None,
            right_action: None,
            right_operators: None,
        }
    }

    pub fn from_bimodule(m: &FdBimodule, left: InstanceField, right: InstanceField) -> Self {
        let mut doc = Self::from_module(m.left(), left.clone());
        doc.side = "bimodule".into();
        if right != left {
            doc.right_instance = Some(right);
        }
        doc.right_action = Some(action_to_doc(m.right().action()));
        doc.right_operators = Some(operators_to_doc(m.right().instance(), m.right().operators()));
        doc
    }
}

pub fn parse_module(text: &str, base: Option<&Path>) -> Result<LoadedModule> {
    let doc: ModuleDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_module(base)
}

pub fn load_module(path: &Path) -> Result<LoadedModule> {
    parse_module(&read(path)?, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        for (_, inst) in catalog::standard_catalog() {
            let text = instance_to_json(&inst);
            let back = parse_instance(&text).unwrap();
            assert!(back.same_data(&inst));
        }
    }

    #[test]
    fn rejects_bad_rationals_and_labels() {
        let inst = catalog::scaled_projection(&[crate::scalar::int(1)]).unwrap();
        let mut doc = InstanceDoc::from_instance(&inst);
        doc.weights.insert("1".into(), "1/0".into());
        assert!(matches!(doc.to_instance(), Err(Error::Document(_))));
        let mut doc = InstanceDoc::from_instance(&inst);
        doc.operators.insert("9".into(), doc.operators["1"].clone());
        assert!(matches!(doc.to_instance(), Err(Error::UnknownLabel { .. })));
        assert!(parse_instance("{\"dim\": 1}").is_err());
    }

    #[test]
    fn module_round_trip_transposes_action() {
        let inst: InstanceRef = Arc::new(catalog::upper_triangular().unwrap());
        let m = FdLeftModule::regular(inst.clone());
        let doc = ModuleDoc::from_module(&m, InstanceField::Name("upper_triangular".into()));
        // e1 = E11 sends E12 (v_2) to itself.
        assert_eq!(doc.action[0][1], vec!["0", "1", "0"]);
        let text = serde_json::to_string(&doc).unwrap();
        let LoadedModule::Left(back) = parse_module(&text, None).unwrap() else { panic!() };
        assert_eq!(back, m);
        let b = FdBimodule::regular(inst);
        let doc = ModuleDoc::from_bimodule(&b, InstanceField::Name("upper_triangular".into()), InstanceField::Name("upper_triangular".into()));
        let LoadedModule::Bimodule(back) = doc.to_module(None).unwrap() else { panic!() };
        assert_eq!(back.left(), b.left());
        assert_eq!(back.right(), b.right());
    }
}
