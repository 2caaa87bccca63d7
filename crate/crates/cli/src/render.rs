use mrb_core::algebra::{MrbAlgebraInstance, MrbReport, PresentationReport, Side};
use mrb_core::linalg::Matrix;
use mrb_core::modules::{ActionViolation, BimoduleReport, FdBimodule, FdModule, ModuleReport, ModuleSide};
use mrb_core::scalar::format_rational;
use mrb_core::Scalar;
use serde_json::{json, Value};

pub fn vector(v: &[Scalar]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::from(m.to_rows().iter().map(|r| vector(r)).collect::<Vec<_>>())
}

pub fn presentation(inst: &MrbAlgebraInstance, r: &PresentationReport) -> Value {
    let labels = inst.algebra().basis_labels();
    json!({
        "associativity": r.associativity.iter().map(|v| json!({
            "triple": [&labels[v.triple.0], &labels[v.triple.1], &labels[v.triple.2]],
            "residual": vector(&v.residual),
        })).collect::<Vec<_>>(),
        "unit": r.unit.iter().map(|v| json!({
            "basis": &labels[v.basis_index],
            "side": side_name(v.side),
            "residual": vector(&v.residual),
        })).collect::<Vec<_>>(),
    })
}

pub fn mrb(inst: &MrbAlgebraInstance, r: &MrbReport) -> Value {
    let labels = inst.algebra().basis_labels();
    json!({
        "evaluations": r.evaluations,
        "violations": r.violations.iter().map(|v| json!({
            "pair": [&labels[v.pair.0], &labels[v.pair.1]],
            "alpha": v.alpha,
            "beta": v.beta,
            "residual": vector(&v.residual),
        })).collect::<Vec<_>>(),
    })
}

pub fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

pub fn module<S: ModuleSide>(m: &FdModule<S>, r: &ModuleReport) -> Value {
    let labels = m.instance().algebra().basis_labels();
    json!({
        "valid": r.is_empty(),
        "evaluations": r.evaluations,
        "action": r.action.iter().map(|v| match v {
            ActionViolation::Associativity { pair, residual } => json!({
                "kind": "associativity",
                "pair": [&labels[pair.0], &labels[pair.1]],
                "residual": matrix(residual),
            }),
            ActionViolation::Unit { residual } => json!({
                "kind": "unit",
                "residual": matrix(residual),
            }),
        }).collect::<Vec<_>>(),
        "identity": r.identity.iter().map(|v| json!({
            "basis": &labels[v.basis_index],
            "vector": v.vector_index + 1,
            "alpha": v.alpha,
            "beta": v.beta,
            "residual": vector(&v.residual),
        })).collect::<Vec<_>>(),
    })
}

pub fn bimodule(m: &FdBimodule, r: &BimoduleReport) -> Value {
    json!({
        "valid": r.is_empty(),
        "left": module(m.left(), &r.left),
        "right": module(m.right(), &r.right),
        "compatibility": r.compat.iter().map(|v| json!({
            "family": v.family.name(),
            "indices": [v.indices.0 + 1, v.indices.1 + 1],
            "residual": matrix(&v.residual),
        })).collect::<Vec<_>>(),
    })
}
