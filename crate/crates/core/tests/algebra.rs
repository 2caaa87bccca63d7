use std::collections::BTreeMap;
use std::sync::Arc;

use mrb_core::algebra::{reweight, AlgebraPresentation, ReweightSpec, Side};
use mrb_core::catalog::{scaled_projection, standard_catalog, trivial};
use mrb_core::modules::{reweight_module, FdLeftModule, FdRightModule};
use mrb_core::scalar::{frac, int};
use mrb_core::{Error, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

#[test]
fn presentation_examples() {
    let one = AlgebraPresentation::new(vec!["b".into()], vec![vec![v(&[1])]], v(&[1])).unwrap();
    assert!(one.check_presentation().is_empty());
    let comp = AlgebraPresentation::componentwise(2);
    assert!(comp.check_presentation().is_empty());
    let bad = AlgebraPresentation::new(
        comp.basis_labels().to_vec(),
        comp.structure_constants().to_vec(),
        v(&[1, 0]),
    )
    .unwrap();
    let r = bad.check_presentation();
    assert!(r.associativity.is_empty());
    assert!(r.unit.iter().all(|u| u.basis_index == 1));
    assert_eq!(r.unit.len(), 2);
    assert!(r.unit.iter().any(|u| u.side == Side::Left && u.residual == v(&[0, -1])));
}

#[test]
fn misweighted_projection_fails_at_first_pair() {
    let inst = scaled_projection(&[int(1)]).unwrap();
    let mut bad = inst.with_weight(0, int(-1));
    let r = bad.check_mrb_identity();
    assert!(!bad.is_verified());
    let first = &r.violations[0];
    assert_eq!((first.pair, first.alpha.as_str(), first.beta.as_str()), ((0, 0), "1", "1"));
    // LHS is e1; the right side with weight -1 is e1 + e1 - e1 - e1 = 0.
    assert_eq!(first.residual, v(&[1, 0]));
}

#[test]
fn spot_value_of_the_coupled_identity() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let e1 = inst.algebra().basis_vector(0);
    let lhs = inst.algebra().mul(&inst.apply(0, &e1), &inst.apply(1, &e1));
    assert_eq!(lhs, v(&[2, 0]));
    assert!(inst.mrb_residual(0, 1, &e1, &e1).iter().all(Zero::is_zero));
}

#[test]
fn rejected_scalings() {
    assert!(matches!(scaled_projection(&[int(0)]), Err(Error::InvalidArgument(_))));
    assert!(scaled_projection(&[]).is_err());
    assert!(trivial(0, 1).is_err());
}

fn spec(rows: &[(&str, &[(&str, Scalar)])]) -> ReweightSpec {
    ReweightSpec {
        rows: rows
            .iter()
            .map(|(l, r)| (l.to_string(), r.iter().map(|(w, c)| (w.to_string(), c.clone())).collect()))
            .collect(),
    }
}

#[test]
fn reweight_examples() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let same = reweight(&inst, &ReweightSpec::identity(&inst)).unwrap();
    assert!(same.same_data(&inst));
    let sum = reweight(&inst, &spec(&[("1", &[("1", int(1)), ("2", int(1))])])).unwrap();
    assert!(sum.same_data(&scaled_projection(&[int(3)]).unwrap()));
    let t = trivial(2, 3).unwrap();
    let t2 = reweight(&t, &spec(&[("a", &[("1", int(5))]), ("b", &[("2", int(1)), ("3", int(-1))])])).unwrap();
    assert!(t2.same_data(&trivial(2, 2).unwrap().with_labels(&["a", "b"])));
}

trait Relabel {
    fn with_labels(&self, labels: &[&str]) -> Self;
}

impl Relabel for mrb_core::algebra::MrbAlgebraInstance {
    fn with_labels(&self, labels: &[&str]) -> Self {
        let rows = self
            .omega()
            .iter()
            .zip(labels)
            .map(|(w, l)| (l.to_string(), BTreeMap::from([(w.clone(), int(1))])))
            .collect();
        reweight(self, &ReweightSpec { rows }).unwrap()
    }
}

#[test]
fn reweight_errors() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    assert!(reweight(&inst, &ReweightSpec { rows: vec![] }).is_err());
    assert!(reweight(&inst, &spec(&[("z", &[("1", int(0))])])).is_err());
    assert!(matches!(
        reweight(&inst, &spec(&[("z", &[("9", int(1))])])),
        Err(Error::UnknownLabel { .. })
    ));
    assert!(reweight(&inst, &spec(&[("a", &[("1", int(1))]), ("a", &[("2", int(1))])])).is_err());
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn vector(d: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), d)
}

/// Independent evaluation of both sides of the coupled identity.
fn identity_holds(inst: &mrb_core::algebra::MrbAlgebraInstance, a: usize, b: usize, x: &[Scalar], y: &[Scalar]) -> bool {
    let alg = inst.algebra();
    let p = |w: usize, r: &[Scalar]| inst.operator(w).mul_vec(r);
    let lhs = alg.mul(&p(a, x), &p(b, y));
    let terms = [
        (int(1), p(a, &alg.mul(x, &p(b, y)))),
        (int(1), p(b, &alg.mul(&p(a, x), y))),
        (inst.weight(b).clone(), p(a, &alg.mul(x, y))),
        (inst.weight(a).clone(), p(b, &alg.mul(x, y))),
    ];
    let mut rhs = vec![Scalar::zero(); inst.dim()];
    for (c, t) in terms {
        for (acc, z) in rhs.iter_mut().zip(t) {
            *acc += &c * z;
        }
    }
    lhs == rhs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identity_holds_off_the_basis(k in 0usize..13, x in vector(3), y in vector(3)) {
        let (_, inst) = standard_catalog().swap_remove(k);
        let d = inst.dim();
        for a in 0..inst.omega_len() {
            for b in 0..inst.omega_len() {
                prop_assert!(identity_holds(&inst, a, b, &x[..d], &y[..d]));
            }
        }
    }

    #[test]
    fn reweighting_preserves_instances_and_modules(
        k in 0usize..13,
        rows in prop::collection::vec(prop::collection::vec(scalar(), 3), 1..4),
    ) {
        let (_, inst) = standard_catalog().swap_remove(k);
        let s = inst.omega_len();
        let spec = ReweightSpec {
            rows: rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let row: BTreeMap<String, Scalar> = inst
                        .omega()
                        .iter()
                        .zip(&r[..s])
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(w, c)| (w.clone(), c.clone()))
                        .collect();
                    (format!("r{i}"), row)
                })
                .collect(),
        };
        let zero_row = spec.rows.iter().any(|(_, r)| r.is_empty());
        match reweight(&inst, &spec) {
            Ok(new) => {
                prop_assert!(!zero_row);
                prop_assert!(new.is_verified());
                let inst = Arc::new(inst);
                let l = reweight_module(&FdLeftModule::regular(inst.clone()), &spec).unwrap();
                let r = reweight_module(&FdRightModule::regular(inst), &spec).unwrap();
                prop_assert!(l.is_valid());
                prop_assert!(r.is_valid());
            }
            Err(_) => prop_assert!(zero_row),
        }
    }
}
