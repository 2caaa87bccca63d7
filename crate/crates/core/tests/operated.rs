use std::sync::Arc;

use mrb_core::catalog::{scaled_projection, standard_catalog, trivial};
use mrb_core::expr::{operated_ast, parse_expression};
use mrb_core::modules::FdLeftModule;
use mrb_core::operated::{
    act, apply_operator, enumerate_words, generator_element, ideal_element, ideal_generators, lift, max_depth,
    GeneratorSet, OperatedElement, OperatedWord,
};
use mrb_core::opring::{free_module_normal_form, from_operated};
use mrb_core::scalar::{frac, int};
use mrb_core::Scalar;
use num_traits::Zero;
use proptest::prelude::*;

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

fn word(slots: &[usize], ops: &[usize]) -> OperatedElement {
    OperatedElement::term(OperatedWord::new(slots.to_vec(), ops.to_vec(), 0), int(1))
}

#[test]
fn action_examples() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let e = word(&[0], &[]);
    assert_eq!(act(&inst, inst.algebra().unit(), &e), e);
    assert!(act(&inst, &v(&[0, 1]), &e).is_zero());
    assert_eq!(act(&inst, &v(&[1, 1]), &e), e);
}

#[test]
fn operator_prepends_the_unit() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    assert!(apply_operator(&inst, 0, &OperatedElement::new()).unwrap().is_zero());
    let got = apply_operator(&inst, 0, &word(&[0], &[])).unwrap();
    let mut expected = word(&[0, 0], &[0]);
    expected.add_assign(&word(&[1, 0], &[0]));
    assert_eq!(got, expected);
    let twice = apply_operator(&inst, 1, &got).unwrap();
    assert_eq!(max_depth(&twice), 3);
}

#[test]
fn lift_examples() {
    let inst = Arc::new(scaled_projection(&[int(1), int(2)]).unwrap());
    let regular = FdLeftModule::regular(inst.clone());
    let gens = GeneratorSet::single("x");
    let zero = lift(&gens, &[("x".into(), v(&[0, 0]))], &regular).unwrap();
    let one = lift(&gens, &[("x".into(), inst.algebra().unit().to_vec())], &regular).unwrap();
    for w in enumerate_words(&inst, 1, 3) {
        assert!(zero.eval_word(&w).iter().all(Zero::is_zero));
    }
    // e1 · P_1(e1 · 1) = e1
    assert_eq!(one.eval(&word(&[0, 0], &[0])), v(&[1, 0]));
    // Depth one: r ⊗ x ↦ r φ(x).
    let phi = lift(&gens, &[("x".into(), v(&[3, -1]))], &regular).unwrap();
    assert_eq!(phi.eval(&word(&[1], &[])), v(&[0, -1]));
    assert!(lift(&gens, &[], &regular).is_err());
    assert!(lift(&gens, &[("y".into(), v(&[1, 0]))], &regular).is_err());
}

#[test]
fn ideal_generator_examples() {
    let inst = scaled_projection(&[int(1)]).unwrap();
    let gens = GeneratorSet::single("x");
    assert!(ideal_generators(&inst, &gens, 0).unwrap().is_empty());

    // Hand expansion with P = diag(1, 0), λ = -1/2, r = e1, a = e1 ⊗ x.
    let g = ideal_element(&inst, &v(&[1, 0]), &word(&[0], &[]), 0, 0).unwrap();
    let text = operated_ast(&inst, &gens, &g).to_string();
    assert_eq!(text, "e1 . 1 . e1 : x - e1 . 1 . e1 . 1 . e1 : x - e2 . 1 . e1 . 1 . e1 : x");
    let expected = parse_expression(&text).unwrap().to_operated_element(&inst, &gens).unwrap();
    assert_eq!(g, expected);
    assert!(free_module_normal_form(&inst, &from_operated(&g)).is_zero());

    // With zero operators only -m'_α(r m'_β(a)) survives.
    let t = trivial(2, 1).unwrap();
    let a = word(&[1], &[]);
    let r = v(&[0, 1]);
    let g = ideal_element(&t, &r, &a, 0, 0).unwrap();
    let inner = act(&t, &r, &apply_operator(&t, 0, &a).unwrap());
    let mut expected = apply_operator(&t, 0, &inner).unwrap();
    expected = expected.scaled(&int(-1));
    assert_eq!(g, expected);
}

#[test]
fn ideal_generators_vanish_in_every_module() {
    let gens = GeneratorSet::new(vec!["x".into(), "y".into()]).unwrap();
    for (name, inst) in standard_catalog().into_iter().filter(|(_, i)| i.dim() * i.omega_len() <= 4) {
        let inst = Arc::new(inst);
        let regular = FdLeftModule::regular(inst.clone());
        let images = vec![("x".to_string(), v(&[1; 3])[..inst.dim()].to_vec()), ("y".into(), inst.algebra().basis_vector(0))];
        let phi = lift(&gens, &images, &regular).unwrap();
        for g in ideal_generators(&inst, &gens, 2).unwrap() {
            assert!(phi.eval(&g.element).iter().all(Zero::is_zero), "{name}");
        }
    }
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| frac(n, d))
}

fn element(d: usize, s: usize) -> impl Strategy<Value = OperatedElement> {
    let word = (1usize..=3).prop_flat_map(move |n| {
        (prop::collection::vec(0..d, n), prop::collection::vec(0..s, n - 1))
            .prop_map(|(slots, ops)| OperatedWord::new(slots, ops, 0))
    });
    prop::collection::vec((word, scalar()), 0..5).prop_map(|terms| terms.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lift_is_an_operated_hom(
        e in element(2, 2),
        r in prop::collection::vec(scalar(), 2),
        img in prop::collection::vec(scalar(), 2),
        w in 0usize..2,
    ) {
        let inst = Arc::new(scaled_projection(&[int(1), int(2)]).unwrap());
        let regular = FdLeftModule::regular(inst.clone());
        let phi = lift(&GeneratorSet::single("x"), &[("x".into(), img.clone())], &regular).unwrap();
        let base = phi.eval(&e);
        prop_assert_eq!(phi.eval(&act(&inst, &r, &e)), regular.act_by(&r).mul_vec(&base));
        prop_assert_eq!(phi.eval(&apply_operator(&inst, w, &e).unwrap()), regular.operator(w).mul_vec(&base));
        prop_assert_eq!(phi.eval(&generator_element(&r, 0)), regular.act_by(&r).mul_vec(&img));
    }
}
