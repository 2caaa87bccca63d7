use mrb_core::catalog::{scaled_projection, standard_catalog, trivial};
use mrb_core::expr::{op_element_ast, parse_expression};
use mrb_core::opring::{
    confluence_probe, enumerate_op_words, ideal_generator, is_normal, max_q_degree, multiply, normal_form, normalize,
    normalize_with, truncated_quotient_oracle, unit, OpElement, OpWord, Strategy as Order,
};
use mrb_core::scalar::{frac, int};
use mrb_core::Scalar;
use proptest::prelude::*;

fn parse(inst: &mrb_core::algebra::MrbAlgebraInstance, text: &str) -> OpElement {
    parse_expression(text).unwrap().to_op_element(inst).unwrap()
}

#[test]
fn multiplication_examples() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let b = parse(&inst, "e1 Q[1] e2 - 2 * e2");
    assert_eq!(multiply(&inst, &unit(&inst), &b), b);
    assert!(multiply(&inst, &parse(&inst, "e1"), &parse(&inst, "e2")).is_zero());
    let p = multiply(&inst, &parse(&inst, "Q[1] e1"), &parse(&inst, "e1 Q[2]"));
    assert_eq!(p, parse(&inst, "Q[1] e1 Q[2]"));
    assert_eq!(max_q_degree(&p), 2);
}

#[test]
fn rewrite_examples() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let low = parse(&inst, "e1 Q[1] e2 + e2");
    let r = normalize(&inst, &low);
    assert_eq!((r.output, r.rule_applications), (low, 0));
    // Q1 e2 Q2 → Q1 e2 + 1/2 Q2 e2 since P1(e2) = 0, λ2 = -1, λ1 = -1/2.
    let got = normal_form(&inst, &parse(&inst, "Q[1] e2 Q[2]"));
    assert_eq!(got, parse(&inst, "Q[1] e2 + 1/2 * Q[2] e2"));
    // The symbolic rule on a single basis word.
    let got = normal_form(&inst, &parse(&inst, "e1 Q[1] e1 Q[2] e2"));
    assert_eq!(got, parse(&inst, "e1 Q[2] e2"));
}

#[test]
fn normal_forms_are_normal_and_sound() {
    for (name, inst) in standard_catalog().into_iter().filter(|(_, i)| i.dim() * i.omega_len() <= 6) {
        let oracle = truncated_quotient_oracle(&inst, 3).unwrap();
        for w in enumerate_op_words(&inst, 3) {
            let e = OpElement::term(w, int(1));
            for s in [Order::Leftmost, Order::Rightmost] {
                let nf = normalize_with(&inst, &e, s).output;
                assert!(is_normal(&nf), "{name}");
                let mut diff = e.clone();
                diff.sub_assign(&nf);
                assert_eq!(oracle.in_ideal(&diff), Some(true), "{name}");
            }
        }
    }
}

#[test]
fn oracle_examples() {
    for (_, inst) in standard_catalog() {
        let d = inst.dim();
        let s = inst.omega_len();
        let o = truncated_quotient_oracle(&inst, 1).unwrap();
        assert_eq!(o.dim(), d + d * d * s);
    }
    let t = truncated_quotient_oracle(&trivial(1, 1).unwrap(), 2).unwrap();
    assert_eq!((t.ambient_dim(), t.dim()), (3, 2));
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let o = truncated_quotient_oracle(&inst, 3).unwrap();
    for w in o.coset_basis() {
        assert!(w.q_degree() <= 1);
    }
    // Every generator lies in the ideal.
    for a in 0..2 {
        for b in 0..2 {
            for r in 0..2 {
                assert_eq!(o.in_ideal(&ideal_generator(&inst, a, r, b)), Some(true));
            }
        }
    }
}

#[test]
fn trivial_and_single_operator_instances_are_confluent() {
    for (name, inst) in standard_catalog() {
        assert!(confluence_probe(&inst, 2).unwrap().is_empty());
        let r = confluence_probe(&inst, 3).unwrap();
        if inst.omega_len() == 1 || name.starts_with("trivial") {
            assert!(r.is_empty(), "{name}");
            assert_eq!(truncated_quotient_oracle(&inst, 3).unwrap().dim(), inst.dim() + inst.dim().pow(2) * inst.omega_len());
        }
    }
}

/// Two reduction orders disagree when two different operators are present;
/// the difference is a nonzero element of the ideal in normal form.
#[test]
fn multiple_operators_break_confluence() {
    let inst = scaled_projection(&[int(1), int(2)]).unwrap();
    let w = OpElement::term(OpWord::new(vec![0, 0, 0, 0], vec![0, 0, 1]), int(1));
    let left = normalize_with(&inst, &w, Order::Leftmost).output;
    let right = normalize_with(&inst, &w, Order::Rightmost).output;
    assert_eq!(left, parse(&inst, "e1 Q[1] e1 + 1/2 * e1 Q[2] e1"));
    assert_eq!(right, parse(&inst, "3/2 * e1 Q[1] e1 + 1/4 * e1 Q[2] e1"));
    let mut diff = left.clone();
    diff.sub_assign(&right);
    assert!(is_normal(&diff) && !diff.is_zero());
    let oracle = truncated_quotient_oracle(&inst, 3).unwrap();
    assert_eq!(oracle.in_ideal(&diff), Some(true));
    assert_eq!(oracle.dim(), 6);
    let report = confluence_probe(&inst, 3).unwrap();
    assert!(!report.is_empty());
    assert!(report.discrepancies.iter().all(|d| d.difference_in_ideal == Some(true)));
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| frac(n, d))
}

fn element(d: usize, s: usize, max_q: usize) -> impl Strategy<Value = OpElement> {
    let word = (0..=max_q).prop_flat_map(move |q| {
        (prop::collection::vec(0..d, q + 1), prop::collection::vec(0..s, q)).prop_map(|(sl, op)| OpWord::new(sl, op))
    });
    prop::collection::vec((word, scalar()), 0..4).prop_map(|t| t.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// On confluent instances the normal form is a ring homomorphism onto
    /// the normal words, so associativity survives normalization.
    #[test]
    fn normalized_products_associate(
        k in 0usize..2,
        a in element(2, 1, 1),
        b in element(2, 1, 1),
        c in element(2, 1, 1),
    ) {
        let inst = if k == 0 { trivial(2, 1) } else { scaled_projection(&[int(1)]) }.unwrap();
        let nf = |e: &OpElement| normal_form(&inst, e);
        let left = nf(&multiply(&inst, &nf(&multiply(&inst, &a, &b)), &c));
        let right = nf(&multiply(&inst, &a, &nf(&multiply(&inst, &b, &c))));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn expressions_round_trip(e in element(2, 2, 3)) {
        let inst = scaled_projection(&[int(1), int(2)]).unwrap();
        let text = op_element_ast(&inst, &e).to_string();
        let ast = parse_expression(&text).unwrap();
        prop_assert_eq!(ast.to_string(), text.clone());
        prop_assert_eq!(ast.to_op_element(&inst).unwrap(), e);
    }
}
