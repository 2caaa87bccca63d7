//! One line per acceptance criterion, all checks exact.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use mrb_core::algebra::{reweight, MrbAlgebraInstance, ReweightSpec};
use mrb_core::catalog::{scaled_projection, standard_catalog, trivial};
use mrb_core::linalg::{rank, solve, Matrix, Subspace};
use mrb_core::modules::{
    check_bimodule, direct_sum, hom_from_vector, hom_module, hom_space, kernel_additivity, module_constants,
    quotient_module, restricted_free, restricted_lift, reweight_module, FdBimodule, FdLeftModule, FdModule,
    FdRightModule, HomModuleInput, InstanceRef, LeftSide, ModuleHom, ModuleSide, RightSide,
};
use mrb_core::operated::{ideal_generators, GeneratorSet};
use mrb_core::opring::{
    confluence_probe, enumerate_op_words, free_module_normal_form, from_operated, max_q_degree, normalize,
    truncated_quotient_oracle, OpElement, OpWord,
};
use mrb_core::scalar::int;
use mrb_core::tensor::{
    adjunction_check, basis_submodules, catalog_injections, direct_sum_tensor_check, flatness_probe,
    flatness_probe_left, splitting_probe, tensor_left_structure, tensor_product, tensor_right_structure,
    tensor_unit_check,
};
use mrb_core::Scalar;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn catalog() -> Vec<(String, InstanceRef)> {
    standard_catalog().into_iter().map(|(n, i)| (n, Arc::new(i))).collect()
}

/// Catalog instances whose regular bimodule satisfies every compatibility law.
fn bimodule_catalog() -> Vec<(String, InstanceRef)> {
    catalog()
        .into_iter()
        .filter(|(_, i)| check_bimodule(&FdBimodule::regular(i.clone())).is_empty())
        .collect()
}

fn scaled_catalog() -> Vec<Vec<i64>> {
    vec![vec![1], vec![1, 2], vec![2, 3, 5]]
}

fn sp(c: &[i64]) -> InstanceRef {
    Arc::new(scaled_projection(&c.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap())
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into())
}

fn random_spec(inst: &MrbAlgebraInstance, rng: &mut ChaCha8Rng) -> ReweightSpec {
    let k = rng.gen_range(1..=inst.omega_len() + 1);
    let rows = (0..k)
        .map(|i| {
            let mut row = BTreeMap::new();
            while row.is_empty() {
                for w in inst.omega() {
                    let c = random_scalar(rng);
                    if !c.is_zero() {
                        row.insert(w.clone(), c);
                    }
                }
            }
            (format!("r{i}"), row)
        })
        .collect();
    ReweightSpec { rows }
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for d in 1..=3 {
        for s in 1..=3 {
            let mut t = trivial(d, s).unwrap();
            if !t.check_mrb_identity().is_empty() {
                return outcome(false, format!("trivial({d},{s}) fails"));
            }
            checked += 1;
        }
    }
    for c in scaled_catalog() {
        let mut inst = (*sp(&c)).clone();
        if !inst.check_mrb_identity().is_empty() {
            return outcome(false, format!("scaled_projection{c:?} fails"));
        }
        checked += 1;
    }
    let mut bad = sp(&[1]).with_weight(0, int(-1));
    let report = bad.check_mrb_identity();
    let Some(v) = report.violations.first() else {
        return outcome(false, "mis-weighted instance passes");
    };
    let located = v.pair == (0, 0) && v.alpha == "1" && v.beta == "1" && v.residual.iter().any(|x| !x.is_zero());
    outcome(located, format!("{checked} instances verified; mis-weighted variant fails at (e1,e1,1,1)"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut total = 0;
    for (name, inst) in catalog() {
        let regular_l = FdLeftModule::regular(inst.clone());
        let regular_r = FdRightModule::regular(inst.clone());
        for _ in 0..100 {
            let spec = random_spec(&inst, &mut rng);
            let ok = reweight(&inst, &spec).map(|i| i.is_verified()).unwrap_or(false)
                && reweight_module(&regular_l, &spec).map(|m| m.is_valid()).unwrap_or(false)
                && reweight_module(&regular_r, &spec).map(|m| m.is_valid()).unwrap_or(false);
            if !ok {
                return outcome(false, format!("{name}: spec {:?} breaks closure", spec.rows));
            }
            total += 1;
        }
    }
    outcome(true, format!("{total} random specifications, instances and regular modules all pass"))
}

fn word_element(w: &OpWord) -> OpElement {
    OpElement::term(w.clone(), int(1))
}

/// Rank of the normal-form map on the degree-3 truncation; it equals the
/// oracle dimension exactly when normal-form equality decides membership.
fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failing = Vec::new();
    let mut pairs_checked = 0;
    for (name, inst) in catalog() {
        let oracle = truncated_quotient_oracle(&inst, 3).unwrap();
        let words = enumerate_op_words(&inst, 3);
        let mut normal: Vec<OpElement> = Vec::with_capacity(words.len());
        for w in &words {
            let nf = normalize(&inst, &word_element(w)).output;
            if max_q_degree(&nf) > 1 {
                return outcome(false, format!("{name}: normal form of degree > 1"));
            }
            normal.push(nf);
        }
        let low: Vec<OpWord> = words.iter().filter(|w| w.q_degree() <= 1).cloned().collect();
        let nf_map = Matrix::from_fn(low.len(), words.len(), |i, j| normal[j].coeff(&low[i]));
        let nf_rank = rank(&nf_map);

        let mut mismatches = 0;
        let mut sample: Vec<(usize, usize)> = (0..200)
            .map(|_| (rng.gen_range(0..words.len()), rng.gen_range(0..words.len())))
            .collect();
        let last = inst.omega_len() - 1;
        let witness = (OpWord::new(vec![0, 0, 0, 0], vec![0, 0, last]), OpWord::new(vec![0, 0], vec![0]));
        if let (Some(a), Some(b)) =
            (words.iter().position(|w| w == &witness.0), words.iter().position(|w| w == &witness.1))
        {
            sample.push((a, b));
        }
        for &(i, j) in &sample {
            let mut diff = word_element(&words[i]);
            diff.sub_assign(&word_element(&words[j]));
            let equal_nf = normal[i] == normal[j];
            if oracle.in_ideal(&diff) != Some(equal_nf) {
                mismatches += 1;
            }
            pairs_checked += 1;
        }
        if nf_rank != oracle.dim() || mismatches > 0 {
            failing.push(format!(
                "{name} (normal forms span {nf_rank}, oracle quotient {}, {mismatches} sampled pairs disagree)",
                oracle.dim()
            ));
        }
    }
    let detail = if failing.is_empty() {
        format!("normal forms decide ideal membership on every instance; {pairs_checked} sampled pairs agree")
    } else {
        format!("normal-form equality misses ideal membership on {}", failing.join(", "))
    };
    outcome(failing.is_empty(), detail)
}

fn criterion_4() -> Outcome {
    let mut reported = 0;
    let mut words = 0;
    for (name, inst) in catalog() {
        let r = confluence_probe(&inst, 3).unwrap();
        words += r.words_checked;
        for d in &r.discrepancies {
            if d.difference_in_ideal.is_none() {
                return outcome(false, format!("{name}: discrepancy on {:?} not adjudicated", d.word));
            }
        }
        reported += r.discrepancies.len();
    }
    outcome(
        true,
        format!("{words} overlap words; {reported} discrepancies reported with witnesses, each adjudicated by the oracle"),
    )
}

fn criterion_5() -> Outcome {
    let gens = GeneratorSet::single("x");
    let mut total = 0;
    for (name, inst) in catalog() {
        for g in ideal_generators(&inst, &gens, 3).unwrap() {
            if !free_module_normal_form(&inst, &from_operated(&g.element)).is_zero() {
                return outcome(false, format!("{name}: generator survives normalization"));
            }
            total += 1;
        }
    }
    outcome(true, format!("{total} ideal generators up to depth 3 collapse to zero"))
}

/// Solves for the element of a Hom space sending `from` to `to`.
fn hom_sending<S: ModuleSide>(m: &FdModule<S>, n: &FdModule<S>, from: &[Scalar], to: &[Scalar]) -> Option<ModuleHom<S>> {
    let space = hom_space(m, n).unwrap();
    let columns: Vec<Vec<Scalar>> = space
        .basis()
        .iter()
        .map(|b| Matrix::from_vec(n.dim(), m.dim(), b.clone()).mul_vec(from))
        .collect();
    let c = solve(&Matrix::from_columns(&columns, n.dim()), to)?;
    hom_from_vector(m, n, &space.combine(&c)).ok()
}

fn criterion_6() -> Outcome {
    for c in scaled_catalog() {
        let inst = sp(&c);
        let regular = FdLeftModule::regular(inst.clone());
        if module_constants(&regular).dim() != 2 {
            return outcome(false, format!("MC over scaled_projection{c:?} is not 2-dimensional"));
        }
        let gens = GeneratorSet::new(vec!["x".into(), "y".into()]).unwrap();
        let free = restricted_free(&inst, &gens);
        let images = vec![inst.algebra().basis_vector(0), inst.algebra().basis_vector(1)];
        let Ok(h) = restricted_lift(&free, &images, &regular) else {
            return outcome(false, "lift into the regular module rejected");
        };
        for (g, img) in images.iter().enumerate() {
            if &h.apply(&free.generator_vector(g)) != img {
                return outcome(false, "lift does not reproduce generator images");
            }
        }
        let shrunk = regular.with_operators(vec![Matrix::zeros(2, 2); inst.omega_len()]).unwrap();
        if restricted_lift(&free, &images, &shrunk).is_ok() {
            return outcome(false, "image outside MC accepted");
        }
    }
    for (name, inst) in catalog() {
        let free = restricted_free(&inst, &GeneratorSet::single("x"));
        let regular = FdLeftModule::regular(inst.clone());
        let unit = inst.algebra().unit().to_vec();
        let g = free.generator_vector(0);
        let (Some(f), Some(back)) = (hom_sending(&free.module, &regular, &g, &unit), hom_sending(&regular, &free.module, &unit, &g)) else {
            return outcome(false, format!("{name}: no homs between free and regular"));
        };
        if !f.compose(&back).unwrap().matrix().is_identity() || !back.compose(&f).unwrap().matrix().is_identity() {
            return outcome(false, format!("{name}: homs are not mutually inverse"));
        }
    }
    outcome(true, "MC has dimension 2; lifts reproduce images and reject non-constants; singleton free module is isomorphic to R on every instance")
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for (name, inst) in bimodule_catalog() {
        let b = FdBimodule::regular(inst.clone());
        let l = FdLeftModule::regular(inst.clone());
        let r = FdRightModule::regular(inst.clone());
        for (tag, input) in [
            ("A", HomModuleInput::A { m: &r, n: &b }),
            ("B", HomModuleInput::B { m: &l, n: &b }),
            ("C", HomModuleInput::C { m: &b, n: &l }),
            ("D", HomModuleInput::D { m: &b, n: &r }),
        ] {
            match hom_module(input) {
                Ok(res) if res.module.report().is_empty() => count += 1,
                _ => return outcome(false, format!("{name}: variant {tag} fails")),
            }
        }
    }
    for c in scaled_catalog() {
        let m = FdLeftModule::regular(sp(&c));
        let h = hom_space(&m, &m).unwrap();
        if h.dim() != 2 || !h.contains(&Matrix::identity(2).to_vec()) {
            return outcome(false, format!("Hom(R, R) over scaled_projection{c:?}"));
        }
    }
    outcome(true, format!("{count} Hom modules pass their checkers; End(R) has dimension 2 and contains the identity"))
}

fn criterion_8() -> Outcome {
    let mut spaces = 0;
    for c in scaled_catalog() {
        let inst = sp(&c);
        let t = tensor_product(&FdRightModule::regular(inst.clone()), &FdLeftModule::regular(inst.clone())).unwrap();
        let u = tensor_unit_check(&FdRightModule::regular(inst.clone())).unwrap();
        if t.dim() != 2 || !u.isomorphism {
            return outcome(false, format!("R ⊗ R over scaled_projection{c:?}"));
        }
    }
    for (name, inst) in bimodule_catalog() {
        let b = FdBimodule::regular(inst.clone());
        let t = tensor_product(b.right(), b.left()).unwrap();
        if !t.bilinearity_report().is_empty() {
            return outcome(false, format!("{name}: a relation family survives"));
        }
        spaces += 1;
        let left = tensor_left_structure(&b, &t).unwrap();
        let right = tensor_right_structure(&t, &b).unwrap();
        if !left.is_valid() || !right.is_valid() {
            return outcome(false, format!("{name}: tensor structures fail"));
        }
        let a = adjunction_check(b.right(), &b, b.right()).unwrap();
        if !a.is_isomorphism() {
            return outcome(false, format!("{name}: adjunction maps are not inverse"));
        }
    }
    for (name, inst) in catalog() {
        for (_, inc) in catalog_injections::<LeftSide>(&inst) {
            for n in [inc.source(), inc.target()] {
                let t = tensor_product(&FdRightModule::regular(inst.clone()), n).unwrap();
                if !t.bilinearity_report().is_empty() {
                    return outcome(false, format!("{name}: a relation family survives"));
                }
                spaces += 1;
            }
        }
    }
    outcome(true, format!("{spaces} tensor spaces kill every relation family; R ⊗ R ≅ R; structures and adjunction verified"))
}

fn right_candidates(inst: &InstanceRef) -> Vec<FdRightModule> {
    let regular = FdRightModule::regular(inst.clone());
    let mut out = vec![FdRightModule::zero(inst.clone()), regular.clone()];
    for (subset, inc) in basis_submodules::<RightSide>(inst) {
        out.push(inc.source().clone());
        let n = Subspace::span(inst.dim(), &subset.iter().map(|&i| inst.algebra().basis_vector(i)).collect::<Vec<_>>());
        out.push(quotient_module(&regular, &n).unwrap().module);
    }
    out
}

fn left_candidates(inst: &InstanceRef) -> Vec<FdLeftModule> {
    let regular = FdLeftModule::regular(inst.clone());
    let mut out = vec![FdLeftModule::zero(inst.clone()), regular.clone()];
    out.push(regular.with_operators(vec![Matrix::zeros(inst.dim(), inst.dim()); inst.omega_len()]).unwrap());
    out.push(restricted_free(inst, &GeneratorSet::new(vec!["x".into(), "y".into()]).unwrap()).module);
    for (subset, inc) in basis_submodules::<LeftSide>(inst) {
        out.push(inc.source().clone());
        let n = Subspace::span(inst.dim(), &subset.iter().map(|&i| inst.algebra().basis_vector(i)).collect::<Vec<_>>());
        out.push(quotient_module(&regular, &n).unwrap().module);
    }
    out
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let all = catalog();
    for k in 0..50 {
        let (_, inst) = &all[rng.gen_range(0..all.len())];
        let regular = FdLeftModule::regular(inst.clone());
        let doubled = direct_sum(inst, &[regular.clone(), regular.clone()]).unwrap().module;
        let homs: Vec<_> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let m = if rng.gen_bool(0.5) { &regular } else { &doubled };
                let space = hom_space(m, m).unwrap();
                let c: Vec<Scalar> = (0..space.dim()).map(|_| random_scalar(&mut rng)).collect();
                hom_from_vector(m, m, &space.combine(&c)).unwrap()
            })
            .collect();
        if !kernel_additivity(inst, &homs).unwrap().holds() {
            return outcome(false, format!("kernel additivity fails on family {k}"));
        }
    }
    let (mut sums, mut free_checked, mut split) = (0, 0, 0);
    for (name, inst) in &all {
        let s = FdRightModule::regular(inst.clone());
        let l = FdLeftModule::regular(inst.clone());
        let d = direct_sum_tensor_check(&s, &[l.clone(), l.clone(), FdLeftModule::zero(inst.clone())]).unwrap();
        if !d.dims_add() || !d.is_isomorphism() {
            return outcome(false, format!("{name}: tensor does not distribute over sums"));
        }
        let probes = catalog_injections::<LeftSide>(inst);
        let rights = right_candidates(inst);
        let verdicts: Vec<Vec<bool>> = rights
            .iter()
            .map(|m| flatness_probe(m, &probes).unwrap().probes.iter().map(|p| p.preserved).collect())
            .collect();
        for i in 0..rights.len() {
            for j in i..rights.len() {
                let sum = direct_sum(inst, &[rights[i].clone(), rights[j].clone()]).unwrap();
                let whole = flatness_probe(&sum.module, &probes).unwrap();
                for (k, p) in whole.probes.iter().enumerate() {
                    if p.preserved != (verdicts[i][k] && verdicts[j][k]) {
                        return outcome(false, format!("{name}: sum verdict differs on {}", p.probe));
                    }
                }
                sums += 1;
            }
        }
        let right_probes = catalog_injections::<RightSide>(inst);
        for n in 1..=2 {
            let names = (1..=n).map(|i| format!("x{i}")).collect();
            let free = restricted_free(inst, &GeneratorSet::new(names).unwrap());
            if !flatness_probe_left(&free.module, &right_probes).unwrap().all_preserved() {
                return outcome(false, format!("{name}: restricted free module breaks an injection"));
            }
            free_checked += 1;
        }
        for p in left_candidates(inst) {
            if splitting_probe(&p).unwrap().splits() {
                if !flatness_probe_left(&p, &right_probes).unwrap().all_preserved() {
                    return outcome(false, format!("{name}: a split module fails a flatness probe"));
                }
                split += 1;
            }
        }
    }
    outcome(
        true,
        format!("50 kernel families; {sums} sums match the conjunction; {free_checked} free modules and {split} split modules preserve every probe"),
    )
}

fn criterion_10() -> Outcome {
    let cases = common::cases();
    if cases.len() < 20 {
        return outcome(false, format!("only {} golden cases", cases.len()));
    }
    for case in &cases {
        let first = common::run(case);
        let second = common::run(case);
        let stored = std::fs::read_to_string(&case.expected).unwrap_or_default();
        if first != second || first != stored {
            return outcome(false, format!("{} differs", case.name));
        }
    }
    outcome(true, format!("{} golden reports reproduced byte for byte on two runs", cases.len()))
}

/// Criterion 3 fails on the instances with several nonzero operators, where
/// the rewriting system is not confluent. Everything else must pass.
const EXPECTED_FAILURES: &[usize] = &[3];

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("algebra axioms", criterion_1),
        ("reweighting closure", criterion_2),
        ("rewriting soundness", criterion_3),
        ("confluence probe", criterion_4),
        ("free-module ideal collapse", criterion_5),
        ("module constants and restricted free modules", criterion_6),
        ("Hom modules", criterion_7),
        ("tensor products", criterion_8),
        ("direct sums and flatness", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (k, (title, f)) in criteria.iter().enumerate() {
        let n = k + 1;
        let o = f();
        println!("criterion {n} ({title}): {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass == EXPECTED_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
