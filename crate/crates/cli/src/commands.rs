use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use mrb_core::algebra::{reweight, MrbAlgebraInstance, ReweightSpec};
use mrb_core::expr::{free_module_ast, op_element_ast, parse_expression};
use mrb_core::io::{self, InstanceDoc, InstanceField, LoadedModule, ModuleDoc};
use mrb_core::linalg::{Matrix, Subspace};
use mrb_core::modules::{
    direct_sum, hom_module, hom_space, module_constants, quotient_module, restricted_free, restricted_lift,
    reweight_module, FdBimodule, FdLeftModule, FdModule, FdRightModule, HomModule, HomModuleInput, InstanceRef,
    LeftSide, ModuleSide, RightSide,
};
use mrb_core::operated::{ideal_generators, lift, GeneratorSet};
use mrb_core::opring::{
    components, confluence_probe, free_module_normal_form, normalize_with, truncated_quotient_oracle, OpElement,
    Strategy,
};
use mrb_core::scalar::{format_rational, int, parse_rational, Scalar};
use mrb_core::tensor::{
    adjunction_check, catalog_injections, flatness_probe, flatness_probe_left, tensor_product, FlatnessReport,
};
use mrb_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::render;
use crate::{Command, Options, StrategyArg, Variant};

pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

fn outcome(report: Value, ok: bool) -> Result<Outcome> {
    Ok(Outcome { report, ok })
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Malformed(_) => "malformed",
        Error::UnknownLabel { .. } => "unknown_label",
        Error::NotVerified => "not_verified",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::InstanceMismatch => "instance_mismatch",
        Error::ClosureViolation { .. } => "closure_violation",
        Error::NotModuleConstant { .. } => "not_module_constant",
        Error::Hypothesis(_) => "hypothesis",
        Error::NotWellDefined(_) => "not_well_defined",
        Error::NotSurjective => "not_surjective",
        Error::NotInjective => "not_injective",
        Error::Syntax { .. } => "syntax",
        Error::Document(_) => "document",
    }
}

fn verified_instance(spec: &str) -> Result<InstanceRef> {
    let inst = io::load_instance(spec)?;
    let inst = inst
        .verified()
        .map_err(|r| Error::Hypothesis(format!("instance `{spec}` fails the identity at {} places", r.violations.len())))?;
    Ok(Arc::new(inst))
}

struct Loaded {
    module: LoadedModule,
    doc: ModuleDoc,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Loaded> {
    let doc: ModuleDoc = serde_json::from_str(&read(path)?).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    let module = doc.to_module(path.parent())?;
    match &module {
        LoadedModule::Left(m) => m.instance().require_verified()?,
        LoadedModule::Right(m) => m.instance().require_verified()?,
        LoadedModule::Bimodule(b) => {
            b.left().instance().require_verified()?;
            b.right().instance().require_verified()?;
        }
    }
    Ok(Loaded { module, doc })
}

fn wrong_side(path: &Path, wanted: &str) -> Error {
    Error::InvalidArgument(format!("{} is not a {wanted} module", path.display()))
}

fn load_left(path: &Path) -> Result<(FdLeftModule, InstanceField)> {
    let l = load(path)?;
    match l.module {
        LoadedModule::Left(m) => Ok((m, l.doc.instance)),
        _ => Err(wrong_side(path, "left")),
    }
}

fn load_right(path: &Path) -> Result<(FdRightModule, InstanceField)> {
    let l = load(path)?;
    match l.module {
        LoadedModule::Right(m) => Ok((m, l.doc.instance)),
        _ => Err(wrong_side(path, "right")),
    }
}

fn load_bimodule(path: &Path) -> Result<(FdBimodule, InstanceField, InstanceField)> {
    let l = load(path)?;
    match l.module {
        LoadedModule::Bimodule(m) => {
            let right = l.doc.right_instance.clone().unwrap_or_else(|| l.doc.instance.clone());
            Ok((m, l.doc.instance, right))
        }
        _ => Err(wrong_side(path, "bimodule")),
    }
}

fn parse_vector_arg(text: &str) -> Result<Vec<Scalar>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            parse_rational(s).ok_or_else(|| Error::InvalidArgument(format!("`{s}` is not a rational")))
        })
        .collect()
}

fn subspace(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| render::vector(v)).collect::<Vec<_>>(),
    })
}

fn module_doc<S: ModuleSide>(m: &FdModule<S>, instance: InstanceField) -> Value {
    serde_json::to_value(ModuleDoc::from_module(m, instance)).expect("serializable")
}

fn inline(inst: &MrbAlgebraInstance) -> InstanceField {
    InstanceField::Inline(Box::new(InstanceDoc::from_instance(inst)))
}

pub fn run(cmd: &Command, opts: &Options) -> Result<Outcome> {
    match cmd {
        Command::CheckAlgebra { instance } => check_algebra(instance),
        Command::CheckModule { module } => check_module(module),
        Command::Normalize { instance, expr, strategy } => normalize_cmd(instance, expr, *strategy),
        Command::Confluence { instance } => confluence(instance, opts),
        Command::Oracle { instance, expr } => oracle(instance, expr.as_deref(), opts),
        Command::Quotient { module, vectors } => quotient(module, vectors),
        Command::DirectSum { modules } => direct_sum_cmd(modules),
        Command::Mc { module } => mc(module),
        Command::RestrictedFree { instance, generators } => restricted_free_cmd(instance, generators),
        Command::Hom { source, target } => hom(source, target),
        Command::HomModule { variant, m, n } => hom_module_cmd(*variant, m, n),
        Command::Reweight { target, spec, random } => reweight_cmd(target, spec.as_deref(), *random, opts),
        Command::Tensor { left, right } => tensor(left, right),
        Command::Adjunction { m, s, t } => adjunction(m, s, t),
        Command::FlatProbe { module } => flat_probe(module),
        Command::Lift { module, images, expr } => lift_cmd(module, images, expr.as_deref(), opts),
    }
}

fn check_algebra(spec: &str) -> Result<Outcome> {
    let mut inst = io::load_instance(spec)?;
    let presentation = inst.algebra().check_presentation();
    let report = inst.check_mrb_identity();
    let ok = presentation.is_empty() && report.is_empty();
    outcome(
        json!({
            "instance": spec,
            "dim": inst.dim(),
            "omega": inst.omega(),
            "presentation": render::presentation(&inst, &presentation),
            "identity": render::mrb(&inst, &report),
            "verified": ok,
        }),
        ok,
    )
}

fn check_module(path: &Path) -> Result<Outcome> {
    let l = load(path)?;
    let (report, ok) = match &l.module {
        LoadedModule::Left(m) => {
            let r = m.check();
            (render::module(m, &r), r.is_empty())
        }
        LoadedModule::Right(m) => {
            let r = m.check();
            (render::module(m, &r), r.is_empty())
        }
        LoadedModule::Bimodule(m) => {
            let r = m.check();
            (render::bimodule(m, &r), r.is_empty())
        }
    };
    outcome(json!({ "side": l.doc.side, "dim": l.doc.dim, "report": report }), ok)
}

fn strategy(s: StrategyArg) -> Strategy {
    match s {
        StrategyArg::Leftmost => Strategy::Leftmost,
        StrategyArg::Rightmost => Strategy::Rightmost,
    }
}

fn normalize_cmd(spec: &str, text: &str, s: StrategyArg) -> Result<Outcome> {
    let inst = verified_instance(spec)?;
    let ast = parse_expression(text)?;
    let s = strategy(s);
    if ast.has_generators() {
        let gens = GeneratorSet::new(ast.generator_names())?;
        let e = ast.to_free_module_element(&inst, &gens)?;
        let mut rules = 0;
        for (_, part) in components(&e) {
            rules += normalize_with(&inst, &part, s).rule_applications;
        }
        let nf = free_module_normal_form(&inst, &e);
        return outcome(
            json!({
                "kind": "module",
                "input": free_module_ast(&inst, &gens, &e).to_string(),
                "normal_form": free_module_ast(&inst, &gens, &nf).to_string(),
                "rule_applications": rules,
                "strategy": s.tag(),
            }),
            true,
        );
    }
    let e = ast.to_op_element(&inst)?;
    let r = normalize_with(&inst, &e, s);
    outcome(
        json!({
            "kind": "operator",
            "input": op_element_ast(&inst, &e).to_string(),
            "normal_form": op_element_ast(&inst, &r.output).to_string(),
            "rule_applications": r.rule_applications,
            "strategy": s.tag(),
        }),
        true,
    )
}

fn confluence(spec: &str, opts: &Options) -> Result<Outcome> {
    let inst = verified_instance(spec)?;
    let r = confluence_probe(&inst, opts.max_qdegree)?;
    let text = |e: &OpElement| op_element_ast(&inst, e).to_string();
    outcome(
        json!({
            "instance": spec,
            "max_qdegree": opts.max_qdegree,
            "words_checked": r.words_checked,
            "reductions_compared": r.reductions_compared,
            "confluent": r.is_empty(),
            "discrepancies": r.discrepancies.iter().map(|d| json!({
                "word": text(&OpElement::term(d.word.clone(), int(1))),
                "first": d.first,
                "second": d.second,
                "first_normal_form": text(&d.first_normal_form),
                "second_normal_form": text(&d.second_normal_form),
                "difference_in_ideal": d.difference_in_ideal,
            })).collect::<Vec<_>>(),
        }),
        r.is_empty(),
    )
}

fn oracle(spec: &str, expr: Option<&str>, opts: &Options) -> Result<Outcome> {
    let inst = verified_instance(spec)?;
    let o = truncated_quotient_oracle(&inst, opts.max_qdegree)?;
    let text = |e: &OpElement| op_element_ast(&inst, e).to_string();
    let mut report = json!({
        "instance": spec,
        "max_qdegree": opts.max_qdegree,
        "ambient_dim": o.ambient_dim(),
        "relation_count": o.relation_count(),
        "relation_rank": o.relation_rank(),
        "quotient_dim": o.dim(),
        "coset_basis": o.coset_basis().into_iter().map(|w| text(&OpElement::term(w, int(1)))).collect::<Vec<_>>(),
    });
    if let Some(t) = expr {
        let e = parse_expression(t)?.to_op_element(&inst)?;
        report["expression"] = json!({
            "input": text(&e),
            "in_ideal": o.in_ideal(&e),
            "class": o.project(&e).map(|v| render::vector(&v)),
        });
    }
    outcome(report, true)
}

fn quotient(path: &Path, vectors: &[String]) -> Result<Outcome> {
    let l = load(path)?;
    let vs = vectors.iter().map(|v| parse_vector_arg(v)).collect::<Result<Vec<_>>>()?;
    fn go<S: ModuleSide>(m: &FdModule<S>, vs: &[Vec<Scalar>], inst: InstanceField) -> Result<Outcome> {
        if vs.iter().any(|v| v.len() != m.dim()) {
            return Err(Error::InvalidArgument(format!("vectors must have length {}", m.dim())));
        }
        let n = Subspace::span(m.dim(), vs);
        match quotient_module(m, &n) {
            Ok(q) => outcome(
                json!({
                    "closed": true,
                    "subspace": subspace(&n),
                    "dim": q.module.dim(),
                    "representatives": q.space.representatives().iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "projection": render::matrix(q.projection.matrix()),
                    "module": module_doc(&q.module, inst),
                }),
                true,
            ),
            Err(Error::ClosureViolation { generator }) => outcome(
                json!({ "closed": false, "subspace": subspace(&n), "violated_by": generator }),
                false,
            ),
            Err(e) => Err(e),
        }
    }
    match &l.module {
        LoadedModule::Left(m) => go(m, &vs, l.doc.instance),
        LoadedModule::Right(m) => go(m, &vs, l.doc.instance),
        LoadedModule::Bimodule(_) => Err(wrong_side(path, "one-sided")),
    }
}

fn direct_sum_cmd(paths: &[PathBuf]) -> Result<Outcome> {
    let loaded = paths.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    fn go<S: ModuleSide>(parts: Vec<FdModule<S>>, inst: InstanceField) -> Result<Outcome> {
        let sum = direct_sum(parts[0].instance(), &parts)?;
        let report = sum.module.check();
        outcome(
            json!({
                "dim": sum.module.dim(),
                "offsets": sum.offsets(),
                "valid": report.is_empty(),
                "module": module_doc(&sum.module, inst),
            }),
            report.is_empty(),
        )
    }
    let inst = loaded[0].doc.instance.clone();
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for (l, p) in loaded.into_iter().zip(paths) {
        match l.module {
            LoadedModule::Left(m) => lefts.push(m),
            LoadedModule::Right(m) => rights.push(m),
            LoadedModule::Bimodule(_) => return Err(wrong_side(p, "one-sided")),
        }
    }
    match (lefts.is_empty(), rights.is_empty()) {
        (false, true) => go(lefts, inst),
        (true, false) => go(rights, inst),
        _ => Err(Error::InvalidArgument("summands must all be left or all be right modules".into())),
    }
}

fn mc(path: &Path) -> Result<Outcome> {
    let (m, _) = load_left(path)?;
    let s = module_constants(&m);
    outcome(json!({ "module_dim": m.dim(), "module_constants": subspace(&s) }), true)
}

fn restricted_free_cmd(spec: &str, names: &[String]) -> Result<Outcome> {
    let inst = verified_instance(spec)?;
    let gens = GeneratorSet::new(names.to_vec())?;
    let free = restricted_free(&inst, &gens);
    let report = free.module.check();
    outcome(
        json!({
            "generators": gens.names(),
            "dim": free.module.dim(),
            "generator_vectors": (0..gens.len()).map(|g| render::vector(&free.generator_vector(g))).collect::<Vec<_>>(),
            "valid": report.is_empty(),
            "module": module_doc(&free.module, InstanceField::Name(spec.to_string())),
        }),
        report.is_empty(),
    )
}

fn hom_basis(s: &Subspace, rows: usize, cols: usize) -> Value {
    Value::from(
        s.basis()
            .iter()
            .map(|v| render::matrix(&Matrix::from_vec(rows, cols, v.clone())))
            .collect::<Vec<_>>(),
    )
}

fn hom(source: &Path, target: &Path) -> Result<Outcome> {
    let a = load(source)?;
    let b = load(target)?;
    fn go<S: ModuleSide>(m: &FdModule<S>, n: &FdModule<S>) -> Result<Outcome> {
        let s = hom_space(m, n)?;
        let mut report = json!({
            "side": crate::render::side_name(m.side()),
            "dim": s.dim(),
            "basis": hom_basis(&s, n.dim(), m.dim()),
        });
        if m == n {
            report["contains_identity"] = json!(s.contains(&Matrix::identity(m.dim()).to_vec()));
        }
        outcome(report, true)
    }
    match (&a.module, &b.module) {
        (LoadedModule::Left(m), LoadedModule::Left(n)) => go(m, n),
        (LoadedModule::Right(m), LoadedModule::Right(n)) => go(m, n),
        _ => Err(Error::InvalidArgument("hom needs two left or two right modules".into())),
    }
}

fn hom_module_cmd(variant: Variant, m: &Path, n: &Path) -> Result<Outcome> {
    let (result, instance) = match variant {
        Variant::A => {
            let (m, _) = load_right(m)?;
            let (n, left, _) = load_bimodule(n)?;
            (hom_module(HomModuleInput::A { m: &m, n: &n })?, left)
        }
        Variant::B => {
            let (m, _) = load_left(m)?;
            let (n, _, right) = load_bimodule(n)?;
            (hom_module(HomModuleInput::B { m: &m, n: &n })?, right)
        }
        Variant::C => {
            let (m, _, right) = load_bimodule(m)?;
            let (n, _) = load_left(n)?;
            (hom_module(HomModuleInput::C { m: &m, n: &n })?, right)
        }
        Variant::D => {
            let (m, left, _) = load_bimodule(m)?;
            let (n, _) = load_right(n)?;
            (hom_module(HomModuleInput::D { m: &m, n: &n })?, left)
        }
    };
    let (report, doc) = match &result.module {
        HomModule::Left(h) => (render::module(h, &h.check()), module_doc(h, instance)),
        HomModule::Right(h) => (render::module(h, &h.check()), module_doc(h, instance)),
    };
    let ok = result.module.report().is_empty();
    outcome(
        json!({
            "dim": result.module.dim(),
            "basis": hom_basis(&result.space, result.rows, result.cols),
            "report": report,
            "module": doc,
        }),
        ok,
    )
}

fn parse_spec(text: &str) -> Result<ReweightSpec> {
    let text = if Path::new(text).is_file() { read(Path::new(text))? } else { text.to_string() };
    let raw: IndexMap<String, IndexMap<String, String>> =
        serde_json::from_str(&text).map_err(|e| Error::Document(format!("reweighting spec: {e}")))?;
    let rows = raw
        .into_iter()
        .map(|(label, row)| {
            let row = row
                .into_iter()
                .map(|(w, c)| {
                    parse_rational(&c)
                        .map(|c| (w, c))
                        .ok_or_else(|| Error::Document(format!("`{c}` is not a rational")))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            Ok((label, row))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReweightSpec { rows })
}

/// Rows with numerators in [-3, 3] and denominators in [1, 3].
fn random_spec(inst: &MrbAlgebraInstance, seed: u64) -> ReweightSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=inst.omega_len() + 1);
    let rows = (1..=k)
        .map(|i| {
            let mut row = BTreeMap::new();
            while row.is_empty() {
                for l in inst.omega() {
                    let c = Scalar::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into());
                    if c != int(0) {
                        row.insert(l.clone(), c);
                    }
                }
            }
            (i.to_string(), row)
        })
        .collect();
    ReweightSpec { rows }
}

fn spec_json(spec: &ReweightSpec) -> Value {
    Value::Object(
        spec.rows
            .iter()
            .map(|(l, row)| {
                let row = row.iter().map(|(w, c)| (w.clone(), json!(format_rational(c)))).collect();
                (l.clone(), Value::Object(row))
            })
            .collect(),
    )
}

fn reweight_cmd(target: &str, spec: Option<&str>, random: bool, opts: &Options) -> Result<Outcome> {
    let path = Path::new(target);
    let module = if path.is_file() {
        let text = read(path)?;
        let is_module = serde_json::from_str::<Value>(&text)
            .map(|v| v.get("side").is_some())
            .unwrap_or(false);
        if is_module {
            Some(load(path)?)
        } else {
            None
        }
    } else {
        None
    };
    let inst: InstanceRef = match &module {
        Some(l) => match &l.module {
            LoadedModule::Left(m) => m.instance().clone(),
            LoadedModule::Right(m) => m.instance().clone(),
            LoadedModule::Bimodule(_) => return Err(wrong_side(path, "one-sided")),
        },
        None => verified_instance(target)?,
    };
    let spec = match (spec, random) {
        (Some(s), false) => parse_spec(s)?,
        (None, true) => random_spec(&inst, opts.seed),
        _ => return Err(Error::InvalidArgument("give a reweighting spec or --random".into())),
    };
    let new = reweight(&inst, &spec)?;
    let identity = new.mrb_report();
    let mut ok = identity.is_empty();
    let mut report = json!({
        "spec": spec_json(&spec),
        "instance": InstanceDoc::from_instance(&new),
        "identity": render::mrb(&new, &identity),
    });
    if let Some(l) = module {
        fn go<S: ModuleSide>(m: &FdModule<S>, spec: &ReweightSpec, new: &MrbAlgebraInstance) -> Result<(Value, bool)> {
            let r = reweight_module(m, spec)?;
            let check = r.check();
            Ok((
                json!({
                    "report": render::module(&r, &check),
                    "module": module_doc(&r, inline(new)),
                }),
                check.is_empty(),
            ))
        }
        let (v, valid) = match &l.module {
            LoadedModule::Left(m) => go(m, &spec, &new)?,
            LoadedModule::Right(m) => go(m, &spec, &new)?,
            LoadedModule::Bimodule(_) => unreachable!("rejected above"),
        };
        ok &= valid;
        report["module"] = v;
    }
    outcome(report, ok)
}

fn tensor(left: &Path, right: &Path) -> Result<Outcome> {
    let (m, _) = load_right(left)?;
    let (n, _) = load_left(right)?;
    let t = tensor_product(&m, &n)?;
    let b = t.bilinearity_report();
    outcome(
        json!({
            "dim": t.dim(),
            "ambient_dim": t.ambient_dim(),
            "relation_rank": t.quotient().relation_rank(),
            "representatives": t.representative_pairs().iter().map(|(p, q)| [p + 1, q + 1]).collect::<Vec<_>>(),
            "bilinearity": { "checked": b.checked, "failures": b.failures },
        }),
        b.is_empty(),
    )
}

fn adjunction(m: &Path, s: &Path, t: &Path) -> Result<Outcome> {
    let (m, _) = load_right(m)?;
    let (s, _, _) = load_bimodule(s)?;
    let (t, _) = load_right(t)?;
    let r = adjunction_check(&m, &s, &t)?;
    outcome(
        json!({
            "tensor_side_dim": r.tensor_side_dim,
            "hom_side_dim": r.hom_side_dim,
            "theta": render::matrix(&r.theta),
            "theta_prime": render::matrix(&r.theta_prime),
            "theta_after_theta_prime_is_identity": r.theta_after_theta_prime_is_identity,
            "theta_prime_after_theta_is_identity": r.theta_prime_after_theta_is_identity,
            "isomorphism": r.is_isomorphism(),
        }),
        r.is_isomorphism(),
    )
}

fn flatness(r: &FlatnessReport) -> Value {
    json!({
        "flat_on_probes": r.all_preserved(),
        "probes": r.probes.iter().map(|p| json!({
            "probe": p.probe,
            "source_dim": p.source_dim,
            "target_dim": p.target_dim,
            "tensor_source_dim": p.tensor_source_dim,
            "tensor_target_dim": p.tensor_target_dim,
            "induced_rank": p.induced_rank,
            "preserved": p.preserved,
            "witness": p.witness.as_ref().map(|w| render::vector(w)),
        })).collect::<Vec<_>>(),
    })
}

fn flat_probe(path: &Path) -> Result<Outcome> {
    let l = load(path)?;
    let r = match &l.module {
        LoadedModule::Right(m) => flatness_probe(m, &catalog_injections::<LeftSide>(m.instance()))?,
        LoadedModule::Left(m) => flatness_probe_left(m, &catalog_injections::<RightSide>(m.instance()))?,
        LoadedModule::Bimodule(_) => return Err(wrong_side(path, "one-sided")),
    };
    outcome(flatness(&r), true)
}

fn lift_cmd(path: &Path, images: &[String], expr: Option<&str>, opts: &Options) -> Result<Outcome> {
    let (target, _) = load_left(path)?;
    let inst = target.instance().clone();
    let mut names = Vec::new();
    let mut vectors = Vec::new();
    for item in images {
        let (name, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("`{item}` is not of the form name=vector")))?;
        names.push(name.trim().to_string());
        vectors.push(parse_vector_arg(v)?);
    }
    let gens = GeneratorSet::new(names.clone())?;
    let pairs: Vec<(String, Vec<Scalar>)> = names.iter().cloned().zip(vectors.iter().cloned()).collect();
    let phi = lift(&gens, &pairs, &target)?;
    let ideal = ideal_generators(&inst, &gens, opts.max_depth)?;
    let killed = ideal.iter().filter(|g| phi.eval(&g.element).iter().all(|x| *x == int(0))).count();
    let mut report = json!({
        "generators": gens.names(),
        "ideal_generators": ideal.len(),
        "ideal_generators_killed": killed,
    });
    if let Some(t) = expr {
        let ast = parse_expression(t)?;
        let e = ast.to_operated_element(&inst, &gens)?;
        report["value"] = render::vector(&phi.eval(&e));
    }
    let free = restricted_free(&inst, &gens);
    report["restricted"] = match restricted_lift(&free, &vectors, &target) {
        Ok(h) => json!({ "matrix": render::matrix(h.matrix()) }),
        Err(Error::NotModuleConstant { generator }) => json!({ "not_module_constant": generator }),
        Err(e) => return Err(e),
    };
    let ok = killed == ideal.len();
    outcome(report, ok)
}

