use num_traits::Zero;

use super::word::{expand, max_q_degree, OpElement, OpWord};
use crate::algebra::MrbAlgebraInstance;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Always rewrite the leftmost redex.
    Leftmost,
    /// Always rewrite the rightmost redex.
    Rightmost,
}

impl Strategy {
    pub fn tag(self) -> &'static str {
        match self {
            Strategy::Leftmost => "leftmost-innermost",
            Strategy::Rightmost => "rightmost-innermost",
        }
    }

    fn position(self, w: &OpWord) -> usize {
        match self {
            Strategy::Leftmost => 0,
            Strategy::Rightmost => w.q_degree() - 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteReport {
    pub input: OpElement,
    pub output: OpElement,
    pub rule_applications: usize,
    pub strategy: Strategy,
}

/// Rewrites the redex `Q_α r Q_β` starting at operator position `j`:
/// `a Q_α r Q_β b ↦ aP_α(r) Q_β b - a Q_β P_α(r)b - λ_β a Q_α rb - λ_α a Q_β rb`
/// where `a`, `b` are the neighbouring slots.
pub fn rewrite_at(inst: &MrbAlgebraInstance, w: &OpWord, j: usize, coeff: &Scalar) -> OpElement {
    assert!(j + 1 < w.q_degree(), "no redex at position {j}");
    let alg = inst.algebra();
    let (alpha, beta) = (w.ops[j], w.ops[j + 1]);
    let a = alg.basis_vector(w.slots[j]);
    let r = alg.basis_vector(w.slots[j + 1]);
    let b = alg.basis_vector(w.slots[j + 2]);
    let pr = inst.apply(alpha, &r);
    let rb = alg.mul(&r, &b);
    let prefix: Vec<Vec<Scalar>> = w.slots[..j].iter().map(|&s| alg.basis_vector(s)).collect();
    let suffix: Vec<Vec<Scalar>> = w.slots[j + 3..].iter().map(|&s| alg.basis_vector(s)).collect();
    let build = |left: Vec<Scalar>, op: usize, right: Vec<Scalar>, c: Scalar| {
        let mut slots = prefix.clone();
        slots.push(left);
        slots.push(right);
        slots.extend(suffix.iter().cloned());
        let mut ops = w.ops[..j].to_vec();
        ops.push(op);
        ops.extend_from_slice(&w.ops[j + 2..]);
        expand(&slots, &ops, &c)
    };
    let mut out = build(alg.mul(&a, &pr), beta, b.clone(), coeff.clone());
    out.add_assign(&build(a.clone(), beta, alg.mul(&pr, &b), -coeff.clone()));
    let lb = inst.weight(beta);
    let la = inst.weight(alpha);
    if !lb.is_zero() {
        out.add_assign(&build(a.clone(), alpha, rb.clone(), -(coeff * lb)));
    }
    if !la.is_zero() {
        out.add_assign(&build(a, beta, rb, -(coeff * la)));
    }
    out
}

/// Rewrites until every word has `q_degree <= 1`. The largest word (in
/// particular one of highest degree) is processed first; each application
/// replaces one word by words of one lower degree, so the loop terminates.
pub fn normalize_with(inst: &MrbAlgebraInstance, e: &OpElement, strategy: Strategy) -> RewriteReport {
    let mut current = e.clone();
    let mut irreducible = OpElement::new();
    let mut rule_applications = 0;
    while let Some((w, c)) = current.pop_last() {
        if w.q_degree() < 2 {
            irreducible.add_term(w, c);
            continue;
        }
        rule_applications += 1;
        let replaced = rewrite_at(inst, &w, strategy.position(&w), &c);
        current.add_assign(&replaced);
    }
    debug_assert!(max_q_degree(&irreducible) <= 1);
    RewriteReport {
        input: e.clone(),
        output: irreducible,
        rule_applications,
        strategy,
    }
}

pub fn normalize(inst: &MrbAlgebraInstance, e: &OpElement) -> RewriteReport {
    normalize_with(inst, e, Strategy::Leftmost)
}

pub fn normal_form(inst: &MrbAlgebraInstance, e: &OpElement) -> OpElement {
    normalize(inst, e).output
}

pub fn is_normal(e: &OpElement) -> bool {
    max_q_degree(e) <= 1
}
