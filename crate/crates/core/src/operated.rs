//! The free operated module on a generator set: mixable tensor words
//! `r_1 ⊗ ω_1 ⊗ ... ⊗ r_n ⊗ x` with basis entries in the `r` slots.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::algebra::MrbAlgebraInstance;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::modules::FdLeftModule;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::InvalidArgument(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Self { names })
    }

    pub fn single(name: &str) -> Self {
        Self {
            names: vec![name.to_string()],
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownLabel {
                kind: "generator",
                label: name.to_string(),
            })
    }
}

/// `b_{slots[0]} ⊗ ω_{ops[0]} ⊗ ... ⊗ b_{slots[n-1]} ⊗ x_generator`, so
/// `slots.len() == ops.len() + 1` and the depth is `slots.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatedWord {
    pub slots: Vec<usize>,
    pub ops: Vec<usize>,
    pub generator: usize,
}

impl OperatedWord {
    pub fn new(slots: Vec<usize>, ops: Vec<usize>, generator: usize) -> Self {
        assert!(!slots.is_empty() && slots.len() == ops.len() + 1, "malformed operated word");
        Self {
            slots,
            ops,
            generator,
        }
    }

    pub fn depth(&self) -> usize {
        self.slots.len()
    }
}

pub(crate) fn cmp_segments(a_slots: &[usize], a_ops: &[usize], b_slots: &[usize], b_ops: &[usize]) -> Ordering {
    for k in 0..a_slots.len().min(b_slots.len()) {
        let c = a_slots[k].cmp(&b_slots[k]);
        if c != Ordering::Equal {
            return c;
        }
        if let (Some(x), Some(y)) = (a_ops.get(k), b_ops.get(k)) {
            let c = x.cmp(y);
            if c != Ordering::Equal {
                return c;
            }
        }
    }
    a_slots.len().cmp(&b_slots.len())
}

impl Ord for OperatedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then(self.generator.cmp(&other.generator))
            .then_with(|| cmp_segments(&self.slots, &self.ops, &other.slots, &other.ops))
    }
}

impl PartialOrd for OperatedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type OperatedElement = LinComb<OperatedWord>;

pub fn max_depth(e: &OperatedElement) -> usize {
    e.keys().map(OperatedWord::depth).max().unwrap_or(0)
}

/// Left action: multiplies the leading slot of every word by `r`.
pub fn act(inst: &MrbAlgebraInstance, r: &[Scalar], e: &OperatedElement) -> OperatedElement {
    let a = inst.algebra();
    let mut out = OperatedElement::new();
    for (w, c) in e {
        let mut first = vec![Scalar::zero(); a.dim()];
        let b = a.basis_vector(w.slots[0]);
        for (k, x) in a.mul(r, &b).into_iter().enumerate() {
            first[k] = x;
        }
        for (k, x) in first.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut word = w.clone();
            word.slots[0] = k;
            out.add_term(word, c * x);
        }
    }
    out
}

/// `m'_ω`: prepends `1_R ⊗ ω`, with the unit expanded in the basis.
pub fn apply_operator(inst: &MrbAlgebraInstance, omega: usize, e: &OperatedElement) -> Result<OperatedElement> {
    if omega >= inst.omega_len() {
        return Err(Error::UnknownLabel {
            kind: "operator",
            label: omega.to_string(),
        });
    }
    let mut out = OperatedElement::new();
    for (w, c) in e {
        for (k, u) in inst.algebra().unit().iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let mut slots = Vec::with_capacity(w.slots.len() + 1);
            slots.push(k);
            slots.extend_from_slice(&w.slots);
            let mut ops = Vec::with_capacity(w.ops.len() + 1);
            ops.push(omega);
            ops.extend_from_slice(&w.ops);
            out.add_term(OperatedWord::new(slots, ops, w.generator), c * u);
        }
    }
    Ok(out)
}

/// `r ⊗ x` for an algebra element `r`.
pub fn generator_element(r: &[Scalar], generator: usize) -> OperatedElement {
    r.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (OperatedWord::new(vec![k], vec![], generator), x.clone()))
        .collect()
}

/// All words of depth `1..=max_depth` in canonical order.
pub fn enumerate_words(inst: &MrbAlgebraInstance, generators: usize, max_depth: usize) -> Vec<OperatedWord> {
    let (d, s) = (inst.dim(), inst.omega_len());
    let mut out = Vec::new();
    for depth in 1..=max_depth {
        for g in 0..generators {
            for (slots, ops) in interleaved(d, s, depth) {
                out.push(OperatedWord::new(slots, ops, g));
            }
        }
    }
    out
}

/// All `(slots, ops)` with `n` slots, lexicographic in
/// `slot_0, op_0, slot_1, ...`.
pub(crate) fn interleaved(d: usize, s: usize, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let len = 2 * n - 1;
    let radix = |p: usize| if p % 2 == 0 { d } else { s };
    if (0..len).any(|p| radix(p) == 0) {
        return Vec::new();
    }
    let mut digits = vec![0usize; len];
    let mut out = Vec::new();
    loop {
        let slots = digits.iter().step_by(2).copied().collect();
        let ops = digits.iter().skip(1).step_by(2).copied().collect();
        out.push((slots, ops));
        let mut p = len;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            digits[p] += 1;
            if digits[p] < radix(p) {
                break;
            }
            digits[p] = 0;
        }
    }
}

/// The unique operated-module map extending given generator images.
#[derive(Debug, Clone)]
pub struct OperatedModuleHom {
    generators: GeneratorSet,
    target: FdLeftModule,
    images: Vec<Vec<Scalar>>,
}

/// Builds the evaluator `φ̄` from images of every generator.
pub fn lift(
    generators: &GeneratorSet,
    images: &[(String, Vec<Scalar>)],
    target: &FdLeftModule,
) -> Result<OperatedModuleHom> {
    let mut slots: Vec<Option<Vec<Scalar>>> = vec![None; generators.len()];
    for (name, v) in images {
        let g = generators.index_of(name)?;
        if v.len() != target.dim() {
            return Err(Error::InvalidArgument(format!("image of `{name}` has the wrong length")));
        }
        slots[g] = Some(v.clone());
    }
    let images = slots
        .into_iter()
        .enumerate()
        .map(|(g, v)| {
            v.ok_or_else(|| {
                Error::InvalidArgument(format!("no image for generator `{}`", generators.names()[g]))
            })
        })
        .collect::<Result<_>>()?;
    Ok(OperatedModuleHom {
        generators: generators.clone(),
        target: target.clone(),
        images,
    })
}

impl OperatedModuleHom {
    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn target(&self) -> &FdLeftModule {
        &self.target
    }

    /// `φ̄(r ⊗ x) = r φ(x)` and `φ̄(r ⊗ ω ⊗ rest) = r m_ω(φ̄(rest))`.
    pub fn eval_word(&self, w: &OperatedWord) -> Vec<Scalar> {
        let t = &self.target;
        let n = w.depth();
        let mut v = t.action_matrix(w.slots[n - 1]).mul_vec(&self.images[w.generator]);
        for j in (0..n - 1).rev() {
            v = t.operator(w.ops[j]).mul_vec(&v);
            v = t.action_matrix(w.slots[j]).mul_vec(&v);
        }
        v
    }

    pub fn eval(&self, e: &OperatedElement) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.target.dim()];
        for (w, c) in e {
            for (acc, x) in out.iter_mut().zip(self.eval_word(w)) {
                *acc += c * x;
            }
        }
        out
    }
}

/// One defect element together with the data that produced it.
#[derive(Debug, Clone)]
pub struct IdealGenerator {
    pub basis_index: usize,
    pub word: OperatedWord,
    pub alpha: usize,
    pub beta: usize,
    pub element: OperatedElement,
}

/// `P_α(r)m'_β(a) - m'_α(r m'_β(a)) - m'_β(P_α(r)a) - λ_β m'_α(ra) - λ_α m'_β(ra)`
pub fn ideal_element(
    inst: &MrbAlgebraInstance,
    r: &[Scalar],
    a: &OperatedElement,
    alpha: usize,
    beta: usize,
) -> Result<OperatedElement> {
    let pr = inst.apply(alpha, r);
    let mb_a = apply_operator(inst, beta, a)?;
    let ra = act(inst, r, a);
    let mut out = act(inst, &pr, &mb_a);
    out.sub_assign(&apply_operator(inst, alpha, &act(inst, r, &mb_a))?);
    out.sub_assign(&apply_operator(inst, beta, &act(inst, &pr, a))?);
    out.sub_assign(&apply_operator(inst, alpha, &ra)?.scaled(inst.weight(beta)));
    out.sub_assign(&apply_operator(inst, beta, &ra)?.scaled(inst.weight(alpha)));
    Ok(out)
}

/// Every defect element for basis `r`, words `a` of depth at most
/// `max_depth`, and label pairs. The term `m'_α(r m'_β(a))` has depth
/// `depth(a) + 2`.
pub fn ideal_generators(
    inst: &MrbAlgebraInstance,
    generators: &GeneratorSet,
    max_depth: usize,
) -> Result<Vec<IdealGenerator>> {
    inst.require_verified()?;
    let mut out = Vec::new();
    for word in enumerate_words(inst, generators.len(), max_depth) {
        let a = OperatedElement::term(word.clone(), Scalar::from_integer(1.into()));
        for i in 0..inst.dim() {
            let r = inst.algebra().basis_vector(i);
            for alpha in 0..inst.omega_len() {
                for beta in 0..inst.omega_len() {
                    out.push(IdealGenerator {
                        basis_index: i,
                        word: word.clone(),
                        alpha,
                        beta,
                        element: ideal_element(inst, &r, &a, alpha, beta)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::scaled_projection;
    use crate::scalar::int;

    fn word(slots: &[usize], ops: &[usize]) -> OperatedElement {
        OperatedElement::term(OperatedWord::new(slots.to_vec(), ops.to_vec(), 0), int(1))
    }

    #[test]
    fn unit_acts_trivially_and_products_vanish() {
        let inst = scaled_projection(&[int(1)]).unwrap();
        let e = word(&[0, 1], &[0]);
        assert_eq!(act(&inst, inst.algebra().unit(), &e), e);
        assert!(act(&inst, &[int(0), int(1)], &word(&[0], &[])).is_zero());
        assert_eq!(act(&inst, &[int(1), int(1)], &word(&[0], &[])), word(&[0], &[]));
    }

    #[test]
    fn operator_prepends_unit_expansion() {
        let inst = scaled_projection(&[int(1)]).unwrap();
        let out = apply_operator(&inst, 0, &word(&[0], &[])).unwrap();
        let mut expected = word(&[0, 0], &[0]);
        expected.add_assign(&word(&[1, 0], &[0]));
        assert_eq!(out, expected);
        assert!(apply_operator(&inst, 0, &OperatedElement::new()).unwrap().is_zero());
        assert!(apply_operator(&inst, 3, &word(&[0], &[])).is_err());
    }

    #[test]
    fn canonical_order_is_depth_first() {
        let a = OperatedWord::new(vec![1], vec![], 1);
        let b = OperatedWord::new(vec![0, 0], vec![0], 0);
        let c = OperatedWord::new(vec![0, 1], vec![0], 0);
        let d = OperatedWord::new(vec![0, 0], vec![1], 0);
        assert!(a < b && b < c && c < d);
    }

    #[test]
    fn enumeration_counts() {
        let inst = scaled_projection(&[int(1), int(2)]).unwrap();
        let words = enumerate_words(&inst, 1, 3);
        assert_eq!(words.len(), 2 + 2 * 2 * 2 + 2 * 2 * 2 * 2 * 2);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_depth_has_no_generators() {
        let inst = scaled_projection(&[int(1)]).unwrap();
        assert!(ideal_generators(&inst, &GeneratorSet::single("x"), 0).unwrap().is_empty());
    }
}
