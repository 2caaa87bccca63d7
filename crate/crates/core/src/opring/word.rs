use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::algebra::MrbAlgebraInstance;
use crate::lincomb::LinComb;
use crate::operated::cmp_segments;
use crate::scalar::Scalar;

/// `b_{slots[0]} Q_{ops[0]} b_{slots[1]} ... Q_{ops[k-1]} b_{slots[k]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpWord {
    pub slots: Vec<usize>,
    pub ops: Vec<usize>,
}

impl OpWord {
    pub fn new(slots: Vec<usize>, ops: Vec<usize>) -> Self {
        assert!(slots.len() == ops.len() + 1, "malformed operator word");
        Self { slots, ops }
    }

    pub fn scalar(slot: usize) -> Self {
        Self::new(vec![slot], vec![])
    }

    pub fn q_degree(&self) -> usize {
        self.ops.len()
    }

    /// Positions `j` such that `Q_{ops[j]} b_{slots[j+1]} Q_{ops[j+1]}` is
    /// a redex.
    pub fn redexes(&self) -> std::ops::Range<usize> {
        0..self.q_degree().saturating_sub(1)
    }
}

impl Ord for OpWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q_degree()
            .cmp(&other.q_degree())
            .then_with(|| cmp_segments(&self.slots, &self.ops, &other.slots, &other.ops))
    }
}

impl PartialOrd for OpWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type OpElement = LinComb<OpWord>;

pub fn max_q_degree(e: &OpElement) -> usize {
    e.keys().map(OpWord::q_degree).max().unwrap_or(0)
}

/// Expands a word whose slots hold arbitrary algebra elements into basis
/// words by multilinearity.
pub fn expand(slots: &[Vec<Scalar>], ops: &[usize], coeff: &Scalar) -> OpElement {
    let mut out = OpElement::new();
    let supports: Vec<Vec<(usize, &Scalar)>> = slots
        .iter()
        .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    if supports.iter().any(Vec::is_empty) || coeff.is_zero() {
        return out;
    }
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut c = coeff.clone();
        let mut word_slots = Vec::with_capacity(slots.len());
        for (s, &i) in supports.iter().zip(&idx) {
            c *= s[i].1;
            word_slots.push(s[i].0);
        }
        out.add_term(OpWord::new(word_slots, ops.to_vec()), c);
        let mut p = slots.len();
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < supports[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Slots of a basis word as coordinate vectors.
pub fn slot_vectors(inst: &MrbAlgebraInstance, w: &OpWord) -> Vec<Vec<Scalar>> {
    w.slots.iter().map(|&s| inst.algebra().basis_vector(s)).collect()
}

/// The identity `1_R`.
pub fn unit(inst: &MrbAlgebraInstance) -> OpElement {
    expand(&[inst.algebra().unit().to_vec()], &[], &Scalar::one())
}

/// `r` as a word of degree zero.
pub fn scalar_element(r: &[Scalar]) -> OpElement {
    expand(&[r.to_vec()], &[], &Scalar::one())
}

/// `Q_ω` with unit slots on both sides.
pub fn q_letter(inst: &MrbAlgebraInstance, omega: usize) -> OpElement {
    let u = inst.algebra().unit().to_vec();
    expand(&[u.clone(), u], &[omega], &Scalar::one())
}

pub fn multiply_words(inst: &MrbAlgebraInstance, a: &OpWord, b: &OpWord, coeff: &Scalar) -> OpElement {
    let alg = inst.algebra();
    let mid = alg.basis_product(*a.slots.last().expect("nonempty"), b.slots[0]);
    let mut out = OpElement::new();
    for (k, x) in mid.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mut slots = a.slots[..a.slots.len() - 1].to_vec();
        slots.push(k);
        slots.extend_from_slice(&b.slots[1..]);
        let mut ops = a.ops.clone();
        ops.extend_from_slice(&b.ops);
        out.add_term(OpWord::new(slots, ops), coeff * x);
    }
    out
}

/// Concatenation with the boundary slots multiplied in the algebra. The
/// result is not reduced.
pub fn multiply(inst: &MrbAlgebraInstance, a: &OpElement, b: &OpElement) -> OpElement {
    let mut out = OpElement::new();
    for (u, x) in a {
        for (v, y) in b {
            out.add_assign(&multiply_words(inst, u, v, &(x * y)));
        }
    }
    out
}

/// All basis words of `q_degree <= max_q` in canonical order.
pub fn enumerate_op_words(inst: &MrbAlgebraInstance, max_q: usize) -> Vec<OpWord> {
    let mut out = Vec::new();
    for k in 0..=max_q {
        for (slots, ops) in crate::operated::interleaved(inst.dim(), inst.omega_len(), k + 1) {
            out.push(OpWord::new(slots, ops));
        }
    }
    out
}
