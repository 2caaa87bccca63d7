use std::collections::HashMap;

use num_traits::One;

use super::rewrite::{normalize_with, rewrite_at, Strategy};
use super::word::{enumerate_op_words, expand, multiply, OpElement, OpWord};
use crate::algebra::MrbAlgebraInstance;
use crate::error::Result;
use crate::linalg::{QuotientSpace, SparseEchelon, SparseVec};
use crate::scalar::Scalar;

/// The generator `Q_α r Q_β - P_α(r)Q_β + Q_βP_α(r) + λ_βQ_α r + λ_αQ_β r`
/// of the defining ideal, with unit slots at both ends.
pub fn ideal_generator(inst: &MrbAlgebraInstance, alpha: usize, r: usize, beta: usize) -> OpElement {
    let alg = inst.algebra();
    let u = alg.unit().to_vec();
    let rv = alg.basis_vector(r);
    let pr = inst.apply(alpha, &rv);
    let one = Scalar::one();
    let mut g = expand(&[u.clone(), rv.clone(), u.clone()], &[alpha, beta], &one);
    g.sub_assign(&expand(&[pr.clone(), u.clone()], &[beta], &one));
    g.add_assign(&expand(&[u.clone(), pr], &[beta], &one));
    g.add_assign(&expand(&[u.clone(), rv.clone()], &[alpha], inst.weight(beta)));
    g.add_assign(&expand(&[u, rv], &[beta], inst.weight(alpha)));
    g
}

/// Linear-algebra model of the operator ring truncated at a maximal
/// `q_degree`: all basis words up to that degree modulo the span of
/// `u · g · v` for basis words `u`, `v` and ideal generators `g` that fit.
#[derive(Debug, Clone)]
pub struct TruncatedOracle {
    max_q: usize,
    words: Vec<OpWord>,
    index: HashMap<OpWord, usize>,
    quotient: QuotientSpace,
    relation_count: usize,
}

pub fn truncated_quotient_oracle(inst: &MrbAlgebraInstance, max_q: usize) -> Result<TruncatedOracle> {
    inst.require_verified()?;
    let words = enumerate_op_words(inst, max_q);
    let index: HashMap<OpWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut echelon = SparseEchelon::new();
    let mut relation_count = 0;
    if max_q >= 2 {
        let one = Scalar::one();
        let outer = enumerate_op_words(inst, max_q - 2);
        for alpha in 0..inst.omega_len() {
            for r in 0..inst.dim() {
                for beta in 0..inst.omega_len() {
                    let g = ideal_generator(inst, alpha, r, beta);
                    for u in &outer {
                        let ug = multiply(inst, &OpElement::term(u.clone(), one.clone()), &g);
                        for v in &outer {
                            if u.q_degree() + v.q_degree() + 2 > max_q {
                                continue;
                            }
                            let rel = multiply(inst, &ug, &OpElement::term(v.clone(), one.clone()));
                            let sparse: SparseVec =
                                rel.iter().map(|(w, c)| (index[w], c.clone())).collect();
                            relation_count += 1;
                            echelon.insert(sparse);
                        }
                    }
                }
            }
        }
    }
    let quotient = QuotientSpace::from_echelon(words.len(), echelon);
    Ok(TruncatedOracle {
        max_q,
        words,
        index,
        quotient,
        relation_count,
    })
}

impl TruncatedOracle {
    pub fn max_q(&self) -> usize {
        self.max_q
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.words.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn relation_rank(&self) -> usize {
        self.quotient.relation_rank()
    }

    pub fn words(&self) -> &[OpWord] {
        &self.words
    }

    pub fn index_of(&self, w: &OpWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Words whose cosets form the chosen quotient basis.
    pub fn coset_basis(&self) -> Vec<OpWord> {
        self.quotient
            .representatives()
            .iter()
            .map(|&i| self.words[i].clone())
            .collect()
    }

    /// `None` when some word lies outside the truncation.
    pub fn to_vector(&self, e: &OpElement) -> Option<SparseVec> {
        e.iter()
            .map(|(w, c)| self.index_of(w).map(|i| (i, c.clone())))
            .collect()
    }

    pub fn in_ideal(&self, e: &OpElement) -> Option<bool> {
        self.to_vector(e).map(|v| self.quotient.echelon().contains(v))
    }

    pub fn project(&self, e: &OpElement) -> Option<Vec<Scalar>> {
        self.to_vector(e).map(|v| self.quotient.project_sparse(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub word: OpWord,
    /// How the first reduction started, e.g. `redex 0`.
    pub first: String,
    pub second: String,
    pub first_normal_form: OpElement,
    pub second_normal_form: OpElement,
    /// Whether the difference lies in the truncated ideal.
    pub difference_in_ideal: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub reductions_compared: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl ConfluenceReport {
    pub fn is_empty(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Reduces every basis word with overlapping redexes in every possible
/// first step (then leftmost), and also fully rightmost, and compares the
/// normal forms. Disagreements are adjudicated by the truncated oracle.
pub fn confluence_probe(inst: &MrbAlgebraInstance, max_q: usize) -> Result<ConfluenceReport> {
    inst.require_verified()?;
    let mut report = ConfluenceReport::default();
    if max_q < 3 {
        return Ok(report);
    }
    let one = Scalar::one();
    let mut oracle = None;
    for w in enumerate_op_words(inst, max_q).into_iter().filter(|w| w.q_degree() >= 3) {
        report.words_checked += 1;
        let mut results: Vec<(String, OpElement)> = w
            .redexes()
            .map(|j| {
                let step = rewrite_at(inst, &w, j, &one);
                let nf = normalize_with(inst, &step, Strategy::Leftmost).output;
                (format!("redex {j}"), nf)
            })
            .collect();
        let single = OpElement::term(w.clone(), one.clone());
        results.push((
            Strategy::Rightmost.tag().to_string(),
            normalize_with(inst, &single, Strategy::Rightmost).output,
        ));
        report.reductions_compared += results.len();
        let (first_tag, first_nf) = &results[0];
        for (tag, nf) in &results[1..] {
            if nf == first_nf {
                continue;
            }
            let oracle = match &oracle {
                Some(o) => o,
                None => oracle.insert(truncated_quotient_oracle(inst, max_q)?),
            };
            report.discrepancies.push(Discrepancy {
                word: w.clone(),
                first: first_tag.clone(),
                second: tag.clone(),
                first_normal_form: first_nf.clone(),
                second_normal_form: nf.clone(),
                difference_in_ideal: oracle.in_ideal(&first_nf.difference(nf)),
            });
        }
    }
    Ok(report)
}
