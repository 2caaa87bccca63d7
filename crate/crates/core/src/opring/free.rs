use std::cmp::Ordering;

use super::rewrite::normal_form;
use super::word::{OpElement, OpWord};
use crate::algebra::MrbAlgebraInstance;
use crate::lincomb::LinComb;
use crate::operated::{cmp_segments, OperatedElement};

/// An operator word followed by a generator: `r_0 Q_ω1 ... r_k : x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleWord {
    pub word: OpWord,
    pub generator: usize,
}

impl Ord for ModuleWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .q_degree()
            .cmp(&other.word.q_degree())
            .then(self.generator.cmp(&other.generator))
            .then_with(|| {
                cmp_segments(&self.word.slots, &self.word.ops, &other.word.slots, &other.word.ops)
            })
    }
}

impl PartialOrd for ModuleWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type FreeModuleElement = LinComb<ModuleWord>;

/// `r_1 ⊗ ω_1 ⊗ ... ⊗ r_n ⊗ x ↦ (r_1 Q_ω1 ... r_n, x)`.
pub fn from_operated(e: &OperatedElement) -> FreeModuleElement {
    e.iter()
        .map(|(w, c)| {
            (
                ModuleWord {
                    word: OpWord::new(w.slots.clone(), w.ops.clone()),
                    generator: w.generator,
                },
                c.clone(),
            )
        })
        .collect()
}

/// Splits by generator into operator-ring elements.
pub fn components(e: &FreeModuleElement) -> Vec<(usize, OpElement)> {
    let mut by_gen: std::collections::BTreeMap<usize, OpElement> = Default::default();
    for (mw, c) in e {
        by_gen
            .entry(mw.generator)
            .or_default()
            .add_term(mw.word.clone(), c.clone());
    }
    by_gen.into_iter().collect()
}

/// Normal form of every generator component.
pub fn free_module_normal_form(inst: &MrbAlgebraInstance, e: &FreeModuleElement) -> FreeModuleElement {
    let mut out = FreeModuleElement::new();
    for (g, part) in components(e) {
        for (w, c) in &normal_form(inst, &part) {
            out.add_term(
                ModuleWord {
                    word: w.clone(),
                    generator: g,
                },
                c.clone(),
            );
        }
    }
    out
}
