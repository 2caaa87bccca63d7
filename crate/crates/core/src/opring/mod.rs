//! The ring of multiple Rota-Baxter operators as a rewriting system.

mod free;
mod oracle;
mod rewrite;
mod word;

pub use free::{components, free_module_normal_form, from_operated, FreeModuleElement, ModuleWord};
pub use oracle::{
    confluence_probe, ideal_generator, truncated_quotient_oracle, ConfluenceReport, Discrepancy,
    TruncatedOracle,
};
pub use rewrite::{is_normal, normal_form, normalize, normalize_with, rewrite_at, RewriteReport, Strategy};
pub use word::{
    enumerate_op_words, expand, max_q_degree, multiply, multiply_words, q_letter, scalar_element,
    slot_vectors, unit, OpElement, OpWord,
};
