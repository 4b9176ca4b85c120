//! Provers for the two-dimensional Łukasiewicz and Gödel logics.

pub mod error;
pub mod formula;
pub mod godel;
pub mod linear;
pub mod luk;
pub mod oracle;
pub mod order;
pub mod proof;
pub mod semantics;

pub use error::{Error, FormulaError, Result};
pub use formula::{Formula, LogicId};
pub use semantics::{eval, is_designated, Filter, TruthPair, Valuation};
pub use proof::{Mode, ProofTree, ProverConfig, Verdict};

/// Validity of `f` at filter `d`, by the tableau of `logic`'s base.
pub fn prove_valid(f: &Formula, d: &Filter, logic: LogicId, cfg: &ProverConfig) -> Result<Verdict> {
    if logic.is_luk() {
        luk::prove_valid(f, d, logic, cfg)
    } else {
        godel::g_prove_valid(f, d, logic, cfg)
    }
}

/// Entailment of `f` by `premises` at filter `d`, by the tableau of
/// `logic`'s base.
pub fn prove_entailment(
    premises: &[Formula],
    f: &Formula,
    d: &Filter,
    logic: LogicId,
    cfg: &ProverConfig,
) -> Result<Verdict> {
    if logic.is_luk() {
        luk::prove_entailment(premises, f, d, logic, cfg)
    } else {
        godel::g_prove_entailment(premises, f, d, logic, cfg)
    }
}
