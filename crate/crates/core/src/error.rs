use thiserror::Error;

use crate::formula::LogicId;

/// Errors raised while reading or transforming formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unknown logic `{0}` (expected luk-arrow, luk-warrow, godel-arrow or godel-warrow)")]
    UnknownLogic(String),
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("connective `{connective}` is not in the signature of {logic}")]
    Signature {
        connective: &'static str,
        logic: LogicId,
    },
    #[error("negation normal form is only defined for the strong-implication logics, not {0}")]
    NnfUnsupported(LogicId),
}

/// Errors raised by evaluation, proving and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("valuation does not assign atom `{0}`")]
    MissingAtom(String),
    #[error("invalid rational `{0}` (expected num/den)")]
    BadRational(String),
    #[error("value {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("filter {filter} not allowed for {logic}: {reason}")]
    Filter {
        filter: String,
        logic: LogicId,
        reason: &'static str,
    },
    #[error("{0} is only available for {1} logics")]
    WrongBase(&'static str, &'static str),
    #[error("formula has {found} atoms, the exhaustive sweep allows at most {limit}")]
    TooManyAtoms { found: usize, limit: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
