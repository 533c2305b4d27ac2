use thiserror::Error;

use crate::poly::VariableId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected k = {expected}, found k = {found}")]
    Dimension { expected: usize, found: usize },

    #[error("internal state error: {0}")]
    InternalState(String),

    #[error("cannot evaluate: variable {0} has no value")]
    Evaluation(VariableId),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid series specification: {0}")]
    Specification(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::InternalState(_) => "internal_state",
            Error::Evaluation(_) => "evaluation",
            Error::Degree(_) => "degree",
            Error::Argument(_) => "argument",
            Error::UnknownName(_) => "unknown_name",
            Error::Consistency(_) => "consistency",
            Error::Specification(_) => "specification",
            Error::Parse(_) => "parse",
        }
    }
}
