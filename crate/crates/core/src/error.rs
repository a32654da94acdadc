use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("empty forest")]
    EmptyForest,

    #[error("invalid decoration label {0:?}")]
    InvalidLabel(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("vector is not over the expected basis")]
    BasisMismatch,

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("series too short: need {needed} coefficients, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
