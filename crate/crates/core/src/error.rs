use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k must be at least 2, got {0}")]
    InvalidK(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched ring contexts: k={0} vs k={1}")]
    ContextMismatch(u64, u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("not a generating pair: {0}")]
    NotGeneratingPair(String),
    #[error("not in <b1>: {0}")]
    NotInCyclic(String),
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("language mismatch: {0}")]
    LanguageMismatch(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("arity mismatch for `{name}`: expected {expected}, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("exponentiation undefined here: {0}")]
    ExponentUndefined(String),
    #[error("power undefined at this exponent: {0}")]
    PowerUndefined(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("claim violated: {0}")]
    ClaimViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
