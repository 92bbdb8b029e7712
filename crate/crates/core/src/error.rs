use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("cannot parse word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("continued fraction exhausted: {requested} letters requested, only {available} available")]
    InsufficientPrecision { requested: usize, available: usize },

    #[error("substitution does not define a prolonging fixed point: {0}")]
    NonProlongingSubstitution(String),

    #[error("query of length {len} goes beyond the oracle's reliable length {max}")]
    LengthBeyondOracle { len: usize, max: usize },

    #[error("the subshift is empty (the algebra is finite-dimensional)")]
    EmptySubshift,

    #[error("work budget of {budget} (--budget) exceeded while {what}; use the generating-function route for large degrees")]
    BudgetExceeded { budget: u64, what: String },

    #[error("degree {n} is below the matrix-power range n >= {min}")]
    DegreeTooSmall { n: usize, min: usize },

    #[error("the presentation is not right prolongable (radical generators: {generators})")]
    NotProlongable { generators: String },

    #[error("not a Sturmian factor set: p({k}) = {found}, expected {expected}")]
    SturmianCheckFailed { k: usize, found: usize, expected: usize },

    #[error("alphabet of size {m} exceeds the permutation budget (max {max})")]
    AlphabetTooLarge { m: usize, max: usize },

    #[error("graph depths differ: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },

    #[error("operation requires a presentation-backed algebra: {0}")]
    RequiresPresentation(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
