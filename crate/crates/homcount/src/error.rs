use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("canonicalization budget exceeded: component has {found} vertices (limit {limit})")]
    CanonBudget { found: usize, limit: usize },

    #[error("enumeration budget exceeded: {0}")]
    EnumBudget(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("incomplete family: {0}")]
    IncompleteFamily(String),

    #[error("inconsistent star vector")]
    InconsistentStarVector,

    #[error("not a valid star count for n={0}")]
    InvalidStarCount(usize),

    #[error("input not a valid encoded count: {0}")]
    InvalidEncodedCount(String),

    #[error("no such vector: {0}")]
    NoSuchVector(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = HomError> = std::result::Result<T, E>;
