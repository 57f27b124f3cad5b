use thiserror::Error;

/// Crate-wide error type. Every fallible operation in the kernel and the
/// checkers funnels through this enum so callers can match on the failure
/// class instead of string contents.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("operands belong to different polynomial rings")]
    RingMismatch,

    #[error("{0} must be homogeneous")]
    NotHomogeneous(&'static str),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("colon by the zero ideal is undefined")]
    ColonByZero,

    #[error("quotient is not zero-dimensional")]
    NotZeroDimensional,

    #[error("subquotient has infinite length")]
    InfiniteLength,

    #[error("ideal is not primary to the maximal ideal")]
    NotMPrimary,

    #[error("bottom generators do not lie inside the top submodule")]
    NotSubmodule,

    #[error("module is zero")]
    ZeroModule,

    #[error("constraint ideal has no nonzero forms of degree {0}")]
    ConstraintDegree(u32),

    #[error("values did not stabilize to a degree <= {degree_bound} polynomial over {samples} samples")]
    Unstabilized { degree_bound: usize, samples: usize },

    #[error("fitted coefficient is not an integer: {0}")]
    NonIntegerFit(String),

    #[error("failed to construct a system of parameters after {attempts} attempts: {context}")]
    SopConstruction { attempts: usize, context: String },

    #[error("operation requires a monomial ideal")]
    NotMonomial,

    #[error("supplied decomposition does not intersect to the defining ideal")]
    DecompositionMismatch,

    #[error("socle invariants require a sequentially Cohen-Macaulay ring")]
    NotSequentiallyCm,

    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),

    #[error("unknown ring id: {0}")]
    UnknownRing(String),

    #[error("corpus document invalid: {0}")]
    Corpus(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
