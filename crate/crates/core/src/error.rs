use thiserror::Error;

/// Errors raised by the algebra and the engine.
///
/// Every precondition violation named in the operation contracts maps to a
/// distinct variant so callers (and the CLI) can report the failed
/// precondition verbatim.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,

    #[error("resultant undefined: both inputs must have positive degree in the elimination variable")]
    ResultantUndefined,

    #[error("polynomial is not primitive (content {content})")]
    NotPrimitive { content: String },

    #[error("coefficient exceeds 2^53; exact magnitude is not representable in double precision, use the symbolic test")]
    CoefficientTooLarge,

    #[error("node count {nodes} below minimum of 64")]
    TooFewNodes { nodes: u32 },

    #[error("companion not in G_Z: factor {factor} is not a binomial L*M^r - delta")]
    CompanionNotGz { factor: String },

    #[error("companion is not a graph knot: {expr}")]
    CompanionNotGraph { expr: String },

    #[error("invalid torus parameters ({p},{q}): {reason}")]
    InvalidTorus { p: i64, q: i64, reason: &'static str },

    #[error("invalid cable parameters ({p},{q}): {reason}")]
    InvalidCable { p: i64, q: i64, reason: &'static str },

    #[error("invalid cabling word: {reason}")]
    InvalidCablingWord { reason: String },

    #[error("double twist knot J({},{}) has no closed form and is missing from the knot table", 2 * m, 2 * n)]
    UnsupportedDoubleTwist { m: i64, n: i64 },

    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("validation error: {msg}")]
    Validation { msg: String },

    #[error("boundary slopes of a double require a nontrivial companion (n = 0 is the unknot)")]
    TrivialCompanion,

    #[error("Sylvester dimension {dim} exceeds cap {cap}; use the pointwise pipeline or raise the cap")]
    CapExceeded { dim: usize, cap: usize },

    #[error("pointwise evidence requires at least one trial")]
    NoTrials,

    #[error("knot table error: {msg}")]
    Table { msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
