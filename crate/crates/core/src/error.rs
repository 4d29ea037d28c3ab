use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("series has a nonzero constant term in x")]
    NonzeroConstantTerm,
    #[error("series has x-valuation 0 where at least 1 is required")]
    ZeroValuation,
    #[error("term {var}^{exponent} exceeds the configured cap {cap}")]
    CapExceeded {
        var: &'static str,
        exponent: u32,
        cap: u32,
    },
    #[error("series evaluation diverges: term magnitudes stopped decreasing")]
    Divergent,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("malformed series document: {0}")]
    Format(String),
    #[error("system error: {0}")]
    System(String),
    #[error("fixed point did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("class tag mismatch: expected {expected}, got {got}")]
    TagMismatch { expected: String, got: String },
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("Newton iteration failed: {0}")]
    Newton(String),
    #[error("singular matrix (pivot {0})")]
    SingularMatrix(usize),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("malformed graph: {0}")]
    InvalidGraph(String),
    #[error("pattern graph must be connected")]
    DisconnectedPattern,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
