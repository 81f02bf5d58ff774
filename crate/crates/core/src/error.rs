use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a polynomial of degree {expected}, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial has a repeated root (zero discriminant)")]
    RepeatedRoot,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("value is rational; expected an irrational algebraic number")]
    RationalValue,
    #[error("interval [{lo}, {hi}] does not isolate exactly one real root")]
    NotIsolating { lo: String, hi: String },
    #[error("{0}/{1} is not a convergent within the searched depth")]
    NotAConvergent(String, String),
    #[error("expansion depth {0} exceeds the computed prefix")]
    DepthExceeded(usize),
    #[error("branch is ramified or otherwise unsupported: {0}")]
    UnsupportedBranch(String),
    #[error("series precision exhausted; recompute with more terms")]
    PrecisionExhausted,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
