use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A quantity that must be an integer came out with a nonunit denominator.
    #[error("non-integer result in {context}: {value}")]
    NonIntegerResult { context: String, value: String },

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("negative count in {context}: {value}")]
    NegativeCount { context: String, value: String },

    #[error("degenerate operator polynomial: {0}")]
    DegenerateOperator(String),

    #[error("operator polynomial does not satisfy the premises: {0}")]
    PremiseViolation(String),

    #[error("pair is not in T': {0}")]
    NotInTPrime(String),

    #[error("n = {requested} exceeds the enumeration bound {cap}")]
    BoundExceeded { requested: usize, cap: usize },

    #[error("permutation size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("fixed-point-free involutions need an even number of points, got {0}")]
    OddSize(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
