use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point {0:?} is not in the lattice")]
    NotInLattice(Vec<i64>),

    #[error("enumeration of {required} points exceeds the cap of {cap} (raise it with --cap or TORIC_FSIG_CAP)")]
    CapExceeded { required: String, cap: u64 },

    #[error("invalid ring `{name}`: {}", violations.join("; "))]
    InvalidRing { name: String, violations: Vec<String> },

    #[error("unknown ring family `{0}`")]
    UnknownFamily(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("value exceeds machine integer range: {0}")]
    Overflow(String),

    #[error("exact volume is only implemented for dimension <= {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
