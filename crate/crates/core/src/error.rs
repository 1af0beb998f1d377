use thiserror::Error;

use crate::lattice::FlatIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be nonnegative, got {0}")]
    NegativeArgument(i64),

    #[error("extended multinomial: {0}")]
    ExtendedComb(String),

    #[error("malformed vector configuration: {0}")]
    MalformedConfig(String),

    #[error("index {0} is out of range")]
    IndexOutOfRange(FlatIndex),

    #[error("vector at index {0} is zero")]
    ZeroVector(FlatIndex),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("assumption violated: {0}")]
    Assumption(String),

    #[error("enumeration region is unbounded under the given weight (cone not pointed)")]
    Unbounded,

    #[error("monoid has no growth direction")]
    NoGrowth,

    #[error("incompatible weight functionals")]
    IncompatibleWeights,

    #[error("series has zero constant term")]
    NotAUnit,

    #[error("series precondition: {0}")]
    SeriesPrecondition(String),

    #[error("negative degree {degree} for exponent {exponent:?}")]
    NegativeDegree { exponent: Vec<i64>, degree: i64 },

    #[error("argument outside its domain: {0}")]
    Domain(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
