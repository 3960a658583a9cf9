use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeCharacteristic(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("size {needed} exceeds the configured cap {cap}")]
    SizeCapExceeded { needed: u128, cap: u64 },

    #[error("enumeration of {needed} candidates exceeds the configured cap {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u64 },

    #[error("polynomials have different twists (σ exponents {0} and {1})")]
    TwistMismatch(u32, u32),

    #[error("right division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("elements belong to different algebras")]
    OwnerMismatch,

    #[error("the algebra is not a division algebra")]
    NotDivision,

    #[error("g is not a right divisor of t^m - a")]
    NotADivisor,

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A computed result contradicts a structural theorem the library relies on.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
