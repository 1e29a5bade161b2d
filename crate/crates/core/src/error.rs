use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not unitary: {0}")]
    NotUnitary(String),

    #[error("group closure exceeded the bound of {max_order} elements")]
    OrderExceeded { max_order: usize },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial has a term with alpha != beta: {0}")]
    NotDiagonalSupport(String),

    #[error("coefficient is not rational: {0}")]
    NonRationalCoefficient(String),

    #[error("coefficient is not an integer: {0}")]
    NonIntegerCoefficient(String),

    #[error("coefficients are not Hermitian symmetric: {0}")]
    NotHermitian(String),

    #[error("the B^j A^k enumeration does not cover the group exactly once: {0}")]
    EnumerationInvalid(String),

    #[error("eigenvalue signs still undetermined at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },

    #[error("sign structure violated: {0}")]
    StructureViolation(String),

    #[error("point outside the admissible region: {0}")]
    DomainViolation(String),

    #[error("odd power of x present: {0}")]
    OddPowerPresent(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotUnitary(_) => "NotUnitary",
            Error::OrderExceeded { .. } => "OrderExceeded",
            Error::BadParameters(_) => "BadParameters",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotDiagonalSupport(_) => "NotDiagonalSupport",
            Error::NonRationalCoefficient(_) => "NonRationalCoefficient",
            Error::NonIntegerCoefficient(_) => "NonIntegerCoefficient",
            Error::NotHermitian(_) => "NotHermitian",
            Error::EnumerationInvalid(_) => "EnumerationInvalid",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::StructureViolation(_) => "StructureViolation",
            Error::DomainViolation(_) => "DomainViolation",
            Error::OddPowerPresent(_) => "OddPowerPresent",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::Parse(_) => "Parse",
        }
    }
}
