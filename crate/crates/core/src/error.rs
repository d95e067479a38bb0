use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("mixed coefficient domains: {0} vs {1}")]
    MixedDomains(String, String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("variable x{0} has no assigned value")]
    MissingAssignment(usize),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial has non-positive degree")]
    ConstantForm,
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,
    #[error("operation requires a prime field")]
    RequiresPrimeField,
    #[error("not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("linearly dependent inputs: {0}")]
    LinearlyDependent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
