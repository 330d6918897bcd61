use thiserror::Error;

/// Errors raised by the arithmetic, geometry and class-group layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field elements belong to different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("singular Weierstrass model (discriminant is zero)")]
    SingularModel,
    #[error("the zero function has no divisor or expansion")]
    ZeroFunction,
    #[error("function has a pole at {0}")]
    PoleAtPlace(String),
    #[error("objects live on different curves")]
    CurveMismatch,
    #[error("divisor {0} is not prime to the support of the modulus")]
    NotPrimeToSupport(String),
    #[error("ill-formed divisor: {0}")]
    IllFormedDivisor(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    #[error("no auxiliary function found within the search bound at {0}")]
    NoAuxiliaryFunction(String),
    #[error("point lies over the excluded set: {0}")]
    PointInExcludedSet(String),
    #[error("the map is not defined on {0}")]
    NotInDomain(String),
    #[error("no rational base point outside the support of the modulus")]
    NoRationalBasePoint,
    #[error("generator bound too small: closure order {found}, predicted {predicted}")]
    GeneratorBoundTooSmall { found: u64, predicted: u64 },
    #[error("the zero modulus has no unit sequence")]
    ZeroModulus,
    #[error("moduli are not comparable: {0}")]
    NotComparable(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
