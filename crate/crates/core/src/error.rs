use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("invalid field modulus {0}: must be a prime >= 3")]
    InvalidModulus(u64),
    #[error("leading coefficient of the zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of an all-zero list is undefined")]
    ZeroIdeal,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("the zero triple is not allowed")]
    ZeroTriple,
    #[error("reflection vector is isotropic")]
    IsotropicVector,
    #[error("reflection vector has non-unit norm {0}")]
    NonUnitNorm(String),
    #[error("descent step not applicable: {0}")]
    NotDescendable(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("not a standard Pythagorean triple: {0}")]
    NotSpt(String),
    #[error("triple is not primitive")]
    NotPrimitive,
    #[error("triple is already standard")]
    AlreadySpt,
    #[error("malformed Berggren word: {0}")]
    MalformedWord(String),
    #[error("enumeration over Q needs a coefficient bound")]
    UnboundedEnumeration,
    #[error("matrix is not orthogonal for x^2 + y^2 - z^2")]
    NotOrthogonal,
    #[error("matrix does not fix (0, 1, 1)")]
    NotStabilizer,
    #[error("search space of {0} candidates exceeds the cap")]
    SearchTooLarge(u128),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
