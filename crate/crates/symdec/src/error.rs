use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has degree {degree} but the formal degree is {bound}")]
    DegreeTooSmall { degree: usize, bound: usize },
    #[error("expected a coefficient sequence of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("interval endpoint is a root of the polynomial")]
    EndpointIsRoot,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("interlacing is only certified for nonnegative coefficients and degree gap 0 or 1")]
    UnsupportedSignPattern,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("brute-force enumeration capped: {0}")]
    SizeCap(String),
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("basis-exchange axiom fails: {0}")]
    InvalidMatroid(String),
    #[error("h-polynomial convolution tail does not vanish")]
    NonvanishingTail,
    #[error("Lawrence h* coefficient is negative; this indicates a bug")]
    NegativeCoefficient,
    #[error("Ehrhart polynomial has negative coordinates in the (2x)^k(2x+1)^(d-k) basis; generators are not in doubled centrally symmetric form")]
    NotCentrallySymmetricForm,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
