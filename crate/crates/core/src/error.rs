use thiserror::Error;

/// Errors raised by the height, form and curve routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("singular or invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("polynomial is zero; {0} is undefined")]
    ZeroPolynomial(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("all components of the map vanish at the point")]
    CommonZero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("transvectant order {r} exceeds the form degrees ({n}, {m})")]
    TransvectantOrder { r: usize, n: usize, m: usize },
    #[error("unsupported degree {got}: {what}")]
    UnsupportedDegree { got: usize, what: &'static str },
    #[error("not a genus-2 curve: {0}")]
    NotGenus2(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
