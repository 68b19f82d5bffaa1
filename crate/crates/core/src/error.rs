use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operator truncated at order {order} cannot act exactly on a polynomial of degree {degree}")]
    TruncationTooShort { order: usize, degree: usize },

    #[error("Hermite parameter mismatch: {left} vs {right}")]
    AlphaMismatch { left: String, right: String },

    #[error("k-th derivative of Q_{k} is not constant")]
    NonConstantDerivative { k: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
