use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series has non-unit constant term {0}; not invertible")]
    NotInvertible(String),

    #[error("insufficient truncation: need more than {needed} coefficients, have {available}")]
    InsufficientTruncation { needed: usize, available: usize },

    #[error(
        "truncation {needed} exceeds the configured maximum {max} (raise it with QC_TRUNC_MAX)"
    )]
    TruncationLimit { needed: usize, max: usize },

    #[error("malformed exponent map: {0}")]
    MalformedExponents(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }
}
