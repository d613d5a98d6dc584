use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("malformed permutation: {0}")]
    Permutation(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("rank n = {n} outside the supported range {min}..={max}")]
    RankOutOfRange { n: usize, min: usize, max: usize },

    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("expression contains variable {0} where only central or z variables are allowed")]
    UnexpectedVariable(String),

    #[error("coefficient {0} is not an integer")]
    NotIntegral(String),

    #[error("inconsistent system: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
