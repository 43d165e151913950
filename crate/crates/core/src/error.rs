use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("not in the parabolic subgroup: {0}")]
    NotInParabolic(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("missing table: {0}")]
    MissingTable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An arithmetic identity that must hold by construction failed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
