use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HpError {
    #[error("chart error: {0}")]
    Chart(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type HpResult<T> = Result<T, HpError>;
