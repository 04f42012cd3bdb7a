use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("operator error: {0}")]
    Operator(String),
    #[error("{0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
