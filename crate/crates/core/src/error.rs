use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("host mismatch: {0}")]
    HostMismatch(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not proper: {0}")]
    NotProper(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
