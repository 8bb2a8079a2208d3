use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
