use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at {0}")]
    Pole(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate eigenvalues: {0}")]
    Degeneracy(String),
    #[error("no consistent orientation: {0}")]
    Convention(String),
    #[error("truncation unstable: {0}")]
    Truncation(String),
    #[error("not of shuffle form: {0}")]
    Form(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
