use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero in F_q")]
    DivisionByZero,
    #[error("enumeration needs {required} elements, budget is {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("style {style} is not valid here: {reason}")]
    Style { style: String, reason: String },
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
