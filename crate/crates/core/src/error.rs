use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("pole at the origin; shift the function before expanding it")]
    PoleAtOrigin,
    #[error("not a unit: constant coefficient is zero")]
    NotAUnit,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("independence error: {0}")]
    Independence(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
