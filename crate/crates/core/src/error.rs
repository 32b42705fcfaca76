use thiserror::Error;

use crate::freealg::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid indeterminate name '{0}'")]
    InvalidName(String),
    #[error("duplicate name '{0}'")]
    DuplicateName(String),
    #[error("'{0}' already has an adjoint partner")]
    AlreadyPaired(String),
    #[error("'{0}' has no declared adjoint")]
    NoAdjoint(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(
        "assumption {index} has nonzero constant term {constant}; operator-level soundness needs \
         assumptions without a constant term"
    )]
    ConstantTerm { index: usize, constant: String },
    #[error("quiver: {0}")]
    Quiver(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
