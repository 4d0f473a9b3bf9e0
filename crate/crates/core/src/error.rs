use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid simplicial data: {0}")]
    Invalid(String),
    #[error("truncation too low: {0}")]
    Truncation(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field `{path}`: {message}")]
    Field { path: String, message: String },
    #[error("load error in generator `{generator}`{}: {message}", index.map(|i| format!(" at index {i}")).unwrap_or_default())]
    Load { generator: String, index: Option<usize>, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
