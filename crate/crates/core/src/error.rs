use thiserror::Error;

/// Errors raised by the kernel. Variants map onto CLI exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("axiom violation: {0}")]
    Axiom(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not artinian: {0}")]
    NotArtinian(String),
    #[error("certification failed at degree {degree}: {reason}")]
    Certification { degree: i32, reason: String },
    #[error("insufficient truncation: {0}")]
    Truncation(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
