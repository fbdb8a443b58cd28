use thiserror::Error;

/// Errors shared by every module of the kernel.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid Hom-Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid Hom-action: {0}")]
    InvalidAction(String),

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A runtime certificate that a paper-level theorem guarantees should
    /// hold has failed. This always signals a bug or an inconsistent input,
    /// never a recoverable condition.
    #[error("certificate failed: {0}")]
    Certificate(String),

    #[error("unsupported characteristic: {0}")]
    Characteristic(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
