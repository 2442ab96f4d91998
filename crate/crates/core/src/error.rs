use thiserror::Error;

/// Errors produced by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A matrix operation received a non-square matrix.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    /// Operand shapes are incompatible.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A row or column index is outside the matrix.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    /// Elimination found no usable pivot.
    #[error("matrix is singular")]
    Singular,
    /// Brute-force enumeration was asked to run beyond its intended scale.
    #[error("enumeration scale exceeded: N = {n} but the limit is {max}")]
    ScaleExceeded { n: usize, max: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
