//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by graph I/O, samplers, generators and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input data, reported with a 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Structurally valid input with an illegal value (e.g. weight <= 0).
    #[error("invalid data: {0}")]
    Data(String),

    /// Out-of-range or inconsistent parameter; the message names the parameter.
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Cost matrices must be entirely finite before a solver accepts them.
    #[error("non-finite cost entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
