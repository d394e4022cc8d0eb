//! Error types shared by all modules.

use num_complex::Complex64;
use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Bad user input (non-squarefree m, empty range, ...).
    InvalidInput(String),
    /// Malformed field or curve file.
    Parse(String),
    /// A declared data invariant failed. Carries the name of the violated
    /// check and the numerical residual that broke the tolerance.
    Invariant { check: String, residual: f64, detail: String },
    /// Numerical failure (non-SPD Gram matrix, truncation cap exceeded,
    /// quadrature non-convergence).
    Numeric(String),
    /// Evaluation requested too close to a pole. Carries the pole location
    /// in `s` and the residue there, so callers can form finite limits.
    Pole { at: Complex64, residue: Complex64 },
    /// The requested computation needs data that is not available
    /// (e.g. an ideal-class representative that was not supplied).
    Capability(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Invariant { check, residual, detail } => {
                write!(f, "invariant violation [{check}] residual={residual:e}: {detail}")
            }
            Error::Numeric(m) => write!(f, "numeric error: {m}"),
            Error::Pole { at, residue } => {
                write!(f, "pole proximity at s={at} (residue {residue})")
            }
            Error::Capability(m) => write!(f, "capability error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    pub fn invariant(check: &str, residual: f64, detail: impl Into<String>) -> Self {
        Error::Invariant { check: check.to_string(), residual, detail: detail.into() }
    }
}
