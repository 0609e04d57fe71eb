//! Crate-wide error type.

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Error, Debug)]
pub enum Error {
    /// An argument was outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument was inside the domain but outside the range an evaluation
    /// scheme is validated for (e.g. complex Bessel arguments beyond the
    /// power-series envelope).
    #[error("range error: {0}")]
    Range(String),

    /// The requested operation is not defined for this representation.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A root/parameter search did not bracket a solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A certification precondition (nonnegativity, positive-definiteness, …)
    /// failed, so the certificate cannot be issued.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A numerical routine exhausted its retry/refinement budget.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A function descriptor could not be parsed.
    #[error("bad descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
