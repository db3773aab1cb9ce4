//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by code loading, decoding and simulation.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed alist text (bad header, degree mismatch, index out of range).
    #[error("alist parse error: {0}")]
    Alist(String),

    /// Invalid quasi-cyclic description (bad grid, shift out of range).
    #[error("quasi-cyclic description error: {0}")]
    Qc(String),

    /// Invalid parity-check structure (empty neighborhood, duplicate entry).
    #[error("parity-check matrix error: {0}")]
    Code(String),

    /// Vector length does not match the code.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// LLR input contained NaN or infinity.
    #[error("non-finite LLR at position {0}")]
    NonFiniteLlr(usize),

    /// A check of degree < 2 cannot be handled by the ADMM decoder.
    #[error("check {0} has degree {1}; ADMM decoding requires degree >= 2")]
    CheckDegree(usize, usize),

    /// Fixed-point width allocation is infeasible.
    #[error("fixed-point format error: {0}")]
    Format(String),

    /// Invalid decoder or sweep configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Dykstra oracle did not reach the requested tolerance.
    #[error("projection oracle did not converge: last cycle moved {last_change:.3e}")]
    OracleNotConverged { last_change: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
