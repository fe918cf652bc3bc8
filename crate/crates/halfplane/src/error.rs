//! Error types. Configuration problems, quadrature nonconvergence and
//! expression errors are kept separate because the CLI maps them to distinct
//! exit codes.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomainError {
    #[error("point {x}+{y}i lies outside the open upper half-plane (need y > 0)")]
    PointBelowBoundary { x: f64, y: f64 },
    #[error("point coordinates must be finite, got x={x} y={y}")]
    NonFinitePoint { x: f64, y: f64 },
    #[error("invalid strip [a,b]=[{a},{b}]: need 0 < a <= b")]
    InvalidStrip { a: f64, b: f64 },
    #[error("invalid search region: {0}")]
    InvalidRegion(String),
}

/// Quadrature failure. Carries the best value computed so far together with
/// its error estimate so callers can still report it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("adaptive subdivision exhausted depth {depth}; best value {value} +/- {estimate}")]
    DepthExhausted {
        depth: usize,
        value: Complex64,
        estimate: f64,
    },
}

/// Configuration error: a named field failed validation, an identifier was
/// unknown, or an input could not be parsed. CLI exit code 2.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("config error in `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Umbrella error for operations that can fail either way.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}
