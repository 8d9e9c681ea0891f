use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller passed inconsistent shapes, rings, groups or parameters.
    #[error("usage error: {0}")]
    Usage(String),
    /// Input data violates a structural identity (non-commuting matrices, wrong order, ...).
    #[error("invalid data: {0}")]
    Invalid(String),
    /// A computation exceeded its configured budget (S-pairs, points, truncation).
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A complex or dg module does not cover the degrees a computation needs.
    #[error("insufficient window: {0}")]
    Window(String),
    /// A linear system that must be solvable was not. Signals a bug, never bad input.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
