//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by simulators, grids, bound evaluators, and pipelines.
#[derive(Debug, Error)]
pub enum SimError {
    /// Malformed or inconsistent input (bad shapes, invalid characters,
    /// out-of-range parameters).
    #[error("input error: {0}")]
    Input(String),

    /// Numerically valid input outside a formula's mathematical domain
    /// (branch cuts, ellipse parameters below 1, empty log arguments).
    #[error("domain error: {0}")]
    Domain(String),

    /// Request exceeds the deliberate desk-scale limits of the crate.
    #[error("capability error: {0}")]
    Capability(String),
}

/// Convenience alias used throughout the crate.
pub type SimResult<T> = Result<T, SimError>;

impl SimError {
    /// Shorthand constructor for [`SimError::Input`].
    pub fn input(msg: impl Into<String>) -> Self {
        SimError::Input(msg.into())
    }

    /// Shorthand constructor for [`SimError::Domain`].
    pub fn domain(msg: impl Into<String>) -> Self {
        SimError::Domain(msg.into())
    }

    /// Shorthand constructor for [`SimError::Capability`].
    pub fn capability(msg: impl Into<String>) -> Self {
        SimError::Capability(msg.into())
    }
}
