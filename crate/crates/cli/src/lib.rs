//! Configuration-driven experiment runner over the chebtrot library:
//! subcommand dispatch, CSV/JSON emission, and self-contained SVG plots.

use std::fmt;

use chebtrot::SimError;

pub mod commands;
pub mod config;
pub mod output;
pub mod svg;

/// Failure modes mapped to process exit codes: numeric-domain failures
/// exit 1, configuration and IO failures exit 2.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<SimError> for CliError {
    fn from(err: SimError) -> Self {
        match err {
            SimError::Domain(msg) => CliError::Domain(msg),
            SimError::Input(msg) => CliError::Config(msg),
            SimError::Capability(msg) => CliError::Config(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Config(err.to_string())
    }
}
