//! Command-line front end for `plap-core`: bound verification, sharpness
//! sweeps, constants and Orlicz norms, written as JSON or CSV.

pub mod commands;
pub mod config;
pub mod output;
pub mod sweep;

pub use config::{CommandKind, Flags, Format, RunConfig};

/// Exit status: 0 success, 1 violated bound / failed check / numerical
/// failure, 2 configuration error.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("bound violated: {0}")]
    Violated(String),
    #[error("check failed: {0}")]
    CheckMismatch(String),
    #[error("{0}")]
    Failure(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

impl From<plap_core::Error> for CliError {
    fn from(e: plap_core::Error) -> Self {
        match e {
            plap_core::Error::Config { field, message } => CliError::Config(format!("{field}: {message}")),
            plap_core::Error::RadiusTooSmall { .. } => CliError::Config(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failure(format!("csv: {e}"))
    }
}
