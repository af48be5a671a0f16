//! JSON schemas, the s-expression syntax for formal expressions, and the
//! command implementations behind the `tambara` binary.

pub mod commands;
pub mod formats;
pub mod sexpr;

/// Schema major version accepted by every reader.
pub const SCHEMA_VERSION: u64 = 1;

/// Command outcome: a JSON report plus the process exit code
/// (0 = verified/success, 1 = property violation, 2 = usage/input error).
pub struct Outcome {
    pub report: serde_json::Value,
    pub exit_code: i32,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input or usage: exit code 2.
    Input(String),
    /// Internal/core failure surfaced verbatim: exit code 2.
    Core(tambara::Error),
}

impl core::fmt::Display for CliError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tambara::Error> for CliError {
    fn from(e: tambara::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
