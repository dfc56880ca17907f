//! Command-line surface of the swimmer toolkit. The binary is a thin
//! wrapper around [`run`]; everything is a library so the integration and
//! acceptance tests can drive it directly.

pub mod commands;
pub mod format;
pub mod reference;

use std::fmt;

pub const SCHEMA_VERSION: &str = "1";

/// CLI failure with its process exit code:
/// 2 flag parse (raised by clap itself), 3 numerical failure, 4 I/O,
/// 5 malformed gait document, 6 unsupported variant for the command.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: msg.into(),
        }
    }
    pub fn io(msg: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: msg.into(),
        }
    }
    pub fn gait(msg: impl Into<String>) -> Self {
        CliError {
            code: 5,
            message: msg.into(),
        }
    }
    pub fn variant(msg: impl Into<String>) -> Self {
        CliError {
            code: 6,
            message: msg.into(),
        }
    }
}

impl From<purcell_core::Error> for CliError {
    fn from(e: purcell_core::Error) -> Self {
        use purcell_core::Error::*;
        match &e {
            SingularSystem { .. } => CliError::numerical(e.to_string()),
            MalformedGait(_) | NonClosedGait { .. } | SelfIntersectingLoop => {
                CliError::gait(e.to_string())
            }
            UnsupportedVariant { .. } => CliError::variant(e.to_string()),
            _ => CliError::numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

/// Parse arguments and execute; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses exit code 2 for usage errors and 0 for --help
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
