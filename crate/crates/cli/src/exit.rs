use std::fmt;
use std::process::ExitCode;

use lzs_core::Error;

/// Command failure mapped onto the process exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config file or output path. Exit 2.
    Config(String),
    /// Parameters outside what the requested method supports. Exit 3.
    Regime(String),
    /// A numerical routine failed. Exit 4.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 2,
            CliError::Regime(_) => 3,
            CliError::Numerical(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Regime(m) => write!(f, "regime error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) | Error::Domain(m) | Error::Range(m) => CliError::Config(m),
            Error::Regime(m) | Error::Bracket(m) => CliError::Regime(m),
            Error::Numerical(m) | Error::InsufficientData(m) => CliError::Numerical(m),
        }
    }
}
