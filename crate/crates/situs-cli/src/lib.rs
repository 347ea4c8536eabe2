//! Command-line front end for the `situs` library: JSON formats, reports and
//! the subcommands behind the `situs` binary.

pub mod commands;
pub mod format;
pub mod report;

use std::ffi::OsString;

pub use report::Report;

/// Exit codes: 0 verdict true / witness found, 1 verdict false / none.
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const MAX_CANDIDATES_ENV: &str = "SITUS_MAX_CANDIDATES";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or inconsistent input.
    #[error("input error: {0}")]
    Input(String),
    /// A size guard or truncation budget was hit.
    #[error("budget error: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<situs::Error> for CliError {
    fn from(e: situs::Error) -> Self {
        match e {
            situs::Error::Size { .. } | situs::Error::DegreeBudget { .. } => CliError::Budget(e.to_string()),
            situs::Error::Domain(_) | situs::Error::Unsupported(_) => CliError::Input(e.to_string()),
        }
    }
}

/// Runs one command line and returns the exit code and what goes to
/// standard output. Usage errors come back as exit 2 with clap's message.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    let cli = match commands::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return (code, e.render().to_string());
        }
    };
    commands::execute(&cli)
}
