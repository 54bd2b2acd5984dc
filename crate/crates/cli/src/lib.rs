//! Configuration ingestion and report serialization behind the `longrun`
//! command-line tool.

pub mod config;
pub mod report;

use longrun::EconError;

/// CLI-level failures, each mapping to an exit code:
/// parse/validation 1, solver/io 2, oracle 3.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Solver(String),
    Io(String),
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 1,
            CliError::Solver(_) | CliError::Io(_) => 2,
            CliError::Oracle(_) => 3,
        }
    }

    /// Machine-parsable prefix for standard error.
    pub fn prefix(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "error[parse]",
            CliError::Validation(_) => "error[validation]",
            CliError::Solver(_) => "error[solver]",
            CliError::Io(_) => "error[io]",
            CliError::Oracle(_) => "error[oracle]",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(msg)
            | CliError::Validation(msg)
            | CliError::Solver(msg)
            | CliError::Io(msg)
            | CliError::Oracle(msg) => msg,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.prefix(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<EconError> for CliError {
    fn from(err: EconError) -> Self {
        match &err {
            EconError::InvalidEconomy(report) => CliError::Validation(report.summary()),
            EconError::OracleFailure(_) => CliError::Oracle(err.to_string()),
            EconError::AtPeriod { source, .. } => match CliError::from((**source).clone()) {
                CliError::Oracle(_) => CliError::Oracle(err.to_string()),
                CliError::Validation(_) => CliError::Validation(err.to_string()),
                _ => CliError::Solver(err.to_string()),
            },
            _ => CliError::Solver(err.to_string()),
        }
    }
}
