//! Errors surfaced by commands, with their exit codes.

use thiserror::Error;

use crate::algfile::AlgFileError;

/// Exit code for success (all requested properties hold).
pub const EXIT_OK: i32 = 0;
/// Exit code when a requested property fails.
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when an input exceeds a size limit.
pub const EXIT_SIZE_LIMIT: i32 = 3;

/// A command failure that prevents producing a report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed arguments or an unknown name.
    #[error("{0}")]
    Usage(String),
    /// An input file or expression could not be parsed.
    #[error("{0}")]
    Parse(String),
    /// A construction could not be carried out.
    #[error("{0}")]
    Construction(String),
    /// An input is too large for the requested operation.
    #[error("{0}")]
    SizeLimit(String),
    /// Reading or writing a file failed.
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// The process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SizeLimit(_) => EXIT_SIZE_LIMIT,
            _ => EXIT_USAGE,
        }
    }
}

impl From<AlgFileError> for CliError {
    fn from(e: AlgFileError) -> Self {
        match e {
            AlgFileError::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            AlgFileError::Syntax { .. } => CliError::Parse(e.to_string()),
        }
    }
}

impl From<pbz_core::congruence::CongruenceError> for CliError {
    fn from(e: pbz_core::congruence::CongruenceError) -> Self {
        use pbz_core::congruence::CongruenceError as E;
        match e {
            E::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            other => CliError::Construction(other.to_string()),
        }
    }
}

impl From<pbz_core::terms::TermError> for CliError {
    fn from(e: pbz_core::terms::TermError) -> Self {
        use pbz_core::terms::TermError as E;
        match e {
            E::BudgetExceeded { .. } => CliError::SizeLimit(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<pbz_core::sums::SumError> for CliError {
    fn from(e: pbz_core::sums::SumError) -> Self {
        use pbz_core::sums::SumError as E;
        match e {
            E::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            other => CliError::Construction(other.to_string()),
        }
    }
}

impl From<pbz_core::subalg::SubalgError> for CliError {
    fn from(e: pbz_core::subalg::SubalgError) -> Self {
        use pbz_core::subalg::SubalgError as E;
        match e {
            E::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            other => CliError::Construction(other.to_string()),
        }
    }
}

impl From<pbz_core::structures::StructureError> for CliError {
    fn from(e: pbz_core::structures::StructureError) -> Self {
        CliError::Construction(e.to_string())
    }
}
