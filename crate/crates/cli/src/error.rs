use thiserror::Error;

use subforge::{BarrierError, GaussLucasError, OracleError, RealRootError, SubmatrixError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<SubmatrixError> for CliError {
    fn from(e: SubmatrixError) -> Self {
        match e {
            SubmatrixError::ConvergenceFailure { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<GaussLucasError> for CliError {
    fn from(e: GaussLucasError) -> Self {
        match e {
            GaussLucasError::RootConvergenceFailure { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<BarrierError> for CliError {
    fn from(e: BarrierError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RealRootError> for CliError {
    fn from(e: RealRootError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Internal(e.to_string())
    }
}
