use fracdisc::{CfeError, ObjectiveError, OptimizeError, PolyError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("GA alpha {alpha_ga} and grid alpha {alpha_grid} differ by {delta:e}")]
    OracleDisagreement { alpha_ga: f64, alpha_grid: f64, delta: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::OracleDisagreement { .. } => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<CfeError> for CliError {
    fn from(e: CfeError) -> Self {
        match e {
            CfeError::BadGamma(_) | CfeError::BadOrder | CfeError::GenFunc(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(format!("realization failed: {e}")),
        }
    }
}

impl From<ObjectiveError> for CliError {
    fn from(e: ObjectiveError) -> Self {
        match e {
            ObjectiveError::SpecMismatch(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OptimizeError> for CliError {
    fn from(e: OptimizeError) -> Self {
        match e {
            OptimizeError::BadConfig(_) => CliError::Usage(e.to_string()),
            OptimizeError::Objective(inner) => inner.into(),
            OptimizeError::AllInfeasible => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Numerical(e.to_string())
    }
}
