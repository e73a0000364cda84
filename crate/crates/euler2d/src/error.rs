use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use bench_harness::BenchError;
use euler_core::EulerError;
use strategies::StrategyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Flags parsed but describe an unusable run (usage error, exit 2).
    #[error("invalid configuration: {reason}")]
    Config { reason: String },

    #[error(transparent)]
    Euler(#[from] EulerError),

    #[error(transparent)]
    Strategy(#[from] StrategyError),

    #[error(transparent)]
    Bench(#[from] BenchError),

    #[error("io failed at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{failed} of {total} verification checks failed")]
    VerificationFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn config(reason: impl Into<String>) -> Self {
        CliError::Config {
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 2 for configuration mistakes the user can fix at the command line,
    /// 1 for failures inside an accepted run.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config { .. } => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}
