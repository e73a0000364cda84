use std::io;
use std::path::PathBuf;

use strategies::StrategyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark plan: {reason}")]
    InvalidPlan { reason: String },

    /// Weak scaling grows the grid by doubling one side at a time, so only
    /// power-of-two worker counts land on a realizable grid.
    #[error("weak scaling cannot realize {workers} workers by alternate grid doubling")]
    NonSquareScaling { workers: usize },

    #[error("records mix strong- and weak-scaling runs")]
    MixedPlans,

    #[error("report io failed at {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

impl BenchError {
    pub(crate) fn io(path: &std::path::Path, source: io::Error) -> Self {
        BenchError::IoFailure {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn io_invalid(path: &std::path::Path, message: String) -> Self {
        BenchError::io(path, io::Error::new(io::ErrorKind::InvalidData, message))
    }
}
