//! Error type covering everything a strategy run can refuse or report.

use comm_runtime::{CommError, SpmdError};
use euler_core::EulerError;
use thiserror::Error;

/// Any failure from planning, communication, or the numerics itself.
#[derive(Debug, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Euler(#[from] EulerError),

    #[error(transparent)]
    Comm(#[from] CommError),

    #[error("unknown strategy `{name}`")]
    UnknownStrategy { name: String },

    #[error("at least one worker required")]
    NoWorkers,

    #[error("{workers} workers cannot each own cells of a {rows}x{cols} grid")]
    TooManyWorkers {
        workers: usize,
        rows: usize,
        cols: usize,
    },

    #[error("strategy {strategy} runs on exactly one worker, got {workers}")]
    WrongWorkerCount { strategy: String, workers: usize },

    #[error("worker {worker} failed: {source}")]
    Worker {
        worker: usize,
        source: Box<StrategyError>,
    },

    #[error("worker {worker} panicked")]
    WorkerPanic { worker: usize },

    #[error("{count} message(s) from worker {src} to {dst} (tag {tag}) never received")]
    OrphanMessages {
        count: usize,
        src: usize,
        dst: usize,
        tag: u64,
    },
}

impl From<SpmdError<StrategyError>> for StrategyError {
    fn from(e: SpmdError<StrategyError>) -> Self {
        match e {
            SpmdError::Kernel { worker, source } => StrategyError::Worker {
                worker,
                source: Box::new(source),
            },
            SpmdError::WorkerPanic { worker } => StrategyError::WorkerPanic { worker },
            SpmdError::OrphanMessages {
                count,
                src,
                dst,
                tag,
            } => StrategyError::OrphanMessages {
                count,
                src,
                dst,
                tag,
            },
        }
    }
}
