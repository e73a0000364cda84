use thiserror::Error;

/// Failures of individual communication operations inside a worker.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CommError {
    /// Another worker in the group failed; this operation was woken up so
    /// the caller can unwind instead of waiting forever.
    #[error("group poisoned: a peer worker failed")]
    Poisoned,

    /// A rank outside `0..n_workers` was named as a message endpoint.
    #[error("invalid rank {rank} in a group of {n}")]
    InvalidRank { rank: usize, n: usize },

    /// A received message did not have the length the receiver posted.
    #[error("shape mismatch: posted {expected} values, message has {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// An element index beyond the end of a shared array.
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// A one-sided transfer touched elements owned by more than one worker;
    /// each transfer must target a single owner's region.
    #[error("transfer over [{start}, {end}) spans more than one owner region")]
    SpansOwners { start: usize, end: usize },

    /// A worker asked for mutable access to a region it does not own.
    #[error("worker {caller} does not own region of worker {owner}")]
    NotOwner { caller: usize, owner: usize },

    /// The same worker took out its local view twice at once.
    #[error("local view of worker {worker} is already borrowed")]
    AlreadyBorrowed { worker: usize },

    /// A distribution whose shape does not fit its intended use.
    #[error("incompatible distribution: {reason}")]
    IncompatibleDistribution { reason: String },
}

/// Outcome of a whole SPMD run.
#[derive(Debug, Error)]
pub enum SpmdError<E>
where
    E: std::error::Error + 'static,
{
    /// The kernel of one worker returned an error. When several fail, the
    /// one that poisoned the group first is reported.
    #[error("worker {worker} failed: {source}")]
    Kernel {
        worker: usize,
        #[source]
        source: E,
    },

    /// A worker panicked instead of returning.
    #[error("worker {worker} panicked")]
    WorkerPanic { worker: usize },

    /// Messages were still queued when every worker had returned; some
    /// send was never matched by a receive.
    #[error("{count} unreceived message(s) at shutdown (first: {src} -> {dst}, tag {tag})")]
    OrphanMessages {
        count: usize,
        src: usize,
        dst: usize,
        tag: u64,
    },
}
