//! Worker groups: spawn N workers over one kernel and collect the pieces.

use crate::barrier::PoisonBarrier;
use crate::error::{CommError, SpmdError};
use crate::hub::MessageHub;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

struct GroupShared {
    n: usize,
    barrier: PoisonBarrier,
    hub: MessageHub,
    barriers_entered: Vec<AtomicU64>,
    first_failure: Mutex<Option<usize>>,
}

impl GroupShared {
    fn new(n: usize) -> Self {
        GroupShared {
            n,
            barrier: PoisonBarrier::new(n),
            hub: MessageHub::new(n),
            barriers_entered: (0..n).map(|_| AtomicU64::new(0)).collect(),
            first_failure: Mutex::new(None),
        }
    }

    /// Record the first failing worker and wake everyone who is parked.
    fn fail(&self, worker: usize) {
        {
            let mut ff = self.first_failure.lock().unwrap();
            ff.get_or_insert(worker);
        }
        self.barrier.poison();
        self.hub.poison();
    }
}

/// A receive posted with [`WorkerCtx::recv_async`], redeemed by
/// [`WorkerCtx::wait_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecvTicket {
    src: usize,
    tag: u64,
    len: usize,
}

/// One worker's handle onto its group.
#[derive(Clone, Copy)]
pub struct WorkerCtx<'g> {
    id: usize,
    shared: &'g GroupShared,
}

impl WorkerCtx<'_> {
    /// This worker's rank, `0..n_workers`.
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn n_workers(&self) -> usize {
        self.shared.n
    }

    /// Wait until every worker in the group arrives here.
    pub fn barrier(&self) -> Result<(), CommError> {
        self.shared.barrier.wait()?;
        self.shared.barriers_entered[self.id].fetch_add(1, Ordering::Relaxed);
        Ok(())
    }

    /// Queue a message for `dst`; never blocks.
    pub fn send_async(&self, dst: usize, tag: u64, data: &[f64]) -> Result<(), CommError> {
        self.shared.hub.send(self.id, dst, tag, data)
    }

    /// Post a receive of `len` values from `src`. Nothing blocks until
    /// [`WorkerCtx::wait_all`].
    pub fn recv_async(&self, src: usize, tag: u64, len: usize) -> Result<RecvTicket, CommError> {
        if src >= self.shared.n {
            return Err(CommError::InvalidRank {
                rank: src,
                n: self.shared.n,
            });
        }
        Ok(RecvTicket { src, tag, len })
    }

    /// Block until every posted receive has a matching message; payloads
    /// come back in ticket order.
    pub fn wait_all(&self, tickets: &[RecvTicket]) -> Result<Vec<Vec<f64>>, CommError> {
        let mut out = Vec::with_capacity(tickets.len());
        for t in tickets {
            let mut buf = vec![0.0; t.len];
            self.shared.hub.recv_into(t.src, self.id, t.tag, &mut buf)?;
            out.push(buf);
        }
        Ok(out)
    }

    /// Convenience wrapper for a single blocking receive.
    pub fn recv_into(&self, src: usize, tag: u64, out: &mut [f64]) -> Result<(), CommError> {
        self.shared.hub.recv_into(src, self.id, tag, out)
    }
}

/// Results and traffic counters of a completed run, all indexed by rank.
#[derive(Debug)]
pub struct SpmdReport<T> {
    pub results: Vec<T>,
    pub sends: Vec<u64>,
    pub recvs: Vec<u64>,
    pub barriers: Vec<u64>,
}

enum Outcome<T, E> {
    Done(T),
    Failed(E),
    Panicked,
}

/// Run `kernel` on `n` workers and gather every worker's return value.
///
/// All workers execute the same kernel, told apart only by
/// [`WorkerCtx::id`]. The call returns when every worker has: results come
/// back in rank order. If any worker fails or panics, the group is
/// poisoned, the stragglers unwind, and the first failure is reported.
/// Messages still queued after a clean finish are reported as orphans.
pub fn spawn_spmd<T, E, F>(n: usize, kernel: F) -> Result<SpmdReport<T>, SpmdError<E>>
where
    T: Send,
    E: std::error::Error + Send + 'static,
    F: Fn(&WorkerCtx<'_>) -> Result<T, E> + Sync,
{
    assert!(n >= 1, "a group needs at least one worker");
    let shared = GroupShared::new(n);

    let outcomes: Vec<Outcome<T, E>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .map(|id| {
                let shared = &shared;
                let kernel = &kernel;
                scope.spawn(move || {
                    let ctx = WorkerCtx { id, shared };
                    match catch_unwind(AssertUnwindSafe(|| kernel(&ctx))) {
                        Ok(Ok(value)) => Outcome::Done(value),
                        Ok(Err(err)) => {
                            shared.fail(id);
                            Outcome::Failed(err)
                        }
                        Err(_) => {
                            shared.fail(id);
                            Outcome::Panicked
                        }
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker threads do not unwind"))
            .collect()
    });

    if let Some(worker) = *shared.first_failure.lock().unwrap() {
        return Err(match outcomes.into_iter().nth(worker).unwrap() {
            Outcome::Failed(source) => SpmdError::Kernel { worker, source },
            Outcome::Panicked => SpmdError::WorkerPanic { worker },
            Outcome::Done(_) => unreachable!("failing worker has no result"),
        });
    }

    if let Some((count, (src, dst, tag))) = shared.hub.orphans() {
        return Err(SpmdError::OrphanMessages { count, src, dst, tag });
    }

    let results = outcomes
        .into_iter()
        .map(|o| match o {
            Outcome::Done(v) => v,
            _ => unreachable!("failures were reported above"),
        })
        .collect();
    Ok(SpmdReport {
        results,
        sends: (0..n).map(|w| shared.hub.sent_by(w)).collect(),
        recvs: (0..n).map(|w| shared.hub.received_by(w)).collect(),
        barriers: shared
            .barriers_entered
            .iter()
            .map(|c| c.load(Ordering::Relaxed))
            .collect(),
    })
}
