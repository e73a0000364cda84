//! Buffered point-to-point message hub.
//!
//! Sends never block: the payload is copied into a FIFO keyed by
//! `(source, destination, tag)`. Receives block until a matching message
//! arrives (or the hub is poisoned). Per-worker send/receive counters feed
//! the communication-volume assertions in the strategy tests.

use crate::error::CommError;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Condvar, Mutex};

type Key = (usize, usize, u64);

struct HubState {
    queues: HashMap<Key, std::collections::VecDeque<Vec<f64>>>,
    poisoned: bool,
}

pub(crate) struct MessageHub {
    n: usize,
    state: Mutex<HubState>,
    cv: Condvar,
    sent: Vec<AtomicU64>,
    received: Vec<AtomicU64>,
}

impl MessageHub {
    pub(crate) fn new(n: usize) -> Self {
        MessageHub {
            n,
            state: Mutex::new(HubState {
                queues: HashMap::new(),
                poisoned: false,
            }),
            cv: Condvar::new(),
            sent: (0..n).map(|_| AtomicU64::new(0)).collect(),
            received: (0..n).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    fn check_rank(&self, rank: usize) -> Result<(), CommError> {
        if rank < self.n {
            Ok(())
        } else {
            Err(CommError::InvalidRank { rank, n: self.n })
        }
    }

    pub(crate) fn send(
        &self,
        src: usize,
        dst: usize,
        tag: u64,
        data: &[f64],
    ) -> Result<(), CommError> {
        self.check_rank(dst)?;
        let mut st = self.state.lock().unwrap();
        if st.poisoned {
            return Err(CommError::Poisoned);
        }
        st.queues
            .entry((src, dst, tag))
            .or_default()
            .push_back(data.to_vec());
        self.sent[src].fetch_add(1, Ordering::Relaxed);
        self.cv.notify_all();
        Ok(())
    }

    /// Pop the oldest message for `(src, dst, tag)` into `out`, blocking
    /// until one is available.
    pub(crate) fn recv_into(
        &self,
        src: usize,
        dst: usize,
        tag: u64,
        out: &mut [f64],
    ) -> Result<(), CommError> {
        self.check_rank(src)?;
        let key = (src, dst, tag);
        let mut st = self.state.lock().unwrap();
        loop {
            if st.poisoned {
                return Err(CommError::Poisoned);
            }
            if let Some(queue) = st.queues.get_mut(&key) {
                if let Some(msg) = queue.pop_front() {
                    if msg.len() != out.len() {
                        return Err(CommError::ShapeMismatch {
                            expected: out.len(),
                            got: msg.len(),
                        });
                    }
                    out.copy_from_slice(&msg);
                    self.received[dst].fetch_add(1, Ordering::Relaxed);
                    return Ok(());
                }
            }
            st = self.cv.wait(st).unwrap();
        }
    }

    pub(crate) fn poison(&self) {
        let mut st = self.state.lock().unwrap();
        st.poisoned = true;
        self.cv.notify_all();
    }

    /// Leftover traffic at shutdown: `(total messages, first key)`.
    pub(crate) fn orphans(&self) -> Option<(usize, Key)> {
        let st = self.state.lock().unwrap();
        let total: usize = st.queues.values().map(|q| q.len()).sum();
        if total == 0 {
            return None;
        }
        // Deterministic "first": smallest key, not hash order.
        let first = *st
            .queues
            .iter()
            .filter(|(_, q)| !q.is_empty())
            .map(|(k, _)| k)
            .min()
            .unwrap();
        Some((total, first))
    }

    pub(crate) fn sent_by(&self, worker: usize) -> u64 {
        self.sent[worker].load(Ordering::Relaxed)
    }

    pub(crate) fn received_by(&self, worker: usize) -> u64 {
        self.received[worker].load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_send_round_trip() {
        let hub = MessageHub::new(2);
        hub.send(0, 0, 7, &[1.0, 2.0, 3.0]).unwrap();
        let mut out = [0.0; 3];
        hub.recv_into(0, 0, 7, &mut out).unwrap();
        assert_eq!(out, [1.0, 2.0, 3.0]);
        assert_eq!(hub.sent_by(0), 1);
        assert_eq!(hub.received_by(0), 1);
        assert!(hub.orphans().is_none());
    }

    #[test]
    fn messages_with_one_tag_arrive_in_order() {
        let hub = MessageHub::new(2);
        for k in 0..10 {
            hub.send(0, 1, 0, &[k as f64]).unwrap();
        }
        let mut out = [0.0];
        for k in 0..10 {
            hub.recv_into(0, 1, 0, &mut out).unwrap();
            assert_eq!(out[0], k as f64);
        }
    }

    #[test]
    fn tags_keep_streams_apart() {
        let hub = MessageHub::new(2);
        hub.send(0, 1, 5, &[5.0]).unwrap();
        hub.send(0, 1, 9, &[9.0]).unwrap();
        let mut out = [0.0];
        hub.recv_into(0, 1, 9, &mut out).unwrap();
        assert_eq!(out[0], 9.0);
        hub.recv_into(0, 1, 5, &mut out).unwrap();
        assert_eq!(out[0], 5.0);
    }

    #[test]
    fn wrong_length_is_reported() {
        let hub = MessageHub::new(1);
        hub.send(0, 0, 0, &[1.0, 2.0]).unwrap();
        let mut out = [0.0; 3];
        assert_eq!(
            hub.recv_into(0, 0, 0, &mut out),
            Err(CommError::ShapeMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn bad_ranks_are_rejected() {
        let hub = MessageHub::new(2);
        assert!(matches!(
            hub.send(0, 2, 0, &[1.0]),
            Err(CommError::InvalidRank { rank: 2, n: 2 })
        ));
        let mut out = [0.0];
        assert!(matches!(
            hub.recv_into(9, 0, 0, &mut out),
            Err(CommError::InvalidRank { rank: 9, n: 2 })
        ));
    }

    #[test]
    fn orphan_accounting() {
        let hub = MessageHub::new(3);
        hub.send(2, 1, 4, &[0.0]).unwrap();
        hub.send(0, 1, 3, &[0.0]).unwrap();
        let (count, first) = hub.orphans().unwrap();
        assert_eq!(count, 2);
        assert_eq!(first, (0, 1, 3));
    }
}
