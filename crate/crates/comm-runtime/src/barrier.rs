//! Group barrier that parks waiting threads and can be poisoned.
//!
//! `std::sync::Barrier` spins briefly and cannot be interrupted; here a
//! failed worker must be able to wake every parked peer, and the machine
//! may have far fewer cores than workers, so waiters block on a condition
//! variable and a generation counter guards against spurious wakeups.

use crate::error::CommError;
use std::sync::{Condvar, Mutex};

struct State {
    arrived: usize,
    generation: u64,
    poisoned: bool,
}

pub(crate) struct PoisonBarrier {
    n: usize,
    state: Mutex<State>,
    cv: Condvar,
}

impl PoisonBarrier {
    pub(crate) fn new(n: usize) -> Self {
        PoisonBarrier {
            n,
            state: Mutex::new(State {
                arrived: 0,
                generation: 0,
                poisoned: false,
            }),
            cv: Condvar::new(),
        }
    }

    /// Block until all `n` workers have arrived, or the barrier is poisoned.
    pub(crate) fn wait(&self) -> Result<(), CommError> {
        let mut st = self.state.lock().unwrap();
        if st.poisoned {
            return Err(CommError::Poisoned);
        }
        st.arrived += 1;
        if st.arrived == self.n {
            st.arrived = 0;
            st.generation = st.generation.wrapping_add(1);
            self.cv.notify_all();
            return Ok(());
        }
        let my_generation = st.generation;
        while st.generation == my_generation && !st.poisoned {
            st = self.cv.wait(st).unwrap();
        }
        if st.poisoned {
            Err(CommError::Poisoned)
        } else {
            Ok(())
        }
    }

    /// Mark the barrier failed and wake everyone parked in [`wait`].
    pub(crate) fn poison(&self) {
        let mut st = self.state.lock().unwrap();
        st.poisoned = true;
        self.cv.notify_all();
    }
}
