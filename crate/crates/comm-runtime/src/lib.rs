//! Desk-scale SPMD execution: a fixed set of workers running the same
//! kernel over their own slice of the data, talking through either
//! two-sided message channels or one-sided access to shared arrays.
//!
//! The crate deliberately mirrors the shape of a distributed-memory job on
//! a single machine. [`spawn_spmd`] starts one OS thread per worker and
//! hands each a [`WorkerCtx`]; the context offers a group-wide barrier and
//! buffered point-to-point messages. [`SharedArray2D`] plays the role of a
//! partitioned global array: every element has exactly one owner, owners
//! update their region in place, and anyone may copy remote elements
//! without the owner's participation — provided the caller respects the
//! barrier discipline that separates remote reads from conflicting writes.
//!
//! A failure (error return or panic) in any worker poisons the barrier and
//! the message hub, so the surviving workers unblock promptly and the
//! group reports the original failure instead of deadlocking.

pub mod dist;
pub mod error;
pub mod group;
pub mod shared;

mod barrier;
mod hub;

pub use dist::Distribution;
pub use error::{CommError, SpmdError};
pub use group::{spawn_spmd, RecvTicket, SpmdReport, WorkerCtx};
pub use shared::{Cell4, LocalView, SharedArray2D};
