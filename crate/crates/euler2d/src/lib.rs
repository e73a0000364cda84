//! Command-line front end for the structured-grid compressible-flow
//! solver: simulation runs with CSV snapshot export, strong/weak scaling
//! campaigns, and a built-in verification suite backed by an independent
//! bisection oracle for the interface pressure.
//!
//! The library half exists so the configuration surface, the snapshot
//! format, and every verification check are testable without spawning the
//! binary; `main.rs` is a thin dispatcher over [`commands`].

pub mod commands;
pub mod config;
pub mod error;
pub mod oracle;
pub mod snapshot;
pub mod verify;

pub use commands::{cmd_bench, cmd_simulate, cmd_verify};
pub use config::{BcY, BenchArgs, Cli, Command, IcPreset, RunConfig, VerifyArgs, VerifyLevel};
pub use error::CliError;
pub use snapshot::{snapshot_file_name, write_snapshot};
pub use verify::{run_full, run_quick, CheckOutcome};
