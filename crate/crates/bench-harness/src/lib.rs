//! Strong- and weak-scaling benchmark protocols for the strategy suite.
//!
//! A [`BenchPlan`] names the strategies, worker counts, grid, and time
//! march; [`run_strong_scaling`] and [`run_weak_scaling`] execute it one
//! configuration at a time and hand back [`BenchRecord`]s carrying the
//! reduced wall time plus the 1-worker baseline of the same strategy.
//! [`summarize`] collapses records into deterministic table rows with the
//! derived factor (speedup for strong runs, normalized runtime for weak
//! runs) rounded to one decimal; [`format_table`] prints them,
//! [`export_report`] writes CSV or a gnuplot script with data sidecars, and
//! [`import_csv`] reads an exported CSV back losslessly.
//!
//! Standard protocols (pinned by golden tests): strong scaling fixes a
//! 512x1024 grid for 500 steps at dt = 1e-5; weak scaling gives every
//! worker a 64x128 share for 100 steps, doubling the grid side-about-side
//! as workers double.
//!
//! Timings come from the strategy driver, which brackets only the step
//! loop with barriers — setup, initial-condition construction, and the
//! final gather never count. Configurations run strictly one at a time;
//! running two plans concurrently in one process would have them steal
//! each other's cores.

mod cores;
mod error;
mod plan;
mod report;
mod run;

pub use cores::physical_core_count;
pub use error::BenchError;
pub use plan::{weak_grid_for, BenchMode, BenchPlan, BenchRecord, Reduction};
pub use report::{export_report, format_table, import_csv, summarize, ReportFormat, SummaryRow};
pub use run::{run_strong_scaling, run_weak_scaling};
