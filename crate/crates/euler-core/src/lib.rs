//! First-order Godunov finite-volume solver for the two-dimensional
//! compressible Euler equations of an ideal gas.
//!
//! The scheme follows the classical layout: piecewise-constant cell data,
//! an exact Riemann solver at every cell interface, and Lie (first-order
//! operator) splitting to reduce the 2D update to one-dimensional sweeps
//! along x and then y. All routines are deterministic; given bitwise equal
//! inputs they produce bitwise equal outputs, which is what allows the
//! parallel drivers built on top of this crate to be checked for exact
//! agreement with the sequential solver.

pub mod error;
pub mod grid;
pub mod init;
pub mod riemann;
pub mod state;
pub mod sweep;

pub use error::EulerError;
pub use grid::{total_invariants, BoundarySpec, FieldState, GridSpec, Invariants, TimeControls, YBoundary};
pub use init::{DiskFeature, SedovParams};
pub use riemann::{RiemannFan, WaveKind};
pub use state::{Axis, AxisState, ConservedState, GasModel, PrimitiveState};
