use thiserror::Error;

/// Everything that can go wrong inside the solver core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EulerError {
    /// A state with non-positive density or pressure was produced or supplied.
    #[error("Non-Physical State: density {rho:.4e}, pressure {p:.4e}")]
    NonPhysicalState { rho: f64, p: f64 },

    /// The two states separate fast enough to open a vacuum region; the
    /// exact Riemann solver does not cover this regime.
    #[error("Vacuum Generated: velocity jump {du:.4e} exceeds critical {du_crit:.4e}")]
    VacuumGenerated { du: f64, du_crit: f64 },

    /// The star-pressure iteration exhausted its budget without meeting the
    /// residual tolerance.
    #[error("No Convergence: residual {residual:.4e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    /// Grid construction with fewer than two cells per direction.
    #[error("Invalid Grid: {nx} x {ny} (need at least 2 cells per direction)")]
    InvalidGrid { nx: usize, ny: usize },

    /// Time controls that do not describe at least one whole step.
    #[error("Invalid Time Controls: dt {dt:.4e}, t_final {t_final:.4e}")]
    InvalidTimeControls { dt: f64, t_final: f64 },

    /// The time step violates the explicit stability bound on this field.
    #[error("CFL Exceeded: max CFL number {cfl:.4} > 1")]
    CflExceeded { cfl: f64 },
}
