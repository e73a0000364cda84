//! Structured grid, field storage, time controls and boundary description.
//!
//! Fields live on a uniform cell-centred grid over a rectangle. Storage is
//! row-major: a row holds all cells with the same `y`, so splitting the
//! domain into horizontal bands hands each worker a contiguous slice. The
//! x direction is always periodic; the y direction is either periodic or an
//! inflow/outflow pair (prescribed state below, zero-gradient above).

use crate::error::EulerError;
use crate::state::{prim_to_cons, GasModel, PrimitiveState};

/// Geometry of a uniform cell-centred grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
}

impl GridSpec {
    /// Grid over the unit square. Both directions need at least two cells so
    /// every sweep sees a real neighbour.
    pub fn new(nx: usize, ny: usize) -> Result<Self, EulerError> {
        Self::with_lengths(nx, ny, 1.0, 1.0)
    }

    /// Grid over a rectangle of side lengths `lx` by `ly`.
    pub fn with_lengths(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Self, EulerError> {
        // Negated comparisons so NaN lengths fail validation too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if nx < 2 || ny < 2 || !(lx > 0.0) || !(ly > 0.0) {
            return Err(EulerError::InvalidGrid { nx, ny });
        }
        Ok(GridSpec { nx, ny, lx, ly })
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    /// Centre of cell `(ix, iy)`.
    pub fn cell_center(&self, ix: usize, iy: usize) -> (f64, f64) {
        (
            (ix as f64 + 0.5) * self.dx(),
            (iy as f64 + 0.5) * self.dy(),
        )
    }
}

/// A primitive-variable field over a whole grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub spec: GridSpec,
    pub cells: Vec<PrimitiveState>,
}

impl FieldState {
    /// Field with every cell set to `fill`.
    pub fn uniform(spec: GridSpec, fill: PrimitiveState) -> Self {
        FieldState {
            spec,
            cells: vec![fill; spec.cell_count()],
        }
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> &PrimitiveState {
        &self.cells[iy * self.spec.nx + ix]
    }

    #[inline]
    pub fn at_mut(&mut self, ix: usize, iy: usize) -> &mut PrimitiveState {
        &mut self.cells[iy * self.spec.nx + ix]
    }

    /// One row (constant `y`) as a slice.
    pub fn row(&self, iy: usize) -> &[PrimitiveState] {
        let nx = self.spec.nx;
        &self.cells[iy * nx..(iy + 1) * nx]
    }

    /// Exact equality down to the sign of zero. Two fields that compare
    /// equal here are interchangeable in any further computation.
    pub fn bitwise_eq(&self, other: &FieldState) -> bool {
        self.spec == other.spec
            && self.cells.len() == other.cells.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| {
                    a.rho.to_bits() == b.rho.to_bits()
                        && a.u.to_bits() == b.u.to_bits()
                        && a.v.to_bits() == b.v.to_bits()
                        && a.p.to_bits() == b.p.to_bits()
                })
    }
}

/// Fixed-step march to a final time.
///
/// The number of steps is `t_final / dt` rounded to the nearest integer, so
/// the reached time is `steps * dt`; callers should pick commensurable
/// values when the exact final time matters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeControls {
    pub dt: f64,
    pub t_final: f64,
    pub steps: usize,
}

impl TimeControls {
    pub fn new(dt: f64, t_final: f64) -> Result<Self, EulerError> {
        // Negated comparison so a NaN step fails validation too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(dt > 0.0) || !dt.is_finite() || !t_final.is_finite() {
            return Err(EulerError::InvalidTimeControls { dt, t_final });
        }
        let steps = (t_final / dt).round();
        if steps < 1.0 {
            return Err(EulerError::InvalidTimeControls { dt, t_final });
        }
        Ok(TimeControls {
            dt,
            t_final,
            steps: steps as usize,
        })
    }
}

/// Boundary treatment in the y direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YBoundary {
    /// Prescribed state streaming in from below, zero-gradient outflow above.
    InflowOutflow { inflow: PrimitiveState },
    Periodic,
}

/// Boundary description for a run. The x direction is always periodic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySpec {
    pub y_mode: YBoundary,
    /// Extra rows of quiescent background appended above the domain before
    /// the run and cropped afterwards, keeping the outflow edge far from
    /// the region of interest.
    pub ghost_band_rows: usize,
}

impl Default for BoundarySpec {
    fn default() -> Self {
        BoundarySpec {
            y_mode: YBoundary::InflowOutflow {
                inflow: PrimitiveState {
                    rho: 1.0,
                    u: 0.0,
                    v: 0.0,
                    p: 1e-4,
                },
            },
            ghost_band_rows: 0,
        }
    }
}

impl BoundarySpec {
    pub fn periodic_y() -> Self {
        BoundarySpec {
            y_mode: YBoundary::Periodic,
            ghost_band_rows: 0,
        }
    }
}

/// Append `rows` copies of the top row above the domain, growing `ly` so
/// the cell size stays put. Pushes the outflow edge away from the region of
/// interest; [`crop_ghost_band`] undoes it.
pub fn extend_ghost_band(field: &FieldState, rows: usize) -> Result<FieldState, EulerError> {
    if rows == 0 {
        return Ok(field.clone());
    }
    let spec = field.spec;
    let new_ny = spec.ny + rows;
    let new_spec = GridSpec {
        ny: new_ny,
        ly: spec.ly * new_ny as f64 / spec.ny as f64,
        ..spec
    };
    let mut cells = Vec::with_capacity(new_spec.cell_count());
    cells.extend_from_slice(&field.cells);
    let top = field.row(spec.ny - 1).to_vec();
    for _ in 0..rows {
        cells.extend_from_slice(&top);
    }
    Ok(FieldState { spec: new_spec, cells })
}

/// Drop the top `rows` rows and restore the original extent.
pub fn crop_ghost_band(field: &FieldState, rows: usize) -> Result<FieldState, EulerError> {
    if rows == 0 {
        return Ok(field.clone());
    }
    let spec = field.spec;
    if spec.ny <= rows + 1 {
        return Err(EulerError::InvalidGrid { nx: spec.nx, ny: spec.ny });
    }
    let new_ny = spec.ny - rows;
    let new_spec = GridSpec {
        ny: new_ny,
        ly: spec.ly * new_ny as f64 / spec.ny as f64,
        ..spec
    };
    Ok(FieldState {
        spec: new_spec,
        cells: field.cells[..new_spec.cell_count()].to_vec(),
    })
}

/// Domain integrals of the conserved quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub mass: f64,
    pub momentum_x: f64,
    pub momentum_y: f64,
    pub energy: f64,
}

/// Integrate the conserved variables over the domain (sum times cell area).
pub fn total_invariants(field: &FieldState, gas: GasModel) -> Invariants {
    let mut sums = [0.0f64; 4];
    for w in &field.cells {
        let c = prim_to_cons(*w, gas);
        sums[0] += c.rho;
        sums[1] += c.mx;
        sums[2] += c.my;
        sums[3] += c.e;
    }
    let area = field.spec.dx() * field.spec.dy();
    Invariants {
        mass: sums[0] * area,
        momentum_x: sums[1] * area,
        momentum_y: sums[2] * area,
        energy: sums[3] * area,
    }
}

/// Largest CFL number `dt * max((|u|+a)/dx, (|v|+a)/dy)` over the field.
/// Values above 1 make the split first-order scheme unstable.
pub fn max_cfl(field: &FieldState, dt: f64, gas: GasModel) -> f64 {
    let dx = field.spec.dx();
    let dy = field.spec.dy();
    let mut worst = 0.0f64;
    for w in &field.cells {
        let a = gas.sound_speed(w.rho, w.p);
        let cx = (w.u.abs() + a) / dx;
        let cy = (w.v.abs() + a) / dy;
        worst = worst.max(cx.max(cy));
    }
    dt * worst
}
