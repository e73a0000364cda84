//! Per-subdomain sweep helpers shared by every strategy kernel.
//!
//! Each helper assembles a padded line and hands it to the solver's
//! one-line sweep, so a strategy is bitwise identical to the sequential
//! driver exactly when it feeds the same ghost values in. Cells travel
//! between workers as `[rho, u, v, p]` quads; the conversions here are
//! plain copies and never touch the arithmetic.

use comm_runtime::Cell4;
use euler_core::state::{Axis, GasModel};
use euler_core::sweep::{pad_periodic, sweep_line};
use euler_core::{AxisState, EulerError, PrimitiveState, YBoundary};

pub(crate) fn quad_of(w: PrimitiveState) -> Cell4 {
    [w.rho, w.u, w.v, w.p]
}

pub(crate) fn prim_of(q: Cell4) -> PrimitiveState {
    PrimitiveState {
        rho: q[0],
        u: q[1],
        v: q[2],
        p: q[3],
    }
}

pub(crate) fn axis_of(q: Cell4, axis: Axis) -> AxisState {
    prim_of(q).to_axis(axis)
}

/// Flatten quads into a message payload.
pub(crate) fn flatten(cells: &[Cell4]) -> Vec<f64> {
    let mut flat = Vec::with_capacity(cells.len() * 4);
    for q in cells {
        flat.extend_from_slice(q);
    }
    flat
}

/// Rebuild quads from a message payload.
pub(crate) fn unflatten(flat: &[f64]) -> Vec<Cell4> {
    flat.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect()
}

/// One extracted boundary row of a row-major subdomain.
pub(crate) fn row_copy(cells: &[Cell4], ncols: usize, r: usize) -> Vec<Cell4> {
    cells[r * ncols..(r + 1) * ncols].to_vec()
}

/// One extracted boundary column of a row-major subdomain.
pub(crate) fn column_copy(cells: &[Cell4], ncols: usize, c: usize) -> Vec<Cell4> {
    cells.iter().skip(c).step_by(ncols).copied().collect()
}

/// X sweep of rows that span the whole domain width: each row wraps
/// periodically onto itself, exactly like the sequential sweep.
pub(crate) fn x_sweep_rows_periodic(
    cells: &mut [Cell4],
    ncols: usize,
    lambda: f64,
    gas: GasModel,
) -> Result<(), EulerError> {
    let mut line = Vec::with_capacity(ncols);
    for row in cells.chunks_exact_mut(ncols) {
        line.clear();
        line.extend(row.iter().map(|q| axis_of(*q, Axis::X)));
        let padded = pad_periodic(&line);
        let updated = sweep_line(&padded, lambda, gas)?;
        for (ix, a) in updated.into_iter().enumerate() {
            row[ix] = quad_of(a.to_primitive(Axis::X));
        }
    }
    Ok(())
}

/// X sweep of a patch with explicit halo columns, one ghost cell per local
/// row on each side.
pub(crate) fn x_sweep_rows_with_halos(
    cells: &mut [Cell4],
    ncols: usize,
    lambda: f64,
    gas: GasModel,
    left: &[Cell4],
    right: &[Cell4],
) -> Result<(), EulerError> {
    let mut padded = Vec::with_capacity(ncols + 2);
    for (r, row) in cells.chunks_exact_mut(ncols).enumerate() {
        padded.clear();
        padded.push(axis_of(left[r], Axis::X));
        padded.extend(row.iter().map(|q| axis_of(*q, Axis::X)));
        padded.push(axis_of(right[r], Axis::X));
        let updated = sweep_line(&padded, lambda, gas)?;
        for (ix, a) in updated.into_iter().enumerate() {
            row[ix] = quad_of(a.to_primitive(Axis::X));
        }
    }
    Ok(())
}

/// Y sweep of a row-major subdomain with explicit ghost rows below and
/// above.
pub(crate) fn y_sweep_with_ghosts(
    cells: &mut [Cell4],
    ncols: usize,
    lambda: f64,
    gas: GasModel,
    below: &[Cell4],
    above: &[Cell4],
) -> Result<(), EulerError> {
    let nrows = cells.len() / ncols;
    let mut padded = Vec::with_capacity(nrows + 2);
    for ix in 0..ncols {
        padded.clear();
        padded.push(axis_of(below[ix], Axis::Y));
        padded.extend((0..nrows).map(|r| axis_of(cells[r * ncols + ix], Axis::Y)));
        padded.push(axis_of(above[ix], Axis::Y));
        let updated = sweep_line(&padded, lambda, gas)?;
        for (r, a) in updated.into_iter().enumerate() {
            cells[r * ncols + ix] = quad_of(a.to_primitive(Axis::Y));
        }
    }
    Ok(())
}

/// Ghost row below a subdomain touching the domain bottom: the prescribed
/// inflow state, or (periodic, single band) the subdomain's own top row.
pub(crate) fn boundary_ghost_below(cells: &[Cell4], ncols: usize, y_mode: &YBoundary) -> Vec<Cell4> {
    match y_mode {
        YBoundary::Periodic => {
            let nrows = cells.len() / ncols;
            row_copy(cells, ncols, nrows - 1)
        }
        YBoundary::InflowOutflow { inflow } => vec![quad_of(*inflow); ncols],
    }
}

/// Ghost row above a subdomain touching the domain top: a zero-gradient
/// copy of its own top row, or (periodic, single band) its own bottom row.
pub(crate) fn boundary_ghost_above(cells: &[Cell4], ncols: usize, y_mode: &YBoundary) -> Vec<Cell4> {
    match y_mode {
        YBoundary::Periodic => row_copy(cells, ncols, 0),
        YBoundary::InflowOutflow { .. } => {
            let nrows = cells.len() / ncols;
            row_copy(cells, ncols, nrows - 1)
        }
    }
}
