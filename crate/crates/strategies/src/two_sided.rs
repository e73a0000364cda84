//! Message-passing strategies: every halo travels as an explicit send and
//! a matching receive through the buffered channel hub. No barriers are
//! crossed inside a step; the channel handshakes alone order the data.
//!
//! `two_sided_row` splits the grid into full-width row bands. The x sweep
//! wraps each row locally, so only the y sweep needs halo rows: an interior
//! worker sends 2 and receives 2 messages per Lie step.
//!
//! `two_sided_patch` splits the grid into near-square patches and runs a
//! full four-neighbor exchange before *each* directional sweep, the pattern
//! a port of a row code to patches naturally lands on: every interior
//! worker sends 8 and receives 8 messages per step, even though each sweep
//! consumes only half the arriving strips.

use std::time::Instant;

use comm_runtime::{spawn_spmd, Cell4, WorkerCtx};
use euler_core::{BoundarySpec, FieldState, TimeControls, YBoundary};

use crate::band::{
    boundary_ghost_above, boundary_ghost_below, column_copy, flatten, row_copy, unflatten,
    x_sweep_rows_periodic, x_sweep_rows_with_halos, y_sweep_with_ghosts,
};
use crate::decompose::DecompositionPlan;
use crate::driver::{assemble, extract_subdomain, RunReport, GAS};
use crate::error::StrategyError;
use crate::id::StrategyId;

/// Message tags name the direction the payload travels.
const TAG_UP: u64 = 1; // sender's top row, to the worker above
const TAG_DOWN: u64 = 2; // sender's bottom row, to the worker below
const TAG_RIGHT: u64 = 3; // sender's rightmost column, to the worker right
const TAG_LEFT: u64 = 4; // sender's leftmost column, to the worker left

/// Ghost rows below and above the band; `None` where the physical boundary
/// resolves the halo locally.
type RowHalos = (Option<Vec<Cell4>>, Option<Vec<Cell4>>);

pub(crate) fn run(
    strategy: StrategyId,
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    plan: &DecompositionPlan,
) -> Result<RunReport, StrategyError> {
    let spec = field.spec;
    let lambda_x = controls.dt / spec.dx();
    let lambda_y = controls.dt / spec.dy();
    let periodic = matches!(bc.y_mode, YBoundary::Periodic);

    let spmd = spawn_spmd(plan.n_workers(), |ctx: &WorkerCtx<'_>| {
        let w = ctx.id();
        let mut cells = extract_subdomain(field, plan, w);
        let ncols = plan.cols_of(w).len();
        let nrows = plan.rows_of(w).len();
        let up = plan.up_neighbor(w, periodic);
        let down = plan.down_neighbor(w, periodic);
        let left = plan.left_neighbor(w);
        let right = plan.right_neighbor(w);

        ctx.barrier()?;
        let clock = Instant::now();
        for _ in 0..controls.steps {
            if strategy == StrategyId::TwoSidedPatch {
                let halos = exchange_all_neighbors(ctx, &cells, ncols, nrows, up, down, left, right)?;
                match (halos.left, halos.right) {
                    (Some(l), Some(r)) => {
                        x_sweep_rows_with_halos(&mut cells, ncols, lambda_x, GAS, &l, &r)?
                    }
                    _ => x_sweep_rows_periodic(&mut cells, ncols, lambda_x, GAS)?,
                }
                let halos = exchange_all_neighbors(ctx, &cells, ncols, nrows, up, down, left, right)?;
                let below = halos
                    .below
                    .unwrap_or_else(|| boundary_ghost_below(&cells, ncols, &bc.y_mode));
                let above = halos
                    .above
                    .unwrap_or_else(|| boundary_ghost_above(&cells, ncols, &bc.y_mode));
                y_sweep_with_ghosts(&mut cells, ncols, lambda_y, GAS, &below, &above)?;
            } else {
                // Row bands: x wraps locally, only y needs an exchange.
                x_sweep_rows_periodic(&mut cells, ncols, lambda_x, GAS)?;
                let (below, above) = exchange_rows(ctx, &cells, ncols, nrows, up, down)?;
                let below =
                    below.unwrap_or_else(|| boundary_ghost_below(&cells, ncols, &bc.y_mode));
                let above =
                    above.unwrap_or_else(|| boundary_ghost_above(&cells, ncols, &bc.y_mode));
                y_sweep_with_ghosts(&mut cells, ncols, lambda_y, GAS, &below, &above)?;
            }
        }
        ctx.barrier()?;
        Ok::<_, StrategyError>((cells, clock.elapsed().as_secs_f64()))
    })?;

    Ok(assemble(spec, plan, spmd))
}

/// Swap boundary rows with the vertical neighbors. Returns the halo rows
/// `(below, above)`; `None` where no neighbor exists and the ghost row is
/// built locally.
fn exchange_rows(
    ctx: &WorkerCtx<'_>,
    cells: &[Cell4],
    ncols: usize,
    nrows: usize,
    up: Option<usize>,
    down: Option<usize>,
) -> Result<RowHalos, StrategyError> {
    if let Some(nb) = up {
        ctx.send_async(nb, TAG_UP, &flatten(&row_copy(cells, ncols, nrows - 1)))?;
    }
    if let Some(nb) = down {
        ctx.send_async(nb, TAG_DOWN, &flatten(&row_copy(cells, ncols, 0)))?;
    }
    let mut tickets = Vec::with_capacity(2);
    if let Some(nb) = down {
        // The worker below sent its top row upward: our halo row below.
        tickets.push(ctx.recv_async(nb, TAG_UP, 4 * ncols)?);
    }
    if let Some(nb) = up {
        tickets.push(ctx.recv_async(nb, TAG_DOWN, 4 * ncols)?);
    }
    let mut payloads = ctx.wait_all(&tickets)?.into_iter();
    let below = down.map(|_| unflatten(&payloads.next().expect("below halo")));
    let above = up.map(|_| unflatten(&payloads.next().expect("above halo")));
    Ok((below, above))
}

struct PatchHalos {
    left: Option<Vec<Cell4>>,
    right: Option<Vec<Cell4>>,
    below: Option<Vec<Cell4>>,
    above: Option<Vec<Cell4>>,
}

/// Ship all four boundary strips to the four neighbors and collect theirs:
/// the full exchange run before every sweep of `two_sided_patch`.
#[allow(clippy::too_many_arguments)]
fn exchange_all_neighbors(
    ctx: &WorkerCtx<'_>,
    cells: &[Cell4],
    ncols: usize,
    nrows: usize,
    up: Option<usize>,
    down: Option<usize>,
    left: Option<usize>,
    right: Option<usize>,
) -> Result<PatchHalos, StrategyError> {
    if let Some(nb) = up {
        ctx.send_async(nb, TAG_UP, &flatten(&row_copy(cells, ncols, nrows - 1)))?;
    }
    if let Some(nb) = down {
        ctx.send_async(nb, TAG_DOWN, &flatten(&row_copy(cells, ncols, 0)))?;
    }
    if let Some(nb) = right {
        ctx.send_async(nb, TAG_RIGHT, &flatten(&column_copy(cells, ncols, ncols - 1)))?;
    }
    if let Some(nb) = left {
        ctx.send_async(nb, TAG_LEFT, &flatten(&column_copy(cells, ncols, 0)))?;
    }

    let mut tickets = Vec::with_capacity(4);
    if let Some(nb) = down {
        tickets.push(ctx.recv_async(nb, TAG_UP, 4 * ncols)?);
    }
    if let Some(nb) = up {
        tickets.push(ctx.recv_async(nb, TAG_DOWN, 4 * ncols)?);
    }
    if let Some(nb) = left {
        // The left neighbor sent its rightmost column rightward: our left halo.
        tickets.push(ctx.recv_async(nb, TAG_RIGHT, 4 * nrows)?);
    }
    if let Some(nb) = right {
        tickets.push(ctx.recv_async(nb, TAG_LEFT, 4 * nrows)?);
    }

    let mut payloads = ctx.wait_all(&tickets)?.into_iter();
    let below = down.map(|_| unflatten(&payloads.next().expect("below halo")));
    let above = up.map(|_| unflatten(&payloads.next().expect("above halo")));
    let left = left.map(|_| unflatten(&payloads.next().expect("left halo")));
    let right = right.map(|_| unflatten(&payloads.next().expect("right halo")));
    Ok(PatchHalos {
        left,
        right,
        below,
        above,
    })
}
