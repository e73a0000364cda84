//! Strategies whose halos arrive by one-sided block reads from the shared
//! array: the owner of the data runs no matching code, so every fetch is
//! bracketed by barriers that separate it from the owner's writes.
//!
//! * `one_sided_halo`: row bands; each worker sweeps its band in place and,
//!   between two barriers, pulls the two neighbor boundary rows with one
//!   contiguous block read each. Two barriers per step.
//! * `one_sided_patch`: near-square patches stored patch-major, so a
//!   neighbor's boundary row is one contiguous block read and a boundary
//!   column one strided read. Both halo phases sit between barriers: four
//!   per step.
//! * `one_sided_patch_fused`: as `one_sided_patch`, but both halo sets are
//!   fetched once, before the x sweep. The y sweep then runs on halo rows
//!   from the pre-split state — one communication phase and two barriers
//!   per step, at the price of a first-order-in-`dt` error against the
//!   exact schedule. Halving `dt` halves the gap.

use std::ops::Range;
use std::time::Instant;

use comm_runtime::{spawn_spmd, Distribution, SharedArray2D, WorkerCtx};
use euler_core::{BoundarySpec, FieldState, TimeControls, YBoundary};

use crate::band::{
    boundary_ghost_above, boundary_ghost_below, quad_of, x_sweep_rows_periodic,
    x_sweep_rows_with_halos, y_sweep_with_ghosts,
};
use crate::decompose::DecompositionPlan;
use crate::driver::{assemble, RunReport, GAS};
use crate::error::StrategyError;
use crate::id::StrategyId;

pub(crate) fn run(
    strategy: StrategyId,
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    plan: &DecompositionPlan,
) -> Result<RunReport, StrategyError> {
    match strategy {
        StrategyId::OneSidedHalo => run_halo(field, controls, bc, plan),
        _ => run_patches(strategy, field, controls, bc, plan),
    }
}

fn run_halo(
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    plan: &DecompositionPlan,
) -> Result<RunReport, StrategyError> {
    let spec = field.spec;
    let (nx, ny) = (spec.nx, spec.ny);
    let n = plan.n_workers();
    let lambda_x = controls.dt / spec.dx();
    let lambda_y = controls.dt / spec.dy();
    let periodic = matches!(bc.y_mode, YBoundary::Periodic);

    let lengths: Vec<usize> = (0..n).map(|w| plan.rows_of(w).len() * nx).collect();
    let arr = SharedArray2D::new(ny, nx, Distribution::contiguous(&lengths)?, [0.0; 4])?;
    for iy in 0..ny {
        for ix in 0..nx {
            arr.global_write(iy * nx + ix, quad_of(*field.at(ix, iy)))?;
        }
    }

    let spmd = spawn_spmd(n, |ctx: &WorkerCtx<'_>| -> Result<_, StrategyError> {
        let w = ctx.id();
        let rows = plan.rows_of(w);
        let below_row = if rows.start > 0 {
            Some(rows.start - 1)
        } else if periodic {
            Some(ny - 1)
        } else {
            None
        };
        let above_row = if rows.end < ny {
            Some(rows.end)
        } else if periodic {
            Some(0)
        } else {
            None // zero-gradient, built from the band's own top row
        };
        let mut view = arr.local_view(w, w)?;

        ctx.barrier()?;
        let clock = Instant::now();
        for _ in 0..controls.steps {
            x_sweep_rows_periodic(&mut view[..], nx, lambda_x, GAS)?;
            ctx.barrier()?; // post-x rows published
            let below = match below_row {
                Some(gr) => arr.get_block(gr * nx..(gr + 1) * nx)?,
                None => boundary_ghost_below(&view[..], nx, &bc.y_mode),
            };
            let above = match above_row {
                Some(gr) => arr.get_block(gr * nx..(gr + 1) * nx)?,
                None => boundary_ghost_above(&view[..], nx, &bc.y_mode),
            };
            ctx.barrier()?; // everyone done fetching before anyone writes
            y_sweep_with_ghosts(&mut view[..], nx, lambda_y, GAS, &below, &above)?;
        }
        ctx.barrier()?;
        let wall = clock.elapsed().as_secs_f64();
        Ok((view.to_vec(), wall))
    })?;

    Ok(assemble(spec, plan, spmd))
}

/// Where a neighbor patch's boundary strips live in the patch-major array.
struct PatchRegion {
    offset: usize,
    nrows: usize,
    ncols: usize,
}

impl PatchRegion {
    fn of(arr: &SharedArray2D, plan: &DecompositionPlan, w: usize) -> PatchRegion {
        PatchRegion {
            offset: arr.dist().region(w).start,
            nrows: plan.rows_of(w).len(),
            ncols: plan.cols_of(w).len(),
        }
    }

    fn bottom_row(&self) -> Range<usize> {
        self.offset..self.offset + self.ncols
    }

    fn top_row(&self) -> Range<usize> {
        self.offset + (self.nrows - 1) * self.ncols..self.offset + self.nrows * self.ncols
    }
}

fn run_patches(
    strategy: StrategyId,
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    plan: &DecompositionPlan,
) -> Result<RunReport, StrategyError> {
    let spec = field.spec;
    let (nx, ny) = (spec.nx, spec.ny);
    let n = plan.n_workers();
    let lambda_x = controls.dt / spec.dx();
    let lambda_y = controls.dt / spec.dy();
    let periodic = matches!(bc.y_mode, YBoundary::Periodic);
    let fused = strategy == StrategyId::OneSidedPatchFused;

    // Patch-major storage: each patch contiguous and locally row-major, so
    // its boundary rows are blocks and its boundary columns strided runs.
    let lengths: Vec<usize> = (0..n)
        .map(|w| plan.rows_of(w).len() * plan.cols_of(w).len())
        .collect();
    let arr = SharedArray2D::new(ny, nx, Distribution::contiguous(&lengths)?, [0.0; 4])?;
    for w in 0..n {
        let region = PatchRegion::of(&arr, plan, w);
        for (r, gy) in plan.rows_of(w).enumerate() {
            for (c, gx) in plan.cols_of(w).enumerate() {
                arr.global_write(region.offset + r * region.ncols + c, quad_of(*field.at(gx, gy)))?;
            }
        }
    }

    let spmd = spawn_spmd(n, |ctx: &WorkerCtx<'_>| -> Result<_, StrategyError> {
        let w = ctx.id();
        let ncols = plan.cols_of(w).len();
        let up = plan.up_neighbor(w, periodic).map(|nb| PatchRegion::of(&arr, plan, nb));
        let down = plan.down_neighbor(w, periodic).map(|nb| PatchRegion::of(&arr, plan, nb));
        let left = plan.left_neighbor(w).map(|nb| PatchRegion::of(&arr, plan, nb));
        let right = plan.right_neighbor(w).map(|nb| PatchRegion::of(&arr, plan, nb));
        let mut view = arr.local_view(w, w)?;

        // One-sided column fetches: a neighbor's rightmost / leftmost column.
        let fetch_x_halos = |left: &Option<PatchRegion>, right: &Option<PatchRegion>| {
            let l = match left {
                Some(reg) => Some(arr.get_strided(reg.offset + reg.ncols - 1, reg.ncols, reg.nrows)?),
                None => None,
            };
            let r = match right {
                Some(reg) => Some(arr.get_strided(reg.offset, reg.ncols, reg.nrows)?),
                None => None,
            };
            Ok::<_, StrategyError>((l, r))
        };
        // One-sided row fetches: the patch below's top row, the patch
        // above's bottom row.
        let fetch_y_halos = |down: &Option<PatchRegion>, up: &Option<PatchRegion>| {
            let b = match down {
                Some(reg) => Some(arr.get_block(reg.top_row())?),
                None => None,
            };
            let a = match up {
                Some(reg) => Some(arr.get_block(reg.bottom_row())?),
                None => None,
            };
            Ok::<_, StrategyError>((b, a))
        };

        ctx.barrier()?;
        let clock = Instant::now();
        for _ in 0..controls.steps {
            let (x_halos, mut y_halos) = if fused {
                ctx.barrier()?; // previous writes published
                let x = fetch_x_halos(&left, &right)?;
                let y = fetch_y_halos(&down, &up)?; // pre-split rows, reused after the x sweep
                ctx.barrier()?; // fetches done before anyone writes
                (x, Some(y))
            } else {
                ctx.barrier()?;
                let x = fetch_x_halos(&left, &right)?;
                ctx.barrier()?;
                (x, None)
            };

            match x_halos {
                (Some(l), Some(r)) => {
                    x_sweep_rows_with_halos(&mut view[..], ncols, lambda_x, GAS, &l, &r)?
                }
                _ => x_sweep_rows_periodic(&mut view[..], ncols, lambda_x, GAS)?,
            }

            if !fused {
                ctx.barrier()?; // post-x patches published
                y_halos = Some(fetch_y_halos(&down, &up)?);
                ctx.barrier()?;
            }
            let (below, above) = y_halos.expect("y halos fetched");
            let below =
                below.unwrap_or_else(|| boundary_ghost_below(&view[..], ncols, &bc.y_mode));
            let above =
                above.unwrap_or_else(|| boundary_ghost_above(&view[..], ncols, &bc.y_mode));
            y_sweep_with_ghosts(&mut view[..], ncols, lambda_y, GAS, &below, &above)?;
        }
        ctx.barrier()?;
        let wall = clock.elapsed().as_secs_f64();
        Ok((view.to_vec(), wall))
    })?;

    Ok(assemble(spec, plan, spmd))
}
