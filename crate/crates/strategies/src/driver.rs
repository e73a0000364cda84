//! Entry points that plan, time, and run a simulation under any strategy.
//!
//! Every run follows the same shape regardless of strategy: validate the
//! CFL precondition, decompose the grid, spawn the worker group, and inside
//! each worker `[set up; barrier; start clock; step loop; barrier; stop
//! clock]`. The clock therefore covers per-step communication and barriers
//! but neither initialization nor result gathering, and every worker
//! crosses exactly `2 + steps * barrier_count` barriers.

use std::time::Instant;

use comm_runtime::{spawn_spmd, Cell4, SpmdReport, WorkerCtx};
use euler_core::grid::{crop_ghost_band, extend_ghost_band, max_cfl};
use euler_core::state::{GasModel, IDEAL_GAS};
use euler_core::sweep::lie_step;
use euler_core::{BoundarySpec, EulerError, FieldState, GridSpec, TimeControls};

use crate::band::{prim_of, quad_of};
use crate::decompose::{decompose, DecompositionPlan};
use crate::error::StrategyError;
use crate::id::StrategyId;
use crate::{one_sided, shared_field, two_sided};

pub(crate) const GAS: GasModel = IDEAL_GAS;

/// A finished run: the final field plus the measured wall time and the
/// per-worker communication counters.
#[derive(Debug)]
pub struct RunReport {
    pub field: FieldState,
    /// Wall-clock seconds over the step loop, measured on worker 0 between
    /// the two harness barriers.
    pub wall_seconds: f64,
    /// Messages sent per worker over the whole run.
    pub sends: Vec<u64>,
    /// Messages received per worker.
    pub recvs: Vec<u64>,
    /// Barriers crossed per worker, harness barriers included.
    pub barriers: Vec<u64>,
}

/// Run `steps` Lie steps of the solver under the given strategy and return
/// the final field with the measured wall time.
pub fn run_simulation(
    strategy: StrategyId,
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    workers: usize,
) -> Result<(FieldState, f64), StrategyError> {
    run_instrumented(strategy, field, controls, bc, workers)
        .map(|r| (r.field, r.wall_seconds))
}

/// As [`run_simulation`], but also return the communication counters.
pub fn run_instrumented(
    strategy: StrategyId,
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    workers: usize,
) -> Result<RunReport, StrategyError> {
    if strategy == StrategyId::Sequential && workers != 1 {
        return Err(StrategyError::WrongWorkerCount {
            strategy: strategy.name().to_owned(),
            workers,
        });
    }

    let cfl = max_cfl(field, controls.dt, GAS);
    // Negated comparison so a NaN CFL (degenerate input state) is rejected.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(cfl <= 1.0) {
        return Err(StrategyError::Euler(EulerError::CflExceeded { cfl }));
    }

    // An optional band of ghost rows is stacked above the domain for the
    // whole run and cropped off afterwards.
    let pad = bc.ghost_band_rows;
    let work_field;
    let work_bc;
    if pad > 0 {
        work_field = extend_ghost_band(field, pad)?;
        work_bc = BoundarySpec {
            y_mode: bc.y_mode,
            ghost_band_rows: 0,
        };
    } else {
        work_field = field.clone();
        work_bc = *bc;
    }

    let plan = decompose(&work_field.spec, workers, strategy.decomposition())?;

    let report = match strategy {
        StrategyId::Sequential => run_sequential(&work_field, controls, &work_bc)?,
        StrategyId::TwoSidedRow | StrategyId::TwoSidedPatch => {
            two_sided::run(strategy, &work_field, controls, &work_bc, &plan)?
        }
        StrategyId::SharedNaive | StrategyId::SharedPointer | StrategyId::SharedBarrier => {
            shared_field::run(strategy, &work_field, controls, &work_bc, &plan)?
        }
        StrategyId::OneSidedHalo | StrategyId::OneSidedPatch | StrategyId::OneSidedPatchFused => {
            one_sided::run(strategy, &work_field, controls, &work_bc, &plan)?
        }
    };

    if pad > 0 {
        let field = crop_ghost_band(&report.field, pad)?;
        Ok(RunReport { field, ..report })
    } else {
        Ok(report)
    }
}

fn run_sequential(
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
) -> Result<RunReport, StrategyError> {
    let spmd = spawn_spmd(1, |ctx: &WorkerCtx<'_>| -> Result<_, StrategyError> {
        let mut f = field.clone();
        ctx.barrier()?;
        let clock = Instant::now();
        for _ in 0..controls.steps {
            lie_step(&mut f, controls.dt, bc, GAS)?;
        }
        ctx.barrier()?;
        Ok((f, clock.elapsed().as_secs_f64()))
    })?;
    let SpmdReport {
        results,
        sends,
        recvs,
        barriers,
    } = spmd;
    let (field, wall_seconds) = results.into_iter().next().expect("one worker");
    Ok(RunReport {
        field,
        wall_seconds,
        sends,
        recvs,
        barriers,
    })
}

/// Copy worker `w`'s subdomain out of the global field, local row-major.
pub(crate) fn extract_subdomain(
    field: &FieldState,
    plan: &DecompositionPlan,
    w: usize,
) -> Vec<Cell4> {
    let rows = plan.rows_of(w);
    let cols = plan.cols_of(w);
    let mut cells = Vec::with_capacity(rows.len() * cols.len());
    for gy in rows {
        for gx in cols.clone() {
            cells.push(quad_of(*field.at(gx, gy)));
        }
    }
    cells
}

/// Stitch per-worker subdomains (rank order, local row-major) back into a
/// global field, and pair the result with the per-worker counters.
pub(crate) fn assemble(
    spec: GridSpec,
    plan: &DecompositionPlan,
    spmd: SpmdReport<(Vec<Cell4>, f64)>,
) -> RunReport {
    let SpmdReport {
        results,
        sends,
        recvs,
        barriers,
    } = spmd;
    let wall_seconds = results[0].1;
    let fill = prim_of(results[0].0[0]);
    let mut field = FieldState::uniform(spec, fill);
    for (w, (cells, _)) in results.into_iter().enumerate() {
        let rows = plan.rows_of(w);
        let cols = plan.cols_of(w);
        let ncols = cols.len();
        for (r, gy) in rows.enumerate() {
            for (c, gx) in cols.clone().enumerate() {
                *field.at_mut(gx, gy) = prim_of(cells[r * ncols + c]);
            }
        }
    }
    RunReport {
        field,
        wall_seconds,
        sends,
        recvs,
        barriers,
    }
}
