//! Executing a plan: one configuration at a time, each one a fresh blast
//! field marched by the requested strategy. Timings cover only the step
//! loop (the strategy driver brackets it with barriers), never field
//! construction or gather.

use euler_core::init::sedov_field;
use euler_core::{BoundarySpec, FieldState, GridSpec, SedovParams, TimeControls};
use strategies::{run_simulation, StrategyId};

use crate::error::BenchError;
use crate::plan::{weak_grid_for, BenchMode, BenchPlan, BenchRecord};

/// Run the fixed-grid protocol: every (strategy, workers) pair on the
/// plan's grid, speedups against the 1-worker run of the same strategy.
/// The baseline runs exactly once per strategy, whether or not a 1-worker
/// record was requested, so the 1-worker speedup is exactly 1.0.
pub fn run_strong_scaling(plan: &BenchPlan) -> Result<Vec<BenchRecord>, BenchError> {
    plan.validate()?;
    if plan.mode != BenchMode::Strong {
        return Err(BenchError::InvalidPlan {
            reason: format!("strong runner handed a {} plan", plan.mode),
        });
    }
    let controls = controls_of(plan)?;
    let field = blast_field(plan.nx, plan.ny)?;
    let bc = BoundarySpec::default();

    let mut records = Vec::new();
    for &strategy in &plan.strategies {
        let baseline = reduced_wall(strategy, &field, &controls, &bc, 1, plan.repetitions)?;
        for &workers in &plan.worker_counts {
            let wall = if workers == 1 {
                baseline
            } else {
                reduced_wall(strategy, &field, &controls, &bc, workers, plan.repetitions)?
            };
            records.push(BenchRecord {
                mode: BenchMode::Strong,
                strategy,
                workers,
                nx: plan.nx,
                ny: plan.ny,
                steps: controls.steps,
                wall_seconds: wall,
                baseline_seconds: baseline,
                repetitions: plan.repetitions,
            });
        }
    }
    Ok(records)
}

/// Run the grown-grid protocol: worker count w gets a grid with w times the
/// base cell count (ny doubles first, then nx, alternating), and runtimes
/// are normalized by the 1-worker base-grid run of the same strategy.
pub fn run_weak_scaling(plan: &BenchPlan) -> Result<Vec<BenchRecord>, BenchError> {
    plan.validate()?;
    if plan.mode != BenchMode::Weak {
        return Err(BenchError::InvalidPlan {
            reason: format!("weak runner handed a {} plan", plan.mode),
        });
    }
    let controls = controls_of(plan)?;
    let bc = BoundarySpec::default();
    let base = (plan.nx, plan.ny);
    // Fail on an unrealizable count before burning time on the others.
    for &workers in &plan.worker_counts {
        weak_grid_for(base, workers)?;
    }

    let mut records = Vec::new();
    for &strategy in &plan.strategies {
        let base_field = blast_field(plan.nx, plan.ny)?;
        let baseline = reduced_wall(strategy, &base_field, &controls, &bc, 1, plan.repetitions)?;
        for &workers in &plan.worker_counts {
            let (nx, ny) = weak_grid_for(base, workers)?;
            let wall = if workers == 1 {
                baseline
            } else {
                let field = blast_field(nx, ny)?;
                reduced_wall(strategy, &field, &controls, &bc, workers, plan.repetitions)?
            };
            records.push(BenchRecord {
                mode: BenchMode::Weak,
                strategy,
                workers,
                nx,
                ny,
                steps: controls.steps,
                wall_seconds: wall,
                baseline_seconds: baseline,
                repetitions: plan.repetitions,
            });
        }
    }
    Ok(records)
}

fn controls_of(plan: &BenchPlan) -> Result<TimeControls, BenchError> {
    TimeControls::new(plan.dt, plan.t_final).map_err(|e| BenchError::InvalidPlan {
        reason: e.to_string(),
    })
}

fn blast_field(nx: usize, ny: usize) -> Result<FieldState, BenchError> {
    let spec = GridSpec::new(nx, ny).map_err(|e| BenchError::InvalidPlan {
        reason: e.to_string(),
    })?;
    Ok(sedov_field(spec, &SedovParams::default()))
}

/// Median wall time over `repetitions` identical runs.
fn reduced_wall(
    strategy: StrategyId,
    field: &FieldState,
    controls: &TimeControls,
    bc: &BoundarySpec,
    workers: usize,
    repetitions: usize,
) -> Result<f64, BenchError> {
    let mut walls = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let (_, wall) = run_simulation(strategy, field, controls, bc, workers)?;
        walls.push(wall);
    }
    Ok(median(&mut walls))
}

fn median(samples: &mut [f64]) -> f64 {
    debug_assert!(!samples.is_empty());
    samples.sort_by(|a, b| a.total_cmp(b));
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        0.5 * (samples[mid - 1] + samples[mid])
    }
}
