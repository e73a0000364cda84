//! Benchmark plans and the records a run produces.

use std::fmt;

use euler_core::TimeControls;
use strategies::StrategyId;

use crate::error::BenchError;

/// Strong scaling holds the grid fixed while workers grow; weak scaling
/// grows the grid with the workers so the per-worker load stays put.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    Strong,
    Weak,
}

impl fmt::Display for BenchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchMode::Strong => "strong",
            BenchMode::Weak => "weak",
        })
    }
}

/// How repeated timings collapse into one number. Timings on a shared
/// machine are right-skewed, so the median is the default; the choice is
/// recorded in every record rather than implied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Median,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::Median => "median",
        })
    }
}

/// One benchmark campaign: which strategies, which worker counts, what
/// problem. For weak scaling `nx`/`ny` describe the one-worker base grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub mode: BenchMode,
    pub strategies: Vec<StrategyId>,
    pub worker_counts: Vec<usize>,
    pub nx: usize,
    pub ny: usize,
    pub dt: f64,
    pub t_final: f64,
    pub repetitions: usize,
    pub reduction: Reduction,
}

impl BenchPlan {
    /// The standard strong-scaling protocol: a fixed 512x1024 grid marched
    /// 500 steps at dt = 1e-5 (final time 0.005).
    pub fn strong_defaults(strategies: Vec<StrategyId>, worker_counts: Vec<usize>) -> Self {
        BenchPlan {
            mode: BenchMode::Strong,
            strategies,
            worker_counts,
            nx: 512,
            ny: 1024,
            dt: 1e-5,
            t_final: 0.005,
            repetitions: 1,
            reduction: Reduction::Median,
        }
    }

    /// The standard weak-scaling protocol: a 64x128 grid per worker,
    /// marched 100 steps at dt = 1e-5 (final time 0.001).
    pub fn weak_defaults(strategies: Vec<StrategyId>, worker_counts: Vec<usize>) -> Self {
        BenchPlan {
            mode: BenchMode::Weak,
            strategies,
            worker_counts,
            nx: 64,
            ny: 128,
            dt: 1e-5,
            t_final: 0.001,
            repetitions: 1,
            reduction: Reduction::Median,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |reason: String| Err(BenchError::InvalidPlan { reason });
        if self.strategies.is_empty() {
            return fail("no strategies requested".into());
        }
        if self.worker_counts.is_empty() {
            return fail("no worker counts requested".into());
        }
        if self.worker_counts[0] == 0 {
            return fail("worker counts must be positive".into());
        }
        if !self.worker_counts.windows(2).all(|w| w[0] < w[1]) {
            return fail(format!(
                "worker counts must be strictly ascending, got {:?}",
                self.worker_counts
            ));
        }
        if self.repetitions < 1 {
            return fail("repetitions must be at least 1".into());
        }
        if self.strategies.contains(&StrategyId::Sequential) && self.worker_counts != [1] {
            return fail("the sequential strategy only runs with exactly 1 worker".into());
        }
        Ok(())
    }

    /// Steps implied by `dt` and `t_final`.
    pub fn steps(&self) -> Result<usize, BenchError> {
        TimeControls::new(self.dt, self.t_final)
            .map(|c| c.steps)
            .map_err(|e| BenchError::InvalidPlan {
                reason: e.to_string(),
            })
    }

    /// One-line description of the protocol parameters, independent of the
    /// strategies and worker counts under test. Pinned by a golden test so
    /// the standard plans cannot drift silently.
    pub fn protocol_summary(&self) -> String {
        let steps = match self.steps() {
            Ok(s) => s.to_string(),
            Err(_) => "invalid".into(),
        };
        let grid_label = match self.mode {
            BenchMode::Strong => "grid",
            BenchMode::Weak => "base_grid",
        };
        format!(
            "mode={} {}={}x{} dt={:e} t_final={:e} steps={} repetitions={} reduction={}",
            self.mode, grid_label, self.nx, self.ny, self.dt, self.t_final, steps,
            self.repetitions, self.reduction
        )
    }
}

/// Grid for `workers` under weak scaling from the `base` one-worker grid:
/// the cell count scales with the worker count, doubling ny first and then
/// alternating, so the base 64x128 grows 4 workers -> 128x256,
/// 16 -> 256x512, 64 -> 512x1024, 256 -> 1024x2048.
pub fn weak_grid_for(base: (usize, usize), workers: usize) -> Result<(usize, usize), BenchError> {
    if workers == 0 || !workers.is_power_of_two() {
        return Err(BenchError::NonSquareScaling { workers });
    }
    let doublings = workers.trailing_zeros() as usize;
    Ok((
        base.0 << (doublings / 2),
        base.1 << doublings.div_ceil(2),
    ))
}

/// One measured configuration. `wall_seconds` is the reduced timing over
/// the plan's repetitions; `baseline_seconds` is the 1-worker timing of the
/// same strategy, carried along so the derived factors stay pure functions
/// of the record.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub mode: BenchMode,
    pub strategy: StrategyId,
    pub workers: usize,
    pub nx: usize,
    pub ny: usize,
    pub steps: usize,
    pub wall_seconds: f64,
    pub baseline_seconds: f64,
    pub repetitions: usize,
}

impl BenchRecord {
    /// Strong-scaling figure of merit: how many times faster than the
    /// 1-worker run.
    pub fn speedup(&self) -> f64 {
        self.baseline_seconds / self.wall_seconds
    }

    /// Weak-scaling figure of merit: runtime relative to the 1-worker run
    /// (1.0 is perfect).
    pub fn normalized(&self) -> f64 {
        self.wall_seconds / self.baseline_seconds
    }

    /// The mode-appropriate derived quantity.
    pub fn factor(&self) -> f64 {
        match self.mode {
            BenchMode::Strong => self.speedup(),
            BenchMode::Weak => self.normalized(),
        }
    }
}
