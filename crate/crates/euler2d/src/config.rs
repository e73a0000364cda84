//! Command-line surface: subcommands, flags, and the validated run
//! configuration. Every configuration can be serialized back to flags
//! (`RunConfig::to_flags`) and re-parsed to an identical value, which keeps
//! runs quotable in reports and reproducible from logs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use euler_core::{BoundarySpec, PrimitiveState, SedovParams, YBoundary};
use strategies::StrategyId;

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "euler2d",
    version,
    about = "Structured-grid compressible-flow solver with interchangeable parallel communication strategies",
    after_help = "The scheme is deterministic; the SOLVER_SEED environment variable is reserved and currently unused."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// March the blast problem and export per-variable CSV snapshots.
    Simulate(RunConfig),
    /// Run a strong- or weak-scaling campaign and export reports.
    Bench(BenchArgs),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
}

/// Boundary treatment for the lower/upper edges; the left/right edges are
/// always periodic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcY {
    /// Prescribed inflow below, zero-gradient outflow above.
    InflowOutflow,
    Periodic,
}

/// Initial-condition preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IcPreset {
    /// Central pressure spike between a dense and a rarefied disk — the
    /// blast demo.
    Sedov,
    /// Feature-free smooth pressure bump, for convergence and conservation
    /// work.
    Smooth,
}

impl IcPreset {
    pub fn params(&self) -> SedovParams {
        match self {
            IcPreset::Sedov => SedovParams::default(),
            IcPreset::Smooth => SedovParams::smooth(),
        }
    }
}

/// One simulation run: what to solve, how to parallelize it, and which
/// instants to export.
#[derive(Args, Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Execution strategy.
    #[arg(long, default_value = "sequential")]
    pub strategy: StrategyId,

    /// Grid as NXxNY (cells in x by cells in y).
    #[arg(long, default_value = "512x512", value_parser = parse_grid)]
    pub grid: (usize, usize),

    /// Time step.
    #[arg(long, default_value_t = 1e-5)]
    pub dt: f64,

    /// Final time; snapshot times must lie within [0, t-final].
    #[arg(long, default_value_t = 0.15)]
    pub t_final: f64,

    /// Worker count for the chosen strategy.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Boundary treatment in y.
    #[arg(long, value_enum, default_value_t = BcY::InflowOutflow)]
    pub bc_y: BcY,

    /// Inflow primitive state as RHO,U,V,P (inflow-outflow runs only).
    #[arg(long, default_value = "1,0,0,1e-4", value_parser = parse_inflow)]
    pub inflow: PrimitiveState,

    /// Ghost rows stacked above the domain for the run and cropped off
    /// afterwards, keeping the outflow edge away from the blast.
    #[arg(long, default_value_t = 0)]
    pub ghost_band: usize,

    /// Initial condition.
    #[arg(long, value_enum, default_value_t = IcPreset::Sedov)]
    pub ic: IcPreset,

    /// Snapshot times, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.005,0.025,0.075,0.15"
    )]
    pub snapshots: Vec<f64>,

    /// Output directory for snapshot files.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

impl RunConfig {
    pub fn nx(&self) -> usize {
        self.grid.0
    }

    pub fn ny(&self) -> usize {
        self.grid.1
    }

    /// Reject configurations the flags can express but the solver cannot
    /// honor.
    // Negated comparisons so NaN (not greater than anything) fails too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(CliError::config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(CliError::config(format!(
                "t-final must be non-negative, got {}",
                self.t_final
            )));
        }
        if self.workers == 0 {
            return Err(CliError::config("workers must be at least 1"));
        }
        if self.snapshots.is_empty() {
            return Err(CliError::config("at least one snapshot time is required"));
        }
        if !self.snapshots.windows(2).all(|w| w[0] < w[1]) {
            return Err(CliError::config(format!(
                "snapshot times must be strictly ascending, got {:?}",
                self.snapshots
            )));
        }
        let (first, last) = (self.snapshots[0], *self.snapshots.last().unwrap());
        if first < 0.0 || last > self.t_final {
            return Err(CliError::config(format!(
                "snapshot times must lie within [0, {}], got {:?}",
                self.t_final, self.snapshots
            )));
        }
        if self.bc_y == BcY::Periodic && self.ghost_band > 0 {
            return Err(CliError::config(
                "a ghost band pads the outflow edge and has no meaning on a periodic domain",
            ));
        }
        Ok(())
    }

    pub fn boundary(&self) -> BoundarySpec {
        BoundarySpec {
            y_mode: match self.bc_y {
                BcY::InflowOutflow => YBoundary::InflowOutflow {
                    inflow: self.inflow,
                },
                BcY::Periodic => YBoundary::Periodic,
            },
            ghost_band_rows: self.ghost_band,
        }
    }

    /// Serialize back to the exact flags that reproduce this configuration
    /// (`simulate` subcommand omitted).
    pub fn to_flags(&self) -> Vec<String> {
        let value_name = |v: &dyn ValueEnumName| v.flag_name();
        vec![
            "--strategy".into(),
            self.strategy.to_string(),
            "--grid".into(),
            format!("{}x{}", self.grid.0, self.grid.1),
            "--dt".into(),
            self.dt.to_string(),
            "--t-final".into(),
            self.t_final.to_string(),
            "--workers".into(),
            self.workers.to_string(),
            "--bc-y".into(),
            value_name(&self.bc_y),
            "--inflow".into(),
            format!(
                "{},{},{},{}",
                self.inflow.rho, self.inflow.u, self.inflow.v, self.inflow.p
            ),
            "--ghost-band".into(),
            self.ghost_band.to_string(),
            "--ic".into(),
            value_name(&self.ic),
            "--snapshots".into(),
            self.snapshots
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(","),
            "--out".into(),
            self.out.display().to_string(),
        ]
    }
}

/// Flag spelling of a ValueEnum variant.
trait ValueEnumName {
    fn flag_name(&self) -> String;
}

impl<T: ValueEnum> ValueEnumName for T {
    fn flag_name(&self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchModeArg {
    Strong,
    Weak,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct BenchArgs {
    /// Scaling protocol.
    #[arg(long, value_enum, default_value_t = BenchModeArg::Strong)]
    pub mode: BenchModeArg,

    /// Strategies to benchmark, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "one_sided_halo")]
    pub strategy: Vec<StrategyId>,

    /// Worker counts, comma separated. Defaults to 1,2,4,8 for strong
    /// scaling and 1,4 for weak scaling.
    #[arg(long, value_delimiter = ',')]
    pub workers: Option<Vec<usize>>,

    /// Grid as NXxNY: the fixed grid (strong) or the per-worker base grid
    /// (weak). Defaults to 512x1024 strong, 64x128 weak.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,

    /// Time step override.
    #[arg(long)]
    pub dt: Option<f64>,

    /// Final-time override.
    #[arg(long)]
    pub t_final: Option<f64>,

    /// Timing repetitions per configuration; the median is recorded.
    #[arg(long, default_value_t = 1)]
    pub reps: usize,

    /// Directory for the CSV and plot-script reports.
    #[arg(long, default_value = "bench-out")]
    pub out: PathBuf,
}

impl BenchArgs {
    /// Materialize the benchmark plan: protocol defaults for the chosen
    /// mode, with any explicit overrides applied.
    pub fn plan(&self) -> bench_harness::BenchPlan {
        let mut plan = match self.mode {
            BenchModeArg::Strong => bench_harness::BenchPlan::strong_defaults(
                self.strategy.clone(),
                self.workers.clone().unwrap_or_else(|| vec![1, 2, 4, 8]),
            ),
            BenchModeArg::Weak => bench_harness::BenchPlan::weak_defaults(
                self.strategy.clone(),
                self.workers.clone().unwrap_or_else(|| vec![1, 4]),
            ),
        };
        if let Some((nx, ny)) = self.grid {
            plan.nx = nx;
            plan.ny = ny;
        }
        if let Some(dt) = self.dt {
            plan.dt = dt;
        }
        if let Some(t_final) = self.t_final {
            plan.t_final = t_final;
        }
        plan.repetitions = self.reps;
        plan
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    /// Reduced problem sizes; finishes in well under a minute.
    Quick,
    /// Reference problem sizes, including the 500-step conservation run.
    Full,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    /// Suite depth.
    #[arg(value_enum, default_value_t = VerifyLevel::Quick)]
    pub level: VerifyLevel,
}

/// Parse `NXxNY`. Each side must be at least 2, so degenerate grids fail
/// at the command line rather than inside the run.
fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (nx, ny) = s
        .split_once('x')
        .ok_or_else(|| format!("expected NXxNY, got {s:?}"))?;
    let nx: usize = nx.trim().parse().map_err(|_| format!("bad nx in {s:?}"))?;
    let ny: usize = ny.trim().parse().map_err(|_| format!("bad ny in {s:?}"))?;
    if nx < 2 || ny < 2 {
        return Err(format!("grid sides must be at least 2, got {nx}x{ny}"));
    }
    Ok((nx, ny))
}

/// Parse `RHO,U,V,P` into a physical inflow state.
// Negated comparisons so NaN (not greater than anything) fails too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn parse_inflow(s: &str) -> Result<PrimitiveState, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [rho, u, v, p] = parts.as_slice() else {
        return Err(format!("expected RHO,U,V,P, got {s:?}"));
    };
    let num = |label: &str, text: &str| -> Result<f64, String> {
        text.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad {label} in {s:?}"))
    };
    let state = PrimitiveState {
        rho: num("rho", rho)?,
        u: num("u", u)?,
        v: num("v", v)?,
        p: num("p", p)?,
    };
    if !(state.rho > 0.0) || !(state.p > 0.0) {
        return Err(format!("inflow needs positive density and pressure, got {s:?}"));
    }
    Ok(state)
}
