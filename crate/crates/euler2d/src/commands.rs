//! Subcommand bodies. Each returns a `CliError` on failure; the binary
//! maps that to an exit code and a message on stderr.

use std::fs;

use bench_harness::{
    export_report, format_table, run_strong_scaling, run_weak_scaling, summarize, BenchMode,
    ReportFormat,
};
use euler_core::{init::sedov_field, FieldState, GridSpec, TimeControls};
use strategies::run_simulation;

use crate::config::{BenchArgs, RunConfig, VerifyLevel};
use crate::error::CliError;
use crate::snapshot::write_snapshot;
use crate::verify::{run_full, run_quick};

/// March the configured problem, pausing at each snapshot time to export
/// the field. A snapshot at t = 0 exports the initial condition as-is.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let spec = GridSpec::new(cfg.nx(), cfg.ny())?;
    fs::create_dir_all(&cfg.out).map_err(|e| CliError::io(&cfg.out, e))?;

    let mut field: FieldState = sedov_field(spec, &cfg.ic.params());
    let bc = cfg.boundary();
    let mut reached = 0.0_f64;
    let mut files = 0_usize;
    for &target in &cfg.snapshots {
        // March only when the gap is at least a step; a shorter gap means
        // the target is the instant already reached (e.g. t = 0).
        let gap = target - reached;
        if gap > 0.5 * cfg.dt {
            let controls = TimeControls::new(cfg.dt, gap)?;
            let (next, _wall) =
                run_simulation(cfg.strategy, &field, &controls, &bc, cfg.workers)?;
            field = next;
            reached = target;
        }
        let written = write_snapshot(&field, &cfg.out, target)?;
        println!("t = {target}: exported {} variables", written.len());
        files += written.len();
    }
    println!("wrote {files} files to {}", cfg.out.display());
    Ok(())
}

/// Run the scaling campaign, print the summary table, and export the CSV
/// and gnuplot reports.
pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let plan = args.plan();
    println!("{}", plan.protocol_summary());
    let records = match plan.mode {
        BenchMode::Strong => run_strong_scaling(&plan)?,
        BenchMode::Weak => run_weak_scaling(&plan)?,
    };
    let rows = summarize(&records)?;
    print!("{}", format_table(&rows));

    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let csv_path = args.out.join("bench.csv");
    let plot_path = args.out.join("bench.gp");
    export_report(&rows, ReportFormat::Csv, &csv_path)?;
    export_report(&rows, ReportFormat::PlotScript, &plot_path)?;
    println!("wrote {} and {}", csv_path.display(), plot_path.display());
    Ok(())
}

/// Run the verification suite, printing one PASS/FAIL line per check.
pub fn cmd_verify(level: VerifyLevel) -> Result<(), CliError> {
    let outcomes = match level {
        VerifyLevel::Quick => run_quick(),
        VerifyLevel::Full => run_full(),
    };
    let total = outcomes.len();
    let mut failed = 0_usize;
    for outcome in &outcomes {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} ({})", outcome.name, outcome.detail);
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {total} checks passed");
        Ok(())
    } else {
        Err(CliError::VerificationFailed { failed, total })
    }
}
