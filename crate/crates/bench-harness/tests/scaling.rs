//! End-to-end harness checks: a real (tiny) campaign through both
//! protocols, the golden protocol parameters, and lossless, deterministic
//! report files.

use std::fs;
use std::path::PathBuf;

use bench_harness::{
    export_report, format_table, import_csv, run_strong_scaling, run_weak_scaling, summarize,
    BenchMode, BenchPlan, ReportFormat, SummaryRow,
};
use strategies::StrategyId;

/// Per-test scratch directory under the system temp dir, wiped on entry so
/// reruns start clean.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bench_harness_{}_{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn tiny_strong_plan() -> BenchPlan {
    BenchPlan {
        nx: 16,
        ny: 16,
        dt: 1e-5,
        t_final: 3e-5,
        repetitions: 2,
        ..BenchPlan::strong_defaults(vec![StrategyId::OneSidedHalo], vec![1, 2])
    }
}

#[test]
fn tiny_strong_campaign_produces_consistent_records() {
    let records = run_strong_scaling(&tiny_strong_plan()).unwrap();
    assert_eq!(records.len(), 2);
    for r in &records {
        assert_eq!(r.mode, BenchMode::Strong);
        assert_eq!((r.nx, r.ny), (16, 16), "strong scaling must not touch the grid");
        assert_eq!(r.steps, 3);
        assert_eq!(r.repetitions, 2);
        assert!(r.wall_seconds > 0.0);
        assert!(r.baseline_seconds > 0.0);
    }
    assert_eq!(records[0].workers, 1);
    assert_eq!(records[0].speedup(), 1.0, "1-worker speedup must be exact");
    assert_eq!(records[1].workers, 2);
    assert_eq!(records[1].baseline_seconds, records[0].wall_seconds);
}

#[test]
fn tiny_weak_campaign_grows_the_grid_with_the_workers() {
    let plan = BenchPlan {
        nx: 16,
        ny: 16,
        dt: 1e-5,
        t_final: 2e-5,
        ..BenchPlan::weak_defaults(vec![StrategyId::TwoSidedRow], vec![1, 2, 4])
    };
    let records = run_weak_scaling(&plan).unwrap();
    let grids: Vec<(usize, usize)> = records.iter().map(|r| (r.nx, r.ny)).collect();
    assert_eq!(grids, vec![(16, 16), (16, 32), (32, 32)]);
    assert_eq!(records[0].normalized(), 1.0);
    for r in &records {
        assert_eq!(r.mode, BenchMode::Weak);
        assert!(r.wall_seconds > 0.0);
    }
}

#[test]
fn weak_campaigns_refuse_unrealizable_worker_counts() {
    let plan = BenchPlan {
        nx: 16,
        ny: 16,
        dt: 1e-5,
        t_final: 2e-5,
        ..BenchPlan::weak_defaults(vec![StrategyId::TwoSidedRow], vec![1, 3])
    };
    let err = run_weak_scaling(&plan).unwrap_err();
    assert!(matches!(
        err,
        bench_harness::BenchError::NonSquareScaling { workers: 3 }
    ));
}

#[test]
fn standard_protocols_match_their_golden_lines() {
    let strong = BenchPlan::strong_defaults(vec![StrategyId::OneSidedHalo], vec![1, 2, 4, 8]);
    assert_eq!(
        strong.protocol_summary(),
        "mode=strong grid=512x1024 dt=1e-5 t_final=5e-3 steps=500 repetitions=1 reduction=median"
    );
    let weak = BenchPlan::weak_defaults(vec![StrategyId::OneSidedHalo], vec![1, 4]);
    assert_eq!(
        weak.protocol_summary(),
        "mode=weak base_grid=64x128 dt=1e-5 t_final=1e-3 steps=100 repetitions=1 reduction=median"
    );
}

fn sample_rows() -> Vec<SummaryRow> {
    vec![
        SummaryRow {
            strategy: StrategyId::TwoSidedRow,
            workers: 1,
            nx: 512,
            ny: 1024,
            steps: 500,
            wall_seconds: 982.7654321098,
            factor: 1.0,
        },
        SummaryRow {
            strategy: StrategyId::TwoSidedRow,
            workers: 4,
            nx: 512,
            ny: 1024,
            steps: 500,
            wall_seconds: 287.9,
            factor: 3.4,
        },
        SummaryRow {
            strategy: StrategyId::OneSidedHalo,
            workers: 4,
            nx: 512,
            ny: 1024,
            steps: 500,
            wall_seconds: 250.125,
            factor: 3.9,
        },
    ]
}

#[test]
fn csv_round_trips_losslessly_and_deterministically() {
    let dir = scratch("csv");
    let rows = sample_rows();

    let first = dir.join("report_a.csv");
    let second = dir.join("report_b.csv");
    export_report(&rows, ReportFormat::Csv, &first).unwrap();
    export_report(&rows, ReportFormat::Csv, &second).unwrap();
    assert_eq!(
        fs::read(&first).unwrap(),
        fs::read(&second).unwrap(),
        "identical rows must serialize to identical bytes"
    );

    let header = fs::read_to_string(&first).unwrap();
    assert!(header.starts_with("strategy,workers,nx,ny,steps,wall_seconds,factor\n"));

    let parsed = import_csv(&first).unwrap();
    assert_eq!(parsed, rows, "round-trip must preserve every field exactly");
}

#[test]
fn empty_rows_export_a_header_only_csv() {
    let dir = scratch("csv_empty");
    let path = dir.join("empty.csv");
    export_report(&[], ReportFormat::Csv, &path).unwrap();
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "strategy,workers,nx,ny,steps,wall_seconds,factor\n"
    );
    assert!(import_csv(&path).unwrap().is_empty());
}

#[test]
fn export_to_an_unwritable_path_reports_the_io_failure() {
    let err = export_report(
        &sample_rows(),
        ReportFormat::Csv,
        &PathBuf::from("/nonexistent-dir/report.csv"),
    )
    .unwrap_err();
    assert!(matches!(err, bench_harness::BenchError::IoFailure { .. }));
}

#[test]
fn plotscript_draws_every_strategy_plus_the_ideal_line() {
    let dir = scratch("plot");
    let script_path = dir.join("scaling.gp");
    export_report(&sample_rows(), ReportFormat::PlotScript, &script_path).unwrap();

    let script = fs::read_to_string(&script_path).unwrap();
    assert!(script.contains("set logscale xy"), "{script}");
    // Ideal scaling through the first point (1 worker, factor 1.0): y = x.
    assert!(script.contains("ideal(x) = x * (1 / 1)"), "{script}");
    assert!(script.contains("'scaling_two_sided_row.dat'"), "{script}");
    assert!(script.contains("'scaling_one_sided_halo.dat'"), "{script}");
    assert!(script.contains("title 'ideal scaling'"), "{script}");

    let row_dat = fs::read_to_string(dir.join("scaling_two_sided_row.dat")).unwrap();
    assert_eq!(
        row_dat,
        "# workers factor wall_seconds\n1 1 982.7654321098\n4 3.4 287.9\n"
    );
    let halo_dat = fs::read_to_string(dir.join("scaling_one_sided_halo.dat")).unwrap();
    assert_eq!(halo_dat, "# workers factor wall_seconds\n4 3.9 250.125\n");
}

#[test]
fn summarize_then_format_is_deterministic_end_to_end() {
    let records = run_strong_scaling(&tiny_strong_plan()).unwrap();
    let rows = summarize(&records).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].factor, 1.0);
    let (a, b) = (format_table(&rows), format_table(&rows));
    assert_eq!(a, b);
    assert!(a.contains("one_sided_halo"));
}
