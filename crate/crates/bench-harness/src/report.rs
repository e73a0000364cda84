//! Turning records into tables and files: a summary row per measured
//! configuration, a text table in the timing-with-parenthesized-factor
//! style, an RFC-4180 CSV, and a gnuplot script with data sidecars.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::BenchError;
use crate::plan::BenchRecord;
use strategies::StrategyId;

/// One line of a scaling table. `factor` is the mode's derived quantity
/// (speedup for strong runs, normalized runtime for weak runs) already
/// rounded to one decimal, which is the precision the tables and reports
/// carry.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub strategy: StrategyId,
    pub workers: usize,
    pub nx: usize,
    pub ny: usize,
    pub steps: usize,
    pub wall_seconds: f64,
    pub factor: f64,
}

fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

/// Collapse records into deterministically ordered summary rows: strategy
/// declaration order first, then workers ascending. Records from different
/// scaling modes cannot share a table.
pub fn summarize(records: &[BenchRecord]) -> Result<Vec<SummaryRow>, BenchError> {
    let Some(first) = records.first() else {
        return Ok(Vec::new());
    };
    if records.iter().any(|r| r.mode != first.mode) {
        return Err(BenchError::MixedPlans);
    }
    let mut rows: Vec<SummaryRow> = records
        .iter()
        .map(|r| SummaryRow {
            strategy: r.strategy,
            workers: r.workers,
            nx: r.nx,
            ny: r.ny,
            steps: r.steps,
            wall_seconds: r.wall_seconds,
            factor: round1(r.factor()),
        })
        .collect();
    rows.sort_by_key(|r| (r.strategy, r.workers));
    Ok(rows)
}

/// Fixed-width text table, one row per configuration, timings shown as
/// `seconds (factor)` with one decimal each.
pub fn format_table(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:>7}  {:<11} {:>6}  {:>10} (factor)\n",
        "strategy", "workers", "grid", "steps", "seconds"
    ));
    for row in rows {
        out.push_str(&format!(
            "{:<22} {:>7}  {:<11} {:>6}  {:>10.1} ({:.1})\n",
            row.strategy.name(),
            row.workers,
            format!("{}x{}", row.nx, row.ny),
            row.steps,
            row.wall_seconds,
            row.factor
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    PlotScript,
}

const CSV_HEADER: [&str; 7] = [
    "strategy",
    "workers",
    "nx",
    "ny",
    "steps",
    "wall_seconds",
    "factor",
];

/// Write `rows` to `path`. CSV is self-contained; the plot script gets one
/// `.dat` sidecar per strategy next to it.
pub fn export_report(
    rows: &[SummaryRow],
    format: ReportFormat,
    path: &Path,
) -> Result<(), BenchError> {
    match format {
        ReportFormat::Csv => export_csv(rows, path),
        ReportFormat::PlotScript => export_plotscript(rows, path),
    }
}

fn export_csv(rows: &[SummaryRow], path: &Path) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    writer.write_record(CSV_HEADER).map_err(|e| csv_io(path, e))?;
    for row in rows {
        writer
            .write_record(&[
                row.strategy.name().to_string(),
                row.workers.to_string(),
                row.nx.to_string(),
                row.ny.to_string(),
                row.steps.to_string(),
                row.wall_seconds.to_string(),
                row.factor.to_string(),
            ])
            .map_err(|e| csv_io(path, e))?;
    }
    writer.flush().map_err(|e| BenchError::io(path, e))?;
    Ok(())
}

fn csv_io(path: &Path, e: csv::Error) -> BenchError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => BenchError::io(path, io),
        other => BenchError::io_invalid(path, format!("{other:?}")),
    }
}

/// Read back a CSV produced by [`export_report`]. Numbers round-trip
/// exactly: the writer emits the shortest decimal form that parses back to
/// the identical value.
pub fn import_csv(path: &Path) -> Result<Vec<SummaryRow>, BenchError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let headers = reader.headers().map_err(|e| csv_io(path, e))?;
    if headers != CSV_HEADER.as_slice() {
        return Err(BenchError::io_invalid(
            path,
            format!("unexpected csv header {headers:?}"),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_io(path, e))?;
        let field = |i: usize| -> Result<&str, BenchError> {
            record
                .get(i)
                .ok_or_else(|| BenchError::io_invalid(path, format!("short row {record:?}")))
        };
        let parse_err =
            |what: &str, v: &str| BenchError::io_invalid(path, format!("bad {what}: {v:?}"));
        rows.push(SummaryRow {
            strategy: field(0)?
                .parse::<StrategyId>()
                .map_err(|_| parse_err("strategy", &record[0]))?,
            workers: field(1)?.parse().map_err(|_| parse_err("workers", &record[1]))?,
            nx: field(2)?.parse().map_err(|_| parse_err("nx", &record[2]))?,
            ny: field(3)?.parse().map_err(|_| parse_err("ny", &record[3]))?,
            steps: field(4)?.parse().map_err(|_| parse_err("steps", &record[4]))?,
            wall_seconds: field(5)?
                .parse()
                .map_err(|_| parse_err("wall_seconds", &record[5]))?,
            factor: field(6)?.parse().map_err(|_| parse_err("factor", &record[6]))?,
        });
    }
    Ok(rows)
}

/// Emit a gnuplot script at `path` plus one `<stem>_<strategy>.dat` sidecar
/// per strategy (columns: workers, factor, wall_seconds). The script plots
/// factor against workers on log-log axes with an ideal-scaling reference
/// line `y = x` scaled through the first data point.
fn export_plotscript(rows: &[SummaryRow], path: &Path) -> Result<(), BenchError> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("scaling");
    let dir = path.parent().unwrap_or(Path::new(""));

    let mut strategies: Vec<StrategyId> = Vec::new();
    for row in rows {
        if !strategies.contains(&row.strategy) {
            strategies.push(row.strategy);
        }
    }

    let mut script = String::new();
    script.push_str("# Scaling report: factor vs workers, one series per strategy.\n");
    script.push_str("# Data sidecars hold: workers  factor  wall_seconds\n");
    script.push_str("set logscale xy\nset xlabel 'workers'\nset ylabel 'factor'\n");
    script.push_str("set key top left noenhanced\n");

    if let Some(first) = rows.first() {
        // Ideal scaling: y = x, anchored so it passes through the first
        // plotted point.
        script.push_str(&format!(
            "ideal(x) = x * ({} / {})\n",
            first.factor, first.workers
        ));
        script.push_str("plot \\\n");
        for strategy in &strategies {
            let dat_name = format!("{stem}_{}.dat", strategy.name());
            let dat_path = dir.join(&dat_name);
            let mut dat = String::from("# workers factor wall_seconds\n");
            for row in rows.iter().filter(|r| r.strategy == *strategy) {
                dat.push_str(&format!(
                    "{} {} {}\n",
                    row.workers, row.factor, row.wall_seconds
                ));
            }
            fs::write(&dat_path, dat).map_err(|e| BenchError::io(&dat_path, e))?;
            script.push_str(&format!(
                "    '{dat_name}' using 1:2 with linespoints title '{}', \\\n",
                strategy.name()
            ));
        }
        script.push_str("    ideal(x) with lines lc rgb 'black' title 'ideal scaling'\n");
    } else {
        script.push_str("# no data\n");
    }

    let mut file = fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    file.write_all(script.as_bytes())
        .map_err(|e| BenchError::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::BenchMode;

    fn record(strategy: StrategyId, workers: usize, wall: f64, baseline: f64) -> BenchRecord {
        BenchRecord {
            mode: BenchMode::Strong,
            strategy,
            workers,
            nx: 512,
            ny: 1024,
            steps: 500,
            wall_seconds: wall,
            baseline_seconds: baseline,
            repetitions: 1,
        }
    }

    #[test]
    fn strong_speedups_round_to_one_decimal() {
        // Timings chosen so the quotients exercise both round-up and
        // round-down at the first decimal.
        let walls = [982.8, 287.9, 107.8, 35.4, 9.2];
        let workers = [1, 4, 16, 64, 256];
        let records: Vec<BenchRecord> = walls
            .iter()
            .zip(workers)
            .map(|(&w, n)| record(StrategyId::TwoSidedRow, n, w, walls[0]))
            .collect();
        let rows = summarize(&records).unwrap();
        let factors: Vec<f64> = rows.iter().map(|r| r.factor).collect();
        assert_eq!(factors, vec![1.0, 3.4, 9.1, 27.8, 106.8]);
    }

    #[test]
    fn summaries_are_sorted_by_strategy_then_workers() {
        let records = vec![
            record(StrategyId::OneSidedHalo, 4, 1.0, 4.0),
            record(StrategyId::TwoSidedRow, 2, 2.0, 4.0),
            record(StrategyId::TwoSidedRow, 1, 4.0, 4.0),
            record(StrategyId::OneSidedHalo, 1, 4.0, 4.0),
        ];
        let rows = summarize(&records).unwrap();
        let order: Vec<(StrategyId, usize)> =
            rows.iter().map(|r| (r.strategy, r.workers)).collect();
        assert_eq!(
            order,
            vec![
                (StrategyId::TwoSidedRow, 1),
                (StrategyId::TwoSidedRow, 2),
                (StrategyId::OneSidedHalo, 1),
                (StrategyId::OneSidedHalo, 4),
            ]
        );
    }

    #[test]
    fn empty_input_gives_an_empty_table() {
        assert!(summarize(&[]).unwrap().is_empty());
        assert_eq!(format_table(&[]).lines().count(), 1); // header only
    }

    #[test]
    fn single_record_factors_to_one() {
        let rows = summarize(&[record(StrategyId::SharedBarrier, 1, 3.25, 3.25)]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].factor, 1.0);
    }

    #[test]
    fn mixed_modes_are_rejected() {
        let strong = record(StrategyId::TwoSidedRow, 1, 1.0, 1.0);
        let weak = BenchRecord {
            mode: BenchMode::Weak,
            ..record(StrategyId::TwoSidedRow, 4, 1.0, 1.0)
        };
        assert!(matches!(
            summarize(&[strong, weak]),
            Err(BenchError::MixedPlans)
        ));
    }

    #[test]
    fn table_shows_time_with_parenthesized_factor() {
        let rows = summarize(&[
            record(StrategyId::TwoSidedRow, 1, 982.8, 982.8),
            record(StrategyId::TwoSidedRow, 256, 9.2, 982.8),
        ])
        .unwrap();
        let table = format_table(&rows);
        assert!(table.contains("982.8 (1.0)"), "{table}");
        assert!(table.contains("9.2 (106.8)"), "{table}");
    }
}
