//! Snapshot export: one plain-CSV grid per variable per time, written with
//! 17 significant digits so files are diff-able and bitwise reproducible.
//! Density additionally gets a log10 companion file, the scale blast
//! structures are best viewed on.

use std::fs;
use std::path::{Path, PathBuf};

use euler_core::{FieldState, PrimitiveState};

use crate::error::CliError;

/// (file stem, cell-value extractor) for one exported variable.
type Variable = (&'static str, fn(&PrimitiveState) -> f64);

/// The variables exported per snapshot.
fn variables() -> [Variable; 5] {
    [
        ("rho", |w| w.rho),
        ("u", |w| w.u),
        ("v", |w| w.v),
        ("p", |w| w.p),
        ("log10_rho", |w| w.rho.log10()),
    ]
}

/// Deterministic snapshot file name: `<var>_t<time>.csv` with the time
/// fixed to six decimals (0.005 -> `rho_t0.005000.csv`).
pub fn snapshot_file_name(var: &str, time: f64) -> String {
    format!("{var}_t{time:.6}.csv")
}

/// Row-major CSV grid of one derived variable: `ny` lines of `nx`
/// comma-separated values, row `iy = 0` first.
fn grid_csv(field: &FieldState, extract: fn(&PrimitiveState) -> f64) -> String {
    let (nx, ny) = (field.spec.nx, field.spec.ny);
    let mut out = String::with_capacity(ny * nx * 26);
    for iy in 0..ny {
        for ix in 0..nx {
            if ix > 0 {
                out.push(',');
            }
            out.push_str(&format!("{:.16e}", extract(field.at(ix, iy))));
        }
        out.push('\n');
    }
    out
}

/// Write the five per-variable grids for `field` at `time` into `dir`,
/// returning the paths written.
pub fn write_snapshot(
    field: &FieldState,
    dir: &Path,
    time: f64,
) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::with_capacity(5);
    for (var, extract) in variables() {
        let path = dir.join(snapshot_file_name(var, time));
        fs::write(&path, grid_csv(field, extract)).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
