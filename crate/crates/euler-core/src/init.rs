//! Initial conditions: a Sedov-style point blast over a quiescent
//! background, optionally decorated with a dense hill and a rarefied basin.
//!
//! The pressure spike is a narrow Gaussian rather than a single hot cell so
//! the profile converges with resolution, and the disks give the blast wave
//! obstacles of very different acoustic impedance to run over. All cell
//! centres on power-of-two grids are exact binary fractions, which makes
//! the centred profile reflection-symmetric down to the last bit — the
//! symmetry checks in the acceptance suite rely on this.

use crate::grid::{FieldState, GridSpec};
use crate::state::PrimitiveState;

/// A disk of constant density dropped onto the background.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskFeature {
    pub center: (f64, f64),
    pub radius: f64,
    pub density: f64,
}

/// Parameters of the blast initial condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SedovParams {
    pub background_rho: f64,
    pub background_p: f64,
    /// Dense disk left of centre (a wall for the blast to slam into).
    pub hill: Option<DiskFeature>,
    /// Rarefied disk right of centre (the blast accelerates through it).
    pub basin: Option<DiskFeature>,
    pub gaussian_peak: f64,
    pub gaussian_sigma: f64,
    pub gaussian_center: (f64, f64),
}

impl Default for SedovParams {
    fn default() -> Self {
        SedovParams {
            background_rho: 1.0,
            background_p: 1e-4,
            hill: Some(DiskFeature {
                center: (0.25, 0.5),
                radius: 0.1,
                density: 100.0,
            }),
            basin: Some(DiskFeature {
                center: (0.75, 0.5),
                radius: 0.1,
                density: 0.01,
            }),
            gaussian_peak: 1200.0,
            gaussian_sigma: 0.02,
            gaussian_center: (0.5, 0.5),
        }
    }
}

impl SedovParams {
    /// A gentle, smooth, feature-free variant: a mild centred pressure bump
    /// on the uniform background. Useful wherever a differentiable solution
    /// is needed (convergence studies, conservation checks).
    pub fn smooth() -> Self {
        SedovParams {
            hill: None,
            basin: None,
            gaussian_peak: 10.0,
            gaussian_sigma: 0.05,
            ..SedovParams::default()
        }
    }
}

/// Build the blast field on `spec`: gas at rest, background density with
/// the optional disks stamped in, background pressure plus the Gaussian
/// spike.
pub fn sedov_field(spec: GridSpec, params: &SedovParams) -> FieldState {
    let mut field = FieldState::uniform(
        spec,
        PrimitiveState {
            rho: params.background_rho,
            u: 0.0,
            v: 0.0,
            p: params.background_p,
        },
    );
    let two_sigma_sq = 2.0 * params.gaussian_sigma * params.gaussian_sigma;
    let inside = |x: f64, y: f64, d: &DiskFeature| {
        let dx = x - d.center.0;
        let dy = y - d.center.1;
        dx * dx + dy * dy <= d.radius * d.radius
    };
    for iy in 0..spec.ny {
        for ix in 0..spec.nx {
            let (x, y) = spec.cell_center(ix, iy);
            let cell = field.at_mut(ix, iy);
            if let Some(hill) = &params.hill {
                if inside(x, y, hill) {
                    cell.rho = hill.density;
                }
            }
            if let Some(basin) = &params.basin {
                if inside(x, y, basin) {
                    cell.rho = basin.density;
                }
            }
            let dx = x - params.gaussian_center.0;
            let dy = y - params.gaussian_center.1;
            let r_sq = dx * dx + dy * dy;
            cell.p = params.background_p + params.gaussian_peak * (-r_sq / two_sigma_sq).exp();
        }
    }
    field
}
