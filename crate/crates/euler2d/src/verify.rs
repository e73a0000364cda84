//! The built-in verification suite behind `euler2d verify`: solver-level
//! oracles, conservation, and cross-strategy equivalence, each reported as
//! an independent pass/fail check. `quick` runs reduced problem sizes in
//! well under a minute; `full` runs the conservation and equivalence
//! checks at their reference sizes.

use std::time::Instant;

use euler_core::init::sedov_field;
use euler_core::riemann::{godunov_interface_flux, solve_star};
use euler_core::state::{axis_flux, IDEAL_GAS};
use euler_core::{
    total_invariants, BoundarySpec, FieldState, GridSpec, Invariants, SedovParams, TimeControls,
};
use rand::rngs::StdRng;
use rand::SeedableRng;
use strategies::{run_simulation, StrategyId, ALL_STRATEGIES};

use crate::oracle::{random_axis_state, random_valid_pair, sod_states, star_pressure_bisection};

/// Result of one verification check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String, clock: Instant) -> Self {
        CheckOutcome {
            name,
            passed,
            detail: format!("{detail} [{:.2} s]", clock.elapsed().as_secs_f64()),
        }
    }
}

/// Reduced-size suite: every check category, small problems.
pub fn run_quick() -> Vec<CheckOutcome> {
    vec![
        check_riemann_oracle(1000),
        check_flux_consistency(1000),
        check_conservation(64, 64, 100),
        check_equivalence(32, 48, 20, &[1, 2, 4]),
    ]
}

/// Reference-size suite: the 500-step conservation run on 128x128 and the
/// full equivalence sweep on 64x128 with up to 8 workers.
pub fn run_full() -> Vec<CheckOutcome> {
    vec![
        check_riemann_oracle(1000),
        check_flux_consistency(1000),
        check_conservation(128, 128, 500),
        check_equivalence(64, 128, 100, &[1, 2, 4, 8]),
    ]
}

/// Star pressures from the production Newton solver against the
/// independent bisection oracle, on the classic shock tube plus `pairs`
/// random valid pairs; agreement demanded to 1e-8 relative.
pub fn check_riemann_oracle(pairs: usize) -> CheckOutcome {
    let clock = Instant::now();
    let name = "riemann_oracle";

    let (sod_l, sod_r) = sod_states();
    let sod = match solve_star(&sod_l, &sod_r, IDEAL_GAS) {
        Ok(fan) => fan,
        Err(e) => return CheckOutcome::new(name, false, format!("shock tube failed: {e}"), clock),
    };
    let sod_ok = (sod.p_star - 0.30313).abs() / 0.30313 <= 1e-4
        && (sod.u_star - 0.92745).abs() / 0.92745 <= 1e-4;
    if !sod_ok {
        let detail = format!(
            "shock tube star state off: p*={:.6} (want 0.30313), u*={:.6} (want 0.92745)",
            sod.p_star, sod.u_star
        );
        return CheckOutcome::new(name, false, detail, clock);
    }

    let mut rng = StdRng::seed_from_u64(0x5ec7a1);
    let mut worst: f64 = 0.0;
    for i in 0..pairs {
        let (l, r) = random_valid_pair(&mut rng);
        let newton = match solve_star(&l, &r, IDEAL_GAS) {
            Ok(fan) => fan.p_star,
            Err(e) => {
                return CheckOutcome::new(name, false, format!("pair {i} failed: {e}"), clock)
            }
        };
        let Some(bisect) = star_pressure_bisection(&l, &r, IDEAL_GAS) else {
            return CheckOutcome::new(name, false, format!("oracle refused pair {i}"), clock);
        };
        worst = worst.max((newton - bisect).abs() / bisect);
    }
    let passed = worst <= 1e-8;
    let detail = format!(
        "shock tube + {pairs} random pairs, worst relative p* gap {worst:.2e} (limit 1e-8)"
    );
    CheckOutcome::new(name, passed, detail, clock)
}

/// The interface flux of a state against itself must be that state's
/// physical flux, component by component.
pub fn check_flux_consistency(states: usize) -> CheckOutcome {
    let clock = Instant::now();
    let name = "flux_consistency";
    let mut rng = StdRng::seed_from_u64(0xf1a7e5);
    let mut worst: f64 = 0.0;
    for i in 0..states {
        let w = random_axis_state(&mut rng);
        let numerical = match godunov_interface_flux(&w, &w, IDEAL_GAS) {
            Ok(f) => f,
            Err(e) => {
                return CheckOutcome::new(name, false, format!("state {i} failed: {e}"), clock)
            }
        };
        let physical = axis_flux(w, IDEAL_GAS);
        for k in 0..4 {
            let (a, b) = (numerical[k], physical[k]);
            if a != b {
                worst = worst.max((a - b).abs() / a.abs().max(b.abs()));
            }
        }
    }
    let passed = worst <= 1e-14;
    let detail =
        format!("{states} states, worst relative component gap {worst:.2e} (limit 1e-14)");
    CheckOutcome::new(name, passed, detail, clock)
}

/// Relative drift of the four domain integrals, with the momenta (which
/// start at exactly zero here) measured against the mass scale.
fn invariant_drifts(before: &Invariants, after: &Invariants) -> [f64; 4] {
    let momentum_scale = before.mass.abs().max(f64::MIN_POSITIVE);
    [
        (after.mass - before.mass).abs() / before.mass.abs(),
        (after.momentum_x - before.momentum_x).abs()
            / before.momentum_x.abs().max(momentum_scale),
        (after.momentum_y - before.momentum_y).abs()
            / before.momentum_y.abs().max(momentum_scale),
        (after.energy - before.energy).abs() / before.energy.abs(),
    ]
}

/// March a smooth pressure bump on a fully periodic grid and demand the
/// domain integrals of mass, momentum, and energy stay put to 1e-11.
pub fn check_conservation(nx: usize, ny: usize, steps: usize) -> CheckOutcome {
    let clock = Instant::now();
    let name = "conservation";
    let run = || -> Result<[f64; 4], crate::error::CliError> {
        let spec = GridSpec::new(nx, ny)?;
        let field = sedov_field(spec, &SedovParams::smooth());
        let controls = TimeControls::new(1e-5, 1e-5 * steps as f64)?;
        let before = total_invariants(&field, IDEAL_GAS);
        let (after_field, _) = run_simulation(
            StrategyId::Sequential,
            &field,
            &controls,
            &BoundarySpec::periodic_y(),
            1,
        )?;
        let after = total_invariants(&after_field, IDEAL_GAS);
        Ok(invariant_drifts(&before, &after))
    };
    match run() {
        Ok(drifts) => {
            let worst = drifts.iter().cloned().fold(0.0, f64::max);
            let passed = worst <= 1e-11;
            let detail = format!(
                "{nx}x{ny} periodic, {steps} steps: worst relative drift {worst:.2e} (limit 1e-11)"
            );
            CheckOutcome::new(name, passed, detail, clock)
        }
        Err(e) => CheckOutcome::new(name, false, format!("run failed: {e}"), clock),
    }
}

/// First bitwise difference between two fields, if any.
pub fn field_gap(a: &FieldState, b: &FieldState) -> Option<String> {
    if a.spec != b.spec {
        return Some(format!("grids differ: {:?} vs {:?}", a.spec, b.spec));
    }
    for iy in 0..a.spec.ny {
        for ix in 0..a.spec.nx {
            let (wa, wb) = (a.at(ix, iy), b.at(ix, iy));
            for (var, va, vb) in [
                ("rho", wa.rho, wb.rho),
                ("u", wa.u, wb.u),
                ("v", wa.v, wb.v),
                ("p", wa.p, wb.p),
            ] {
                if va.to_bits() != vb.to_bits() {
                    return Some(format!("cell ({ix},{iy}) {var}: {va:e} vs {vb:e}"));
                }
            }
        }
    }
    None
}

/// Every strategy except the fused variant must reproduce the sequential
/// field bitwise at every requested worker count.
pub fn check_equivalence(
    nx: usize,
    ny: usize,
    steps: usize,
    worker_counts: &[usize],
) -> CheckOutcome {
    let clock = Instant::now();
    let name = "strategy_equivalence";
    let run = || -> Result<(usize, Vec<String>), crate::error::CliError> {
        let spec = GridSpec::new(nx, ny)?;
        let field = sedov_field(spec, &SedovParams::default());
        let controls = TimeControls::new(1e-5, 1e-5 * steps as f64)?;
        let bc = BoundarySpec::default();
        let (reference, _) =
            run_simulation(StrategyId::Sequential, &field, &controls, &bc, 1)?;

        let mut runs = 0;
        let mut failures = Vec::new();
        for strategy in ALL_STRATEGIES {
            if strategy == StrategyId::Sequential
                || strategy == StrategyId::OneSidedPatchFused
            {
                continue;
            }
            for &workers in worker_counts {
                let (result, _) = run_simulation(strategy, &field, &controls, &bc, workers)?;
                runs += 1;
                if let Some(gap) = field_gap(&result, &reference) {
                    failures.push(format!("{strategy}@{workers}: {gap}"));
                }
            }
        }
        Ok((runs, failures))
    };
    match run() {
        Ok((runs, failures)) if failures.is_empty() => {
            let detail = format!(
                "{runs} strategy runs on {nx}x{ny}, {steps} steps, all bitwise equal to sequential"
            );
            CheckOutcome::new(name, true, detail, clock)
        }
        Ok((runs, failures)) => {
            let detail = format!("{}/{runs} runs diverged: {}", failures.len(), failures[0]);
            CheckOutcome::new(name, false, detail, clock)
        }
        Err(e) => CheckOutcome::new(name, false, format!("run failed: {e}"), clock),
    }
}
