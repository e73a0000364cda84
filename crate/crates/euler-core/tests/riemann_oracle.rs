//! Cross-checks the Newton-based star solver against an independent oracle.
//!
//! The oracle shares nothing with the implementation it checks: it evaluates
//! the interface pressure function from its textbook definition (momentum
//! jump across shocks, Riemann invariants across rarefactions) and finds the
//! root by plain bisection. Expected values for the classical shock-tube
//! setup are frozen below to five significant digits.

use euler_core::riemann::solve_star;
use euler_core::state::{AxisState, GasModel};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const GAMMA: f64 = 1.4;

/// Contribution of one side to the pressure function: the velocity gained by
/// the gas when it is connected to pressure `p` through a shock (`p > pk`)
/// or a rarefaction (`p <= pk`).
fn side_velocity_change(p: f64, rho_k: f64, p_k: f64, gamma: f64) -> f64 {
    if p > p_k {
        // Rankine-Hugoniot: mass flux through the shock.
        let a_coeff = 2.0 / ((gamma + 1.0) * rho_k);
        let b_coeff = p_k * (gamma - 1.0) / (gamma + 1.0);
        (p - p_k) * (a_coeff / (p + b_coeff)).sqrt()
    } else {
        // Isentrope plus Riemann invariant through the fan.
        let a_k = (gamma * p_k / rho_k).sqrt();
        2.0 * a_k / (gamma - 1.0) * ((p / p_k).powf((gamma - 1.0) / (2.0 * gamma)) - 1.0)
    }
}

/// Monotone function of p whose root is the star pressure.
fn pressure_function(p: f64, l: &AxisState, r: &AxisState, gamma: f64) -> f64 {
    side_velocity_change(p, l.rho, l.p, gamma)
        + side_velocity_change(p, r.rho, r.p, gamma)
        + (r.un - l.un)
}

/// Star pressure by bisection, to residual 1e-12 (relative above p = 1).
fn oracle_star_pressure(l: &AxisState, r: &AxisState, gamma: f64) -> f64 {
    let mut lo = 1e-14;
    let mut hi = 10.0 * l.p.max(r.p);
    // The pressure function increases monotonically; push the upper bracket
    // out until it actually brackets the root.
    for _ in 0..64 {
        if pressure_function(hi, l, r, gamma) > 0.0 {
            break;
        }
        hi *= 2.0;
    }
    assert!(pressure_function(lo, l, r, gamma) < 0.0, "no vacuum pairs expected here");
    assert!(pressure_function(hi, l, r, gamma) > 0.0, "bracket must enclose the root");
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..400 {
        let f = pressure_function(mid, l, r, gamma);
        if f.abs() <= 1e-12 * mid.max(1.0) {
            break;
        }
        if f > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        let next = 0.5 * (lo + hi);
        if next == mid {
            break;
        }
        mid = next;
    }
    mid
}

fn oracle_star_velocity(p_star: f64, l: &AxisState, r: &AxisState, gamma: f64) -> f64 {
    0.5 * (l.un + r.un)
        + 0.5 * (side_velocity_change(p_star, r.rho, r.p, gamma)
            - side_velocity_change(p_star, l.rho, l.p, gamma))
}

fn sod_left() -> AxisState {
    AxisState { rho: 1.0, un: 0.0, ut: 0.0, p: 1.0 }
}

fn sod_right() -> AxisState {
    AxisState { rho: 0.125, un: 0.0, ut: 0.0, p: 0.1 }
}

#[test]
fn shock_tube_star_state_matches_frozen_values() {
    let gas = GasModel { gamma: GAMMA };
    let fan = solve_star(&sod_left(), &sod_right(), gas).unwrap();
    // Frozen from the bisection oracle (and the standard literature values).
    assert!((fan.p_star - 0.30313).abs() / 0.30313 < 2e-5, "p* = {}", fan.p_star);
    assert!((fan.u_star - 0.92745).abs() / 0.92745 < 2e-5, "u* = {}", fan.u_star);

    let p_oracle = oracle_star_pressure(&sod_left(), &sod_right(), GAMMA);
    let u_oracle = oracle_star_velocity(p_oracle, &sod_left(), &sod_right(), GAMMA);
    assert!((fan.p_star - p_oracle).abs() <= 1e-8 * p_oracle);
    assert!((fan.u_star - u_oracle).abs() <= 1e-8 * u_oracle.abs().max(1.0));
}

#[test]
fn star_pressure_matches_bisection_oracle_on_random_pairs() {
    let gas = GasModel { gamma: GAMMA };
    let mut rng = StdRng::seed_from_u64(0x04ac1e);
    let mut checked = 0;
    while checked < 1000 {
        let l = AxisState {
            rho: rng.gen_range(0.05..10.0),
            un: rng.gen_range(-3.0..3.0),
            ut: 0.0,
            p: rng.gen_range(0.05..10.0),
        };
        let r = AxisState {
            rho: rng.gen_range(0.05..10.0),
            un: rng.gen_range(-3.0..3.0),
            ut: 0.0,
            p: rng.gen_range(0.05..10.0),
        };
        // Skip pairs at the edge of generating a vacuum; the solver rejects
        // them by contract and bisection has no root to find.
        let a_l = (GAMMA * l.p / l.rho).sqrt();
        let a_r = (GAMMA * r.p / r.rho).sqrt();
        if r.un - l.un >= 0.95 * (2.0 / (GAMMA - 1.0) * (a_l + a_r)) {
            continue;
        }
        checked += 1;

        let fan = solve_star(&l, &r, gas).unwrap();
        let p_oracle = oracle_star_pressure(&l, &r, GAMMA);
        assert!(
            (fan.p_star - p_oracle).abs() <= 1e-8 * p_oracle.max(1e-300),
            "p* {} vs oracle {} for {:?} | {:?}",
            fan.p_star,
            p_oracle,
            l,
            r
        );
        // Residual of the solver's root, evaluated with the oracle's own
        // pressure function.
        let residual = pressure_function(fan.p_star, &l, &r, GAMMA);
        assert!(
            residual.abs() <= 1e-10 * fan.p_star.max(1.0) + 1e-12,
            "residual {} at p* {}",
            residual,
            fan.p_star
        );
    }
}
