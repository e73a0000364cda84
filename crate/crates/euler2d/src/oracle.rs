//! An independent referee for the star-region solver: plain bisection on
//! the interface pressure function, written against the textbook equations
//! and sharing no code with the production Newton iteration. Agreement
//! between the two is the strongest correctness evidence the suite has.

use euler_core::state::IDEAL_GAS;
use euler_core::{AxisState, GasModel};
use rand::rngs::StdRng;
use rand::Rng;

/// |f(p)| tolerance at which bisection stops (scaled by max(1, p)).
const RESIDUAL_TOL: f64 = 1e-12;
const MAX_ITERS: usize = 400;

/// Velocity change across the wave connecting side state `(rho_k, p_k)` to
/// pressure `p`: the Hugoniot branch above `p_k`, the isentrope below.
fn side_velocity_change(p: f64, rho_k: f64, p_k: f64, gas: GasModel) -> f64 {
    let g = gas.gamma;
    if p > p_k {
        let a_coeff = 2.0 / ((g + 1.0) * rho_k);
        let b_coeff = (g - 1.0) / (g + 1.0) * p_k;
        (p - p_k) * (a_coeff / (p + b_coeff)).sqrt()
    } else {
        let a_k = gas.sound_speed(rho_k, p_k);
        2.0 * a_k / (g - 1.0) * ((p / p_k).powf((g - 1.0) / (2.0 * g)) - 1.0)
    }
}

/// Star pressure by bisection, or `None` when the states recede into
/// vacuum. The pressure function is strictly increasing, so once a sign
/// change is bracketed the root is pinned; iteration stops when the
/// residual drops below `1e-12 * max(1, p)`.
pub fn star_pressure_bisection(
    left: &AxisState,
    right: &AxisState,
    gas: GasModel,
) -> Option<f64> {
    let du = right.un - left.un;
    let f = |p: f64| {
        side_velocity_change(p, left.rho, left.p, gas)
            + side_velocity_change(p, right.rho, right.p, gas)
            + du
    };

    // f(0) = du - du_crit; non-negative means vacuum forms.
    if f(0.0) >= 0.0 {
        return None;
    }
    let mut lo = 0.0;
    let mut hi = left.p.max(right.p);
    while f(hi) < 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return None;
        }
    }

    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERS {
        let residual = f(mid);
        if residual.abs() <= RESIDUAL_TOL * mid.max(1.0) {
            break;
        }
        if residual < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }
    Some(mid)
}

/// The classic shock-tube pair: (rho, u, p) = (1, 0, 1) facing
/// (0.125, 0, 0.1).
pub fn sod_states() -> (AxisState, AxisState) {
    (
        AxisState {
            rho: 1.0,
            un: 0.0,
            ut: 0.0,
            p: 1.0,
        },
        AxisState {
            rho: 0.125,
            un: 0.0,
            ut: 0.0,
            p: 0.1,
        },
    )
}

/// Random physical state spanning four decades of density and six of
/// pressure, with moderate velocities.
pub fn random_axis_state(rng: &mut StdRng) -> AxisState {
    AxisState {
        rho: 10f64.powf(rng.gen_range(-2.0..2.0)),
        un: rng.gen_range(-5.0..5.0),
        ut: rng.gen_range(-2.0..2.0),
        p: 10f64.powf(rng.gen_range(-3.0..3.0)),
    }
}

/// Random state pair that stays clearly away from vacuum formation (the
/// receding-velocity budget is kept under 90% of critical), so both the
/// production solver and the oracle are solidly inside their domain.
pub fn random_valid_pair(rng: &mut StdRng) -> (AxisState, AxisState) {
    loop {
        let left = random_axis_state(rng);
        let right = random_axis_state(rng);
        let g = IDEAL_GAS.gamma;
        let du_crit =
            2.0 / (g - 1.0) * (left.sound_speed(IDEAL_GAS) + right.sound_speed(IDEAL_GAS));
        if right.un - left.un < 0.9 * du_crit {
            return (left, right);
        }
    }
}
