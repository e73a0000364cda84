//! Gas model, state vectors and the algebra between them.
//!
//! Three representations of the same cell are used throughout:
//!
//! * [`PrimitiveState`] — density, the two velocity components and pressure;
//!   this is what the field arrays store.
//! * [`ConservedState`] — density, momenta and total energy; the quantities
//!   the finite-volume update actually conserves.
//! * [`AxisState`] — primitives rotated into the frame of a 1D sweep, with
//!   `un` the velocity normal to the interfaces and `ut` the transverse
//!   component that is advected passively.

use crate::error::EulerError;

/// Ideal-gas equation of state, fixed by its adiabatic index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    pub gamma: f64,
}

/// Diatomic ideal gas, the model used by every default in this workspace.
pub const IDEAL_GAS: GasModel = GasModel { gamma: 1.4 };

impl GasModel {
    /// Speed of sound `sqrt(gamma * p / rho)`.
    ///
    /// Scales like `rho^(-1/2)` at fixed pressure.
    pub fn sound_speed(&self, rho: f64, p: f64) -> f64 {
        (self.gamma * p / rho).sqrt()
    }
}

/// Sweep direction of a 1D pass over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Physical variables (rho, u, v, p) of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveState {
    /// Mass density.
    pub rho: f64,
    /// Velocity along x.
    pub u: f64,
    /// Velocity along y.
    pub v: f64,
    /// Pressure.
    pub p: f64,
}

/// Conserved variables (rho, rho*u, rho*v, E) of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedState {
    pub rho: f64,
    /// Momentum along x.
    pub mx: f64,
    /// Momentum along y.
    pub my: f64,
    /// Total energy density.
    pub e: f64,
}

/// Primitives seen from a 1D sweep: `un` is normal to the cell interfaces,
/// `ut` transverse to them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisState {
    pub rho: f64,
    pub un: f64,
    pub ut: f64,
    pub p: f64,
}

impl PrimitiveState {
    /// A state is physical when density and pressure are strictly positive
    /// (and finite); velocities only need to be finite.
    pub fn validate(&self) -> Result<(), EulerError> {
        let ok = self.rho > 0.0
            && self.p > 0.0
            && self.rho.is_finite()
            && self.p.is_finite()
            && self.u.is_finite()
            && self.v.is_finite();
        if ok {
            Ok(())
        } else {
            Err(EulerError::NonPhysicalState {
                rho: self.rho,
                p: self.p,
            })
        }
    }

    /// Rotate into the frame of a sweep along `axis`. Pure component
    /// shuffling, no arithmetic.
    pub fn to_axis(&self, axis: Axis) -> AxisState {
        match axis {
            Axis::X => AxisState {
                rho: self.rho,
                un: self.u,
                ut: self.v,
                p: self.p,
            },
            Axis::Y => AxisState {
                rho: self.rho,
                un: self.v,
                ut: self.u,
                p: self.p,
            },
        }
    }
}

impl AxisState {
    /// Undo [`PrimitiveState::to_axis`].
    pub fn to_primitive(&self, axis: Axis) -> PrimitiveState {
        match axis {
            Axis::X => PrimitiveState {
                rho: self.rho,
                u: self.un,
                v: self.ut,
                p: self.p,
            },
            Axis::Y => PrimitiveState {
                rho: self.rho,
                u: self.ut,
                v: self.un,
                p: self.p,
            },
        }
    }

    pub fn sound_speed(&self, gas: GasModel) -> f64 {
        gas.sound_speed(self.rho, self.p)
    }
}

/// Primitive to conserved: `E = rho*(u^2+v^2)/2 + p/(gamma-1)`.
pub fn prim_to_cons(w: PrimitiveState, gas: GasModel) -> ConservedState {
    let kinetic = 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    ConservedState {
        rho: w.rho,
        mx: w.rho * w.u,
        my: w.rho * w.v,
        e: kinetic + w.p / (gas.gamma - 1.0),
    }
}

/// Conserved back to primitive. Fails with [`EulerError::NonPhysicalState`]
/// when the recovered density or pressure is not strictly positive.
pub fn cons_to_prim(u: ConservedState, gas: GasModel) -> Result<PrimitiveState, EulerError> {
    let kinetic = 0.5 * (u.mx * u.mx + u.my * u.my) / u.rho;
    let p = (gas.gamma - 1.0) * (u.e - kinetic);
    let w = PrimitiveState {
        rho: u.rho,
        u: u.mx / u.rho,
        v: u.my / u.rho,
        p,
    };
    w.validate()?;
    Ok(w)
}

/// Analytic flux of the conserved quantities through a face normal to `axis`.
///
/// For x: `(rho u, rho u^2 + p, rho u v, u (E + p))`; for y the roles of the
/// two velocity components swap and the momentum-flux components swap with
/// them.
pub fn physical_flux(cons: ConservedState, axis: Axis, gas: GasModel) -> [f64; 4] {
    let u = cons.mx / cons.rho;
    let v = cons.my / cons.rho;
    let kinetic = 0.5 * (cons.mx * cons.mx + cons.my * cons.my) / cons.rho;
    let p = (gas.gamma - 1.0) * (cons.e - kinetic);
    match axis {
        Axis::X => [cons.mx, cons.mx * u + p, cons.my * u, u * (cons.e + p)],
        Axis::Y => [cons.my, cons.mx * v, cons.my * v + p, v * (cons.e + p)],
    }
}

/// Conserved 4-vector of an axis-frame state, ordered
/// (mass, normal momentum, transverse momentum, energy).
pub fn axis_conserved(a: AxisState, gas: GasModel) -> [f64; 4] {
    let kinetic = 0.5 * a.rho * (a.un * a.un + a.ut * a.ut);
    [
        a.rho,
        a.rho * a.un,
        a.rho * a.ut,
        kinetic + a.p / (gas.gamma - 1.0),
    ]
}

/// Inverse of [`axis_conserved`], with the same positivity checks as
/// [`cons_to_prim`].
pub fn axis_from_conserved(u: [f64; 4], gas: GasModel) -> Result<AxisState, EulerError> {
    let [rho, mn, mt, e] = u;
    let kinetic = 0.5 * (mn * mn + mt * mt) / rho;
    let p = (gas.gamma - 1.0) * (e - kinetic);
    let ok = rho > 0.0 && p > 0.0 && rho.is_finite() && p.is_finite();
    if !ok {
        return Err(EulerError::NonPhysicalState { rho, p });
    }
    Ok(AxisState {
        rho,
        un: mn / rho,
        ut: mt / rho,
        p,
    })
}

/// Analytic flux in the axis frame, ordered like [`axis_conserved`]:
/// `(rho un, rho un^2 + p, rho un ut, un (E + p))`.
pub fn axis_flux(a: AxisState, gas: GasModel) -> [f64; 4] {
    let cons = axis_conserved(a, gas);
    [
        cons[1],
        cons[1] * a.un + a.p,
        cons[2] * a.un,
        a.un * (cons[3] + a.p),
    ]
}
