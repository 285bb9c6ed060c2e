//! Frenet frames, curvature and torsion of space-like and time-like curves
//! under an arbitrary parameter, Darboux vectors and their spherical
//! indicatrices, and the helix and Bertrand predicates built on them.

use crate::curve_dsl::{domain_grid, Curve, CurveSample};
use crate::error::{Error, Result};
use crate::jets::JetVec3;
use crate::lorentz::{causal_character, det3, mink_dot, pseudo_norm, CausalCharacter, MinkVec3, Sphere};

/// `‖α′×α″‖_E` at or below this multiple of `‖α′‖_E³` counts as zero
/// curvature.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Relative threshold below which a Darboux vector is treated as light-like.
pub const DARBOUX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetApparatus {
    pub t: MinkVec3,
    pub n: MinkVec3,
    pub b: MinkVec3,
    pub kappa: f64,
    pub tau: f64,
    pub curve_character: CausalCharacter,
    pub darboux_character: CausalCharacter,
}

impl FrenetApparatus {
    /// `-τT + κB` for space-like curves, `τT + κB` for time-like ones.
    pub fn darboux_vector(&self) -> MinkVec3 {
        match self.curve_character {
            CausalCharacter::TimeLike => self.tau * self.t + self.kappa * self.b,
            _ => -self.tau * self.t + self.kappa * self.b,
        }
    }
}

struct Raw {
    t: MinkVec3,
    n: MinkVec3,
    kappa: f64,
    tau: f64,
    cross: MinkVec3,
}

fn raw(sample: &CurveSample) -> Result<Raw> {
    let (d1, d2, d3) = (sample.d1, sample.d2, sample.d3);
    let cross = d1.cross(d2);
    let scale = d1.euclid_norm().powi(3);
    if !(cross.euclid_norm() > DEGENERACY_TOL * scale) {
        return Err(Error::DegenerateCurvature {
            cross_norm: cross.euclid_norm(),
        });
    }
    let q = mink_dot(d1, d1);
    let cross_sq = mink_dot(cross, cross).abs();
    let proj = d2 - d1 * (mink_dot(d1, d2) / q);
    Ok(Raw {
        t: d1.normalized(),
        n: proj.normalized(),
        kappa: cross_sq.sqrt() / q.abs().powf(1.5),
        tau: det3(d1, d2, d3) / cross_sq,
        cross,
    })
}

fn finish(r: Raw, b: MinkVec3, curve_character: CausalCharacter) -> FrenetApparatus {
    let mut app = FrenetApparatus {
        t: r.t,
        n: r.n,
        b,
        kappa: r.kappa,
        tau: r.tau,
        curve_character,
        darboux_character: CausalCharacter::SpaceLike,
    };
    app.darboux_character = causal_character(app.darboux_vector());
    app
}

/// Frenet apparatus of a curve with space-like tangent and space-like
/// principal normal; `B = N × T`.
pub fn frenet_spacelike(sample: &CurveSample) -> Result<FrenetApparatus> {
    let c = causal_character(sample.d1);
    if c != CausalCharacter::SpaceLike || sample.d1 == MinkVec3::ZERO {
        return Err(Error::WrongCausalType {
            expected: "space-like",
            found: c.name(),
        });
    }
    let r = raw(sample)?;
    // N is space-like exactly when the binormal direction d1 × d2 is time-like
    match causal_character(r.cross) {
        CausalCharacter::TimeLike => {}
        CausalCharacter::SpaceLike => return Err(Error::UnsupportedNormal { found: "time-like" }),
        CausalCharacter::LightLike => return Err(Error::UnsupportedNormal { found: "light-like" }),
    }
    let b = r.n.cross(r.t);
    Ok(finish(r, b, CausalCharacter::SpaceLike))
}

/// Frenet apparatus of a time-like curve; `B = T × N`.
pub fn frenet_timelike(sample: &CurveSample) -> Result<FrenetApparatus> {
    let c = causal_character(sample.d1);
    if c != CausalCharacter::TimeLike {
        return Err(Error::WrongCausalType {
            expected: "time-like",
            found: c.name(),
        });
    }
    let r = raw(sample)?;
    let b = r.t.cross(r.n);
    Ok(finish(r, b, CausalCharacter::TimeLike))
}

/// Dispatches on the causal character of the tangent.
pub fn frenet(sample: &CurveSample) -> Result<FrenetApparatus> {
    match causal_character(sample.d1) {
        CausalCharacter::TimeLike => frenet_timelike(sample),
        _ => frenet_spacelike(sample),
    }
}

/// `D/‖D‖` and the sphere it lies on: S12 for space-like `D`, H2 for
/// time-like `D`.
pub fn darboux_indicatrix(app: &FrenetApparatus) -> Result<(MinkVec3, Sphere)> {
    let d = app.darboux_vector();
    let q = mink_dot(d, d);
    if q.abs() <= DARBOUX_TOL * d.euclid_norm_sq() {
        return Err(Error::LightLikeDarboux { norm_sq: q });
    }
    let target = if q > 0.0 { Sphere::S12 } else { Sphere::H2 };
    Ok((d / pseudo_norm(d), target))
}

fn frenet_at<C: Curve + ?Sized>(curve: &C, v: f64) -> Result<FrenetApparatus> {
    curve.sample(v).and_then(|s| frenet(&s)).map_err(|e| e.at(v))
}

/// `max τ/κ − min τ/κ` over a uniform grid.
pub fn tau_kappa_spread<C: Curve + ?Sized>(curve: &C, n_grid: usize) -> Result<f64> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in domain_grid(curve, n_grid) {
        let app = frenet_at(curve, v)?;
        let r = app.tau / app.kappa;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok(if hi >= lo { hi - lo } else { 0.0 })
}

/// Whether `τ/κ` is constant to within `tol` over the grid.
pub fn is_helix<C: Curve + ?Sized>(curve: &C, n_grid: usize, tol: f64) -> Result<bool> {
    Ok(tau_kappa_spread(curve, n_grid)? < tol)
}

/// `max |Aκ + Bτ − 1|` over a uniform grid.
pub fn bertrand_condition_residual<C: Curve + ?Sized>(curve: &C, a: f64, b: f64, n_grid: usize) -> Result<f64> {
    if a == 0.0 || b == 0.0 {
        return Err(Error::BadParameter {
            name: if a == 0.0 { "A" } else { "B" },
            value: 0.0,
            reason: "Bertrand constants must be nonzero",
        });
    }
    let mut worst = 0.0f64;
    for v in domain_grid(curve, n_grid) {
        let app = frenet_at(curve, v)?;
        worst = worst.max((a * app.kappa + b * app.tau - 1.0).abs());
    }
    Ok(worst)
}

/// Largest component residual of the Frenet equations at `v`, with the
/// frame differentiated along the curve's jets and converted to arc length.
pub fn frenet_ode_residual<C: Curve + ?Sized>(curve: &C, v: f64) -> Result<f64> {
    let sample = curve.sample(v).map_err(|e| e.at(v))?;
    let app = frenet(&sample).map_err(|e| e.at(v))?;
    let c = sample.to_jets();
    let vel = c.derivative();
    let acc = vel.derivative();
    let q = vel.dot(vel);
    let t = vel.normalized()?;
    let proj = acc - vel.scale(vel.dot(acc).checked_div(q)?);
    let n = proj.normalized()?;
    let b: JetVec3 = match app.curve_character {
        CausalCharacter::TimeLike => t.cross(n),
        _ => n.cross(t),
    };
    let speed = pseudo_norm(sample.d1);
    let (dt, dn, db) = (t.order(1) / speed, n.order(1) / speed, b.order(1) / speed);
    let (k, tau) = (app.kappa, app.tau);
    let (tt, nn, bb) = (app.t, app.n, app.b);
    let rows = match app.curve_character {
        CausalCharacter::TimeLike => [dt - k * nn, dn - (k * tt + tau * bb), db + tau * nn],
        _ => [dt - k * nn, dn - (-k * tt + tau * bb), db - tau * nn],
    };
    Ok(rows.iter().map(|r| r.max_abs()).fold(0.0, f64::max))
}
