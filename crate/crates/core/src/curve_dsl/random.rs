//! Random smooth unit-speed curves on S12 and H2 for property tests.
//!
//! A curve `y(v)` built from low-order trigonometric and hyperbolic terms is
//! pushed onto the target sphere as `y / √|<y,y>|` (the normalization is
//! written into the expression itself, so jets stay exact), then
//! reparametrized by arc length. Draws that leave the sign region, produce a
//! non-space-like tangent or violate the family constraint are rejected.

use rand::Rng;

use crate::curve_dsl::{reparametrize_unit_speed, ArcLengthCurve, Curve, CurveSpec, Space};
use crate::error::{Error, Result};
use crate::lorentz::{det3, Sphere};

/// Arc-length tolerance used for random curves.
pub const RANDOM_CURVE_TOL: f64 = 1e-10;

const MAX_ATTEMPTS: usize = 200;
const CHECK_POINTS: usize = 101;

/// A random spherical curve in arc-length parametrization.
pub type RandomCurve = ArcLengthCurve<CurveSpec>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFamily {
    /// Perturbations of `(cos v, sin v, 0)` on S12 or `(sinh v, 0, cosh v)`
    /// on H2; geodesic curvature near zero.
    Generic,
    /// Perturbed pseudo-circles with `kappa_g^2 > 1.05` everywhere, so the
    /// evolute is defined along the whole curve.
    Supercritical,
}

fn coef<R: Rng + ?Sized>(rng: &mut R, amp: f64) -> f64 {
    rng.gen_range(-amp..=amp)
}

fn wave<R: Rng + ?Sized>(rng: &mut R, amp: f64, func: &str) -> String {
    let a = coef(rng, amp);
    let w = rng.gen_range(0.5..=2.5);
    let p = coef(rng, std::f64::consts::PI);
    format!("{a:?}*{func}({w:?}*v + {p:?})")
}

fn raw_components<R: Rng + ?Sized>(rng: &mut R, sphere: Sphere, family: CurveFamily) -> ([String; 3], (f64, f64)) {
    match (sphere, family) {
        (Sphere::S12, CurveFamily::Generic) => {
            let b0 = coef(rng, 0.3);
            (
                [
                    format!("cos(v) + {}", wave(rng, 0.15, "sin")),
                    format!("sin(v) + {}", wave(rng, 0.15, "cos")),
                    format!("{b0:?} + {}", wave(rng, 0.25, "sin")),
                ],
                (0.0, 2.0),
            )
        }
        (Sphere::S12, CurveFamily::Supercritical) => {
            let c: f64 = rng.gen_range(1.3..=1.8);
            let r = (c * c - 1.0).sqrt();
            (
                [
                    format!("{c:?} + {}", wave(rng, 0.08, "sin")),
                    format!("{r:?}*sinh(v/{r:?}) + {}", wave(rng, 0.08, "sin")),
                    format!("{r:?}*cosh(v/{r:?}) + {}", wave(rng, 0.08, "cos")),
                ],
                (-1.0, 1.0),
            )
        }
        (Sphere::H2, CurveFamily::Generic) => {
            let c0: f64 = rng.gen_range(0.2..=0.8);
            let b0 = coef(rng, 0.3);
            (
                [
                    format!("sinh(v) + {}", wave(rng, 0.1, "sin")),
                    format!("{b0:?} + {}", wave(rng, 0.3, "sin")),
                    format!("cosh(v) + {c0:?} + {}", wave(rng, 0.1, "cos")),
                ],
                (-1.5, 1.5),
            )
        }
        (Sphere::H2, CurveFamily::Supercritical) => {
            let c: f64 = rng.gen_range(1.3..=1.8);
            let r = (c * c - 1.0).sqrt();
            (
                [
                    format!("{r:?}*cos(v/{r:?}) + {}", wave(rng, 0.08, "sin")),
                    format!("{r:?}*sin(v/{r:?}) + {}", wave(rng, 0.08, "cos")),
                    format!("{c:?} + {}", wave(rng, 0.08, "sin")),
                ],
                (-1.5, 1.5),
            )
        }
    }
}

fn attempt<R: Rng + ?Sized>(rng: &mut R, sphere: Sphere, family: CurveFamily) -> Result<RandomCurve> {
    let ([x, y, z], domain) = raw_components(rng, sphere, family);
    let norm = match sphere {
        Sphere::S12 => format!("sqrt(({x})^2 + ({y})^2 - ({z})^2)"),
        Sphere::H2 => format!("sqrt(({z})^2 - ({x})^2 - ({y})^2)"),
    };
    let spec = CurveSpec::parse(
        Space::from(sphere),
        &format!("({x})/{norm}"),
        &format!("({y})/{norm}"),
        &format!("({z})/{norm}"),
        domain,
    )?;
    let curve = reparametrize_unit_speed(spec, RANDOM_CURVE_TOL)?;
    let (lo, hi) = curve.domain();
    for i in 0..CHECK_POINTS {
        let s = lo + (hi - lo) * i as f64 / (CHECK_POINTS - 1) as f64;
        let p = curve.sample(s)?;
        if family == CurveFamily::Supercritical {
            let kappa_g = det3(p.position, p.d1, p.d2);
            if kappa_g * kappa_g <= 1.05 {
                return Err(Error::EvoluteUndefined { kappa_g });
            }
        }
    }
    Ok(curve)
}

/// Draws a random unit-speed space-like curve on `sphere`.
pub fn random_unit_speed_curve<R: Rng + ?Sized>(
    rng: &mut R,
    sphere: Sphere,
    family: CurveFamily,
) -> Result<RandomCurve> {
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        match attempt(rng, sphere, family) {
            Ok(c) => return Ok(c),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::BadParameter {
        name: "attempts",
        value: MAX_ATTEMPTS as f64,
        reason: "no admissible random curve found",
    }))
}
