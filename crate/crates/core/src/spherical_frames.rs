//! Lorentzian Sabban frames `{base, t, s}` of unit-speed space-like curves on
//! S12 and H2, geodesic curvature, evolutes, centres of geodesic curvature,
//! the height function and the 3-point contact test.
//!
//! The height function is developed for S12 curves; the same template is
//! accepted on H2 as an extension used for cross-checks.

use crate::curve_dsl::{Curve, CurveSample};
use crate::error::{Error, Result};
use crate::jets::{jet_det3, Jet3, JetVec3};
use crate::lorentz::{det3, mink_dot, MinkVec3, Sphere};

/// Tolerance for sphere membership and unit speed of frame inputs.
pub const FRAME_TOL: f64 = 1e-9;

/// `κ_g² − 1` must exceed this for the evolute to be defined.
pub const EVOLUTE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SabbanFrame {
    pub base: MinkVec3,
    pub t: MinkVec3,
    pub s: MinkVec3,
    pub kappa_g: f64,
    pub kappa_g_prime: f64,
    pub space: Sphere,
}

/// Builds the frame from a sample of a unit-speed curve on `space`.
pub fn sabban_frame(sample: &CurveSample, space: Sphere) -> Result<SabbanFrame> {
    let p = sample.position;
    let residual = (mink_dot(p, p) - space.radius_sq()).abs();
    if !(residual <= FRAME_TOL) {
        return Err(Error::NotOnSphere {
            target: space.radius_sq(),
            residual,
        });
    }
    let t = sample.d1;
    let residual = (mink_dot(t, t) - 1.0).abs();
    if !(residual <= FRAME_TOL) {
        return Err(Error::NotUnitSpeed { residual });
    }
    Ok(SabbanFrame {
        base: p,
        t,
        s: p.cross(t),
        kappa_g: det3(p, t, sample.d2),
        kappa_g_prime: det3(p, t, sample.d3),
        space,
    })
}

fn curve_sphere<C: Curve + ?Sized>(curve: &C) -> Result<Sphere> {
    curve.space().sphere().ok_or(Error::BadParameter {
        name: "space",
        value: f64::NAN,
        reason: "Sabban frames need a curve on S12 or H2",
    })
}

/// The frame of `curve` at `v`, on the sphere the curve declares.
pub fn frame_at<C: Curve + ?Sized>(curve: &C, v: f64) -> Result<SabbanFrame> {
    let sphere = curve_sphere(curve)?;
    curve
        .sample(v)
        .and_then(|s| sabban_frame(&s, sphere))
        .map_err(|e| e.at(v))
}

/// Largest component residual of the three frame equations at `v`:
/// `f′ = t, t′ = −f − κ_g s, s′ = −κ_g t` on S12 and
/// `g′ = t, t′ = g + κ_g s, s′ = −κ_g t` on H2.
pub fn frame_ode_residual<C: Curve + ?Sized>(curve: &C, space: Sphere, v: f64) -> Result<f64> {
    let sample = curve.sample(v).map_err(|e| e.at(v))?;
    let frame = sabban_frame(&sample, space).map_err(|e| e.at(v))?;
    let c = sample.to_jets();
    let t = c.derivative();
    let s = c.cross(t);
    let k = frame.kappa_g;
    let (f, tv, sv) = (frame.base, frame.t, frame.s);
    let t_rhs = match space {
        Sphere::S12 => -f - k * sv,
        Sphere::H2 => f + k * sv,
    };
    let rows = [c.order(1) - tv, t.order(1) - t_rhs, s.order(1) + k * tv];
    Ok(rows.iter().map(|r| r.max_abs()).fold(0.0, f64::max))
}

fn evolute_scale(kappa_g: f64) -> Result<f64> {
    let q = kappa_g * kappa_g - 1.0;
    if !(q > EVOLUTE_TOL) {
        return Err(Error::EvoluteUndefined { kappa_g });
    }
    Ok(q.sqrt())
}

/// The de Sitter evolute `(−κ_g f − s)/√(κ_g²−1)` or the hyperbolic evolute
/// `(κ_g g + s)/√(κ_g²−1)`.
pub fn evolute(frame: &SabbanFrame) -> Result<MinkVec3> {
    let r = evolute_scale(frame.kappa_g)?;
    let k = frame.kappa_g;
    Ok(match frame.space {
        Sphere::S12 => (-k * frame.base - frame.s) / r,
        Sphere::H2 => (k * frame.base + frame.s) / r,
    })
}

/// The evolute of `curve` expanded as a jet in the curve parameter. Only the
/// value and first derivative are meaningful.
pub fn evolute_jet<C: Curve + ?Sized>(curve: &C, v: f64) -> Result<JetVec3> {
    let frame = frame_at(curve, v)?;
    evolute_scale(frame.kappa_g)?;
    let c = curve.sample(v)?.to_jets();
    let t = c.derivative();
    let s = c.cross(t);
    let k = jet_det3(c, t, t.derivative());
    let r = (k * k - Jet3::constant(1.0)).sqrt()?.recip()?;
    Ok(match frame.space {
        Sphere::S12 => (c.scale(-k) - s).scale(r),
        Sphere::H2 => (c.scale(k) + s).scale(r),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureCenter {
    pub u_plus: MinkVec3,
    pub u_minus: MinkVec3,
    pub r0: f64,
}

/// `u± = ±(κ_g·base + s)/√(κ_g²−1)` with `r0 = ⟨base, u+⟩`, that is
/// `κ_g/√(κ_g²−1)` on S12 and `−κ_g/√(κ_g²−1)` on H2.
pub fn curvature_center(frame: &SabbanFrame) -> Result<CurvatureCenter> {
    let r = evolute_scale(frame.kappa_g)?;
    let k = frame.kappa_g;
    let u = (k * frame.base + frame.s) / r;
    let r0 = match frame.space {
        Sphere::S12 => k / r,
        Sphere::H2 => -k / r,
    };
    Ok(CurvatureCenter {
        u_plus: u,
        u_minus: -u,
        r0,
    })
}

/// `(u+′, u−′) = ∓κ_g′(base + κ_g s)/(κ_g²−1)^{3/2}`.
pub fn center_derivative(frame: &SabbanFrame) -> Result<(MinkVec3, MinkVec3)> {
    let r = evolute_scale(frame.kappa_g)?;
    let d = frame.kappa_g_prime * (frame.base + frame.kappa_g * frame.s) / (r * r * r);
    Ok((-d, d))
}

/// `⟨base(v), u⟩` as a jet.
pub fn height_jet<C: Curve + ?Sized>(curve: &C, u: MinkVec3, v: f64) -> Result<Jet3> {
    frame_at(curve, v)?;
    Ok(curve.sample(v)?.to_jets().dot(JetVec3::constant(u)))
}

/// The height function `⟨f(v), u⟩` with its first two derivatives.
pub fn height_function<C: Curve + ?Sized>(curve: &C, u: MinkVec3, v: f64) -> Result<(f64, f64, f64)> {
    let h = height_jet(curve, u, v)?;
    Ok((h.c0, h.c1, h.c2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalPoint {
    NotCritical,
    Critical,
    DegenerateCritical,
}

/// Classifies `v` as a critical point of the height function in direction
/// `u`.
pub fn critical_point_classification<C: Curve + ?Sized>(
    curve: &C,
    u: MinkVec3,
    v: f64,
    tol: f64,
) -> Result<CriticalPoint> {
    let (_, h1, h2) = height_function(curve, u, v)?;
    Ok(if !(h1.abs() < tol) {
        CriticalPoint::NotCritical
    } else if h2.abs() < tol {
        CriticalPoint::DegenerateCritical
    } else {
        CriticalPoint::Critical
    })
}

/// Euclidean distance from `u` to `span{base, s}`.
pub fn distance_to_normal_plane(frame: &SabbanFrame, u: MinkVec3) -> f64 {
    let (b, s) = (frame.base, frame.s);
    let proj = b * (mink_dot(u, b) / mink_dot(b, b)) + s * (mink_dot(u, s) / mink_dot(s, s));
    (u - proj).euclid_norm()
}

/// Checks the classification against the geometric description of critical
/// points: critical directions lie in `span{base, s}`, degenerate ones are
/// the curvature centres. Returns false if the two disagree.
pub fn critical_point_cross_check<C: Curve + ?Sized>(curve: &C, u: MinkVec3, v: f64, tol: f64) -> Result<bool> {
    let class = critical_point_classification(curve, u, v, tol)?;
    let frame = frame_at(curve, v)?;
    if class == CriticalPoint::NotCritical {
        return Ok(true);
    }
    if distance_to_normal_plane(&frame, u) >= 10.0 * tol {
        return Ok(false);
    }
    if class == CriticalPoint::DegenerateCritical && frame.kappa_g * frame.kappa_g - 1.0 > EVOLUTE_TOL {
        let c = curvature_center(&frame)?;
        let d = (u - c.u_plus).euclid_norm().min((u - c.u_minus).euclid_norm());
        return Ok(d < 10.0 * tol);
    }
    Ok(true)
}

/// The evolute point at `v0` and the radius that makes `base(v0)` lie on the
/// pseudo-circle around it: `u0 = d_f = u−` with radius `−r0` on S12,
/// `u0 = h_g = u+` with radius `r0` on H2.
pub fn contact_center<C: Curve + ?Sized>(curve: &C, v0: f64) -> Result<(MinkVec3, f64)> {
    let frame = frame_at(curve, v0)?;
    let c = curvature_center(&frame)?;
    Ok(match frame.space {
        Sphere::S12 => (c.u_minus, -c.r0),
        Sphere::H2 => (c.u_plus, c.r0),
    })
}

/// `ψ(v) = ⟨base(v), u0⟩ − r` around `v0` as a jet.
pub fn contact_function<C: Curve + ?Sized>(curve: &C, v0: f64) -> Result<Jet3> {
    let (u0, r) = contact_center(curve, v0)?;
    Ok(height_jet(curve, u0, v0)? - Jet3::constant(r))
}

/// True when the curve has at least 3-point contact with the pseudo-circle
/// of geodesic curvature at `v0`.
pub fn contact_order_check<C: Curve + ?Sized>(curve: &C, v0: f64, tol: f64) -> Result<bool> {
    let psi = contact_function(curve, v0)?;
    Ok(psi.c0.abs() < tol && psi.c1.abs() < tol && psi.c2.abs() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_dsl::preset;

    fn sqrt2() -> f64 {
        2f64.sqrt()
    }

    #[test]
    fn example_336_frame() {
        let c = preset("example_336", &[]).unwrap();
        for v in [0.0, 1.0, 2.5, 6.0] {
            let fr = frame_at(&c, v).unwrap();
            assert!(fr.kappa_g.abs() < 1e-15);
            assert!((fr.s - MinkVec3::new(0.0, 0.0, 1.0)).max_abs() < 1e-15);
            assert!((det3(fr.base, fr.t, fr.s) + 1.0).abs() < 1e-15);
            assert!(matches!(evolute(&fr), Err(Error::EvoluteUndefined { .. })));
            assert!(curvature_center(&fr).is_err());
        }
        assert!(frame_ode_residual(&c, Sphere::S12, 1.0).unwrap() < 1e-10);
        assert!(contact_order_check(&c, 1.0, 1e-8).is_err());
    }

    #[test]
    fn pseudo_circle_s12_frame_and_evolute() {
        let c = preset("pseudo_circle_s12", &[sqrt2()]).unwrap();
        for i in 0..10 {
            let v = -1.8 + 0.4 * i as f64;
            let fr = frame_at(&c, v).unwrap();
            assert!((fr.kappa_g - sqrt2()).abs() < 1e-13);
            assert!(fr.kappa_g_prime.abs() < 1e-13);
            let want = MinkVec3::new(-1.0, -sqrt2() * v.sinh(), -sqrt2() * v.cosh());
            assert!((fr.s - want).max_abs() < 1e-13);
            assert!((fr.s.cross(fr.t) - fr.base).max_abs() < 1e-13);
            let e = evolute(&fr).unwrap();
            assert!((e - MinkVec3::new(-1.0, 0.0, 0.0)).max_abs() < 1e-12, "{e}");
            let cc = curvature_center(&fr).unwrap();
            assert!((cc.u_plus - MinkVec3::new(1.0, 0.0, 0.0)).max_abs() < 1e-12);
            assert!((cc.r0 - sqrt2()).abs() < 1e-13);
            assert!((mink_dot(fr.base, cc.u_plus) - sqrt2()).abs() < 1e-12);
            assert!(contact_order_check(&c, v, 1e-10).unwrap());
        }
        assert!(frame_ode_residual(&c, Sphere::S12, 0.3).unwrap() < 1e-10);
    }

    #[test]
    fn pseudo_circle_h2_frame_and_evolute() {
        let c = preset("pseudo_circle_h2", &[sqrt2()]).unwrap();
        for i in 0..10 {
            let v = -1.8 + 0.4 * i as f64;
            let fr = frame_at(&c, v).unwrap();
            assert!((fr.kappa_g - sqrt2()).abs() < 1e-13);
            assert!((det3(fr.base, fr.t, fr.s) - 1.0).abs() < 1e-13);
            assert!((fr.s.cross(fr.t) - fr.base).max_abs() < 1e-13);
            let e = evolute(&fr).unwrap();
            assert!((e - MinkVec3::new(0.0, 0.0, 1.0)).max_abs() < 1e-12, "{e}");
            let cc = curvature_center(&fr).unwrap();
            assert!((cc.r0 + sqrt2()).abs() < 1e-13);
            assert!((mink_dot(fr.base, cc.u_plus) + sqrt2()).abs() < 1e-12);
            assert!(contact_order_check(&c, v, 1e-10).unwrap());
        }
        assert!(frame_ode_residual(&c, Sphere::H2, 0.7).unwrap() < 1e-10);
    }

    #[test]
    fn frame_preconditions() {
        let c = preset("example_336", &[]).unwrap();
        let mut s = c.sample(0.5).unwrap();
        assert!(matches!(sabban_frame(&s, Sphere::H2), Err(Error::NotOnSphere { .. })));
        s.d1 = s.d1 * 1.01;
        assert!(matches!(sabban_frame(&s, Sphere::S12), Err(Error::NotUnitSpeed { .. })));
    }

    #[test]
    fn height_function_examples() {
        let c = preset("example_336", &[]).unwrap();
        let fr = frame_at(&c, 0.8).unwrap();
        let (h, h1, h2) = height_function(&c, fr.base, 0.8).unwrap();
        assert!((h - 1.0).abs() < 1e-15 && h1.abs() < 1e-15 && (h2 + 1.0).abs() < 1e-15);
        let (h, h1, _) = height_function(&c, fr.s, 0.8).unwrap();
        assert!(h.abs() < 1e-15 && h1.abs() < 1e-15);
        assert_eq!(
            critical_point_classification(&c, fr.t, 0.8, 1e-9).unwrap(),
            CriticalPoint::NotCritical
        );
        assert_eq!(
            critical_point_classification(&c, fr.base, 0.8, 1e-9).unwrap(),
            CriticalPoint::Critical
        );
        assert!(critical_point_cross_check(&c, fr.base, 0.8, 1e-9).unwrap());

        let c = preset("pseudo_circle_s12", &[sqrt2()]).unwrap();
        let u = MinkVec3::new(-1.0, 0.0, 0.0);
        for v in [-1.0, 0.2, 1.5] {
            let (h, h1, h2) = height_function(&c, u, v).unwrap();
            assert!((h + sqrt2()).abs() < 1e-14 && h1.abs() < 1e-14 && h2.abs() < 1e-14);
            let fr = frame_at(&c, v).unwrap();
            for sign in [1.0, -1.0] {
                let u = sign * (sqrt2() * fr.base + fr.s);
                assert_eq!(
                    critical_point_classification(&c, u, v, 1e-9).unwrap(),
                    CriticalPoint::DegenerateCritical
                );
                assert!(critical_point_cross_check(&c, u, v, 1e-9).unwrap());
            }
        }
    }
}
