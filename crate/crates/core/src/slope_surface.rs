//! Space-like constant slope surfaces generated by spherical curves:
//!
//! ```text
//! space-like cone:  x(u,v) = u cosh θ (cosh ξ f(v) + sinh ξ f(v) × f′(v)),  ξ = tanh θ ln u
//! time-like cone:   x(u,v) = u sinh θ (cosh ξ g(v) + sinh ξ g(v) × g′(v)),  ξ = coth θ ln u
//! ```
//!
//! Partial derivatives are exact: `u` and `v` are each expanded as jets.

use crate::bertrand::{BertrandConfig, BertrandCurve};
use crate::curve_dsl::{domain_grid, uniform_grid, Curve, CurveSample, Space};
use crate::error::{Error, Result};
use crate::frenet::frenet;
use crate::jets::{apply, Elementary, Jet3, JetVec3};
use crate::lorentz::{mink_dot, pseudo_norm, MinkVec3, Sphere};
use crate::quadrature::integrate;
use crate::spherical_frames::frame_at;

/// `‖x_u × x_v‖_E` below this is a degenerate normal.
pub const NORMAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cone {
    /// Position vectors space-like; generator on S12.
    SpaceLikeCone,
    /// Position vectors time-like; generator on H2.
    TimeLikeCone,
}

impl Cone {
    pub fn sphere(self) -> Sphere {
        match self {
            Cone::SpaceLikeCone => Sphere::S12,
            Cone::TimeLikeCone => Sphere::H2,
        }
    }

    pub fn for_sphere(sphere: Sphere) -> Cone {
        match sphere {
            Sphere::S12 => Cone::SpaceLikeCone,
            Sphere::H2 => Cone::TimeLikeCone,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Cone::SpaceLikeCone => "space-like cone",
            Cone::TimeLikeCone => "time-like cone",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceConfig {
    pub theta: f64,
    pub cone: Cone,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub nu: usize,
    pub nv: usize,
}

impl SurfaceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta == 0.0 {
            return Err(Error::ThetaZero);
        }
        if !self.theta.is_finite() {
            return Err(Error::BadParameter {
                name: "theta",
                value: self.theta,
                reason: "must be finite",
            });
        }
        let (u0, u1) = self.u_range;
        if !(u0 > 0.0 && u0 <= u1 && u1.is_finite()) {
            return Err(Error::BadParameter {
                name: "u_min",
                value: u0,
                reason: "u range must be positive and ordered",
            });
        }
        let (v0, v1) = self.v_range;
        if !(v0 <= v1 && v0.is_finite() && v1.is_finite()) {
            return Err(Error::BadParameter {
                name: "v_min",
                value: v0,
                reason: "v range must be finite and ordered",
            });
        }
        for (name, n) in [("nu", self.nu), ("nv", self.nv)] {
            if n < 2 {
                return Err(Error::BadParameter {
                    name,
                    value: n as f64,
                    reason: "need at least two grid lines",
                });
            }
        }
        Ok(())
    }
}

fn check_inputs<C: Curve + ?Sized>(curve: &C, theta: f64, cone: Cone) -> Result<()> {
    if theta == 0.0 {
        return Err(Error::ThetaZero);
    }
    if curve.space() != Space::from(cone.sphere()) {
        return Err(Error::BadCone {
            cone: cone.name(),
            expected: cone.sphere().name(),
        });
    }
    Ok(())
}

/// The coefficients `(A, B)` of `base` and `base × base′` as jets in `u`.
fn coefficients(theta: f64, cone: Cone, u: f64) -> Result<(Jet3, Jet3)> {
    if !(u > 0.0) {
        return Err(Error::BadParameter {
            name: "u",
            value: u,
            reason: "must be positive",
        });
    }
    let uj = Jet3::variable(u);
    let (k, scale) = match cone {
        Cone::SpaceLikeCone => (theta.tanh(), theta.cosh()),
        Cone::TimeLikeCone => (1.0 / theta.tanh(), theta.sinh()),
    };
    let xi = apply(Elementary::Ln, uj)?.scale(k);
    let ru = uj.scale(scale);
    Ok((ru * apply(Elementary::Cosh, xi)?, ru * apply(Elementary::Sinh, xi)?))
}

/// A surface point with the partial derivatives used for normals and
/// parameter curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePartials {
    pub x: MinkVec3,
    pub x_u: MinkVec3,
    pub x_v: MinkVec3,
    pub x_vv: MinkVec3,
}

impl SurfacePartials {
    /// Unit normal `x_u × x_v / ‖x_u × x_v‖`.
    pub fn normal(&self, u: f64, v: f64) -> Result<MinkVec3> {
        let n = self.x_u.cross(self.x_v);
        let norm = n.euclid_norm();
        if !(norm >= NORMAL_TOL) || mink_dot(n, n) == 0.0 {
            return Err(Error::DegenerateNormal { u, v, norm });
        }
        Ok(n.normalized())
    }

    /// The induced metric `(E, F, G)`.
    pub fn first_fundamental_form(&self) -> (f64, f64, f64) {
        (
            mink_dot(self.x_u, self.x_u),
            mink_dot(self.x_u, self.x_v),
            mink_dot(self.x_v, self.x_v),
        )
    }
}

pub fn surface_partials<C: Curve + ?Sized>(
    curve: &C,
    theta: f64,
    cone: Cone,
    u: f64,
    v: f64,
) -> Result<SurfacePartials> {
    check_inputs(curve, theta, cone)?;
    let (a, b) = coefficients(theta, cone, u)?;
    let sample = curve.sample(v).map_err(|e| e.at(v))?;
    Ok(partials_from(&column(&sample), a, b))
}

/// The generator and `base × base′` as jets in `v`.
fn column(sample: &CurveSample) -> (JetVec3, JetVec3) {
    let f = sample.to_jets();
    (f, f.cross(f.derivative()))
}

fn partials_from(col: &(JetVec3, JetVec3), a: Jet3, b: Jet3) -> SurfacePartials {
    let (f, w) = *col;
    let x = f.scale_f64(a.c0) + w.scale_f64(b.c0);
    SurfacePartials {
        x: x.order(0),
        x_u: a.c1 * f.order(0) + b.c1 * w.order(0),
        x_v: x.order(1),
        x_vv: x.order(2),
    }
}

/// `x(u, v)`.
pub fn surface_point<C: Curve + ?Sized>(curve: &C, cfg: &SurfaceConfig, u: f64, v: f64) -> Result<MinkVec3> {
    Ok(surface_partials(curve, cfg.theta, cfg.cone, u, v)?.x)
}

/// Row-major samples of a surface: row `r` is `u_r`, column `c` is `v_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub nu: usize,
    pub nv: usize,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    pub vertices: Vec<MinkVec3>,
    pub normals: Vec<MinkVec3>,
}

impl SurfaceMesh {
    pub fn index(&self, r: usize, c: usize) -> usize {
        r * self.nv + c
    }
}

pub fn generate_mesh<C: Curve + ?Sized>(curve: &C, cfg: &SurfaceConfig) -> Result<SurfaceMesh> {
    cfg.validate()?;
    check_inputs(curve, cfg.theta, cfg.cone)?;
    let us = uniform_grid(cfg.u_range.0, cfg.u_range.1, cfg.nu);
    let vs = uniform_grid(cfg.v_range.0, cfg.v_range.1, cfg.nv);
    let mut vertices = Vec::with_capacity(cfg.nu * cfg.nv);
    let mut normals = Vec::with_capacity(cfg.nu * cfg.nv);
    let columns = vs
        .iter()
        .map(|&v| Ok(column(&curve.sample(v).map_err(|e| e.at(v))?)))
        .collect::<Result<Vec<_>>>()?;
    for &u in &us {
        let (a, b) = coefficients(cfg.theta, cfg.cone, u)?;
        for (col, &v) in columns.iter().zip(&vs) {
            let p = partials_from(col, a, b);
            vertices.push(p.x);
            normals.push(p.normal(u, v)?);
        }
    }
    Ok(SurfaceMesh {
        nu: cfg.nu,
        nv: cfg.nv,
        us,
        vs,
        vertices,
        normals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantSlope {
    /// `max |q − q̄|` over the grid.
    pub residual: f64,
    /// The grid mean `q̄` of `q = ⟨x, n⟩/(‖x‖‖n‖)`.
    pub q_mean: f64,
}

/// Measures how far `⟨x, n⟩/(‖x‖‖n‖)` is from constant over the grid of
/// `cfg`.
pub fn constant_slope_residual<C: Curve + ?Sized>(curve: &C, cfg: &SurfaceConfig) -> Result<ConstantSlope> {
    let mesh = generate_mesh(curve, cfg)?;
    let qs: Vec<f64> = mesh
        .vertices
        .iter()
        .zip(&mesh.normals)
        .map(|(&x, &n)| mink_dot(x, n) / (pseudo_norm(x) * pseudo_norm(n)))
        .collect();
    let q_mean = qs.iter().sum::<f64>() / qs.len() as f64;
    let residual = qs.iter().map(|q| (q - q_mean).abs()).fold(0.0, f64::max);
    Ok(ConstantSlope { residual, q_mean })
}

/// Largest Euclidean distance between `γ̃′(v)` and `x(u, v)` over the
/// generator's domain, with the Bertrand constants taken from `(u, θ)`.
pub fn derivative_on_surface_check<C: Curve + Clone>(curve: &C, u: f64, theta: f64, n_grid: usize) -> Result<f64> {
    let sphere = curve.space().sphere().ok_or(Error::BadParameter {
        name: "space",
        value: f64::NAN,
        reason: "generator must lie on S12 or H2",
    })?;
    let cone = Cone::for_sphere(sphere);
    let cfg = BertrandConfig::from_surface(u, theta, sphere)?;
    let bc = BertrandCurve::frame_only(curve.clone(), cfg)?;
    let mut worst = 0.0f64;
    for v in domain_grid(curve, n_grid) {
        let d1 = bc.sample(v)?.d1;
        let x = surface_partials(curve, theta, cone, u, v)?.x;
        worst = worst.max((d1 - x).euclid_norm());
    }
    Ok(worst)
}

/// `Γ(v) = ∫₀ᵛ x(u, t) dt` for fixed `u`: derivatives come from the surface
/// jets, positions from quadrature when a tolerance is given.
#[derive(Debug, Clone)]
pub struct ParameterCurveIntegral<C> {
    generator: C,
    theta: f64,
    cone: Cone,
    u: f64,
    quad_tol: Option<f64>,
}

impl<C: Curve> ParameterCurveIntegral<C> {
    pub fn new(generator: C, theta: f64, u: f64, quad_tol: Option<f64>) -> Result<Self> {
        let sphere = generator.space().sphere().ok_or(Error::BadParameter {
            name: "space",
            value: f64::NAN,
            reason: "generator must lie on S12 or H2",
        })?;
        let cone = Cone::for_sphere(sphere);
        check_inputs(&generator, theta, cone)?;
        coefficients(theta, cone, u)?;
        Ok(Self {
            generator,
            theta,
            cone,
            u,
            quad_tol,
        })
    }
}

impl<C: Curve> Curve for ParameterCurveIntegral<C> {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        let p = surface_partials(&self.generator, self.theta, self.cone, self.u, v)?;
        let position = match self.quad_tol {
            Some(tol) => integrate(
                |t| Ok(surface_partials(&self.generator, self.theta, self.cone, self.u, t)?.x),
                0.0,
                v,
                tol,
            )?,
            None => MinkVec3::ZERO,
        };
        Ok(CurveSample {
            position,
            d1: p.x,
            d2: p.x_v,
            d3: p.x_vv,
        })
    }

    fn domain(&self) -> (f64, f64) {
        self.generator.domain()
    }

    fn space(&self) -> Space {
        Space::Free
    }
}

/// Integrates the fixed-`u` parameter curve of the surface and returns the
/// largest Bertrand-identity residual `|a(εκ + tanh ξ·τ) − 1|` of the result
/// over the grid, with `ε` chosen per point as in the Bertrand module.
pub fn integral_curve_bertrand_check<C: Curve + Clone>(curve: &C, u: f64, theta: f64, n_grid: usize) -> Result<f64> {
    let integral = ParameterCurveIntegral::new(curve.clone(), theta, u, None)?;
    let sphere = integral.cone.sphere();
    let cfg = BertrandConfig::from_surface(u, theta, sphere)?;
    let th = cfg.xi.tanh();
    let mut worst = 0.0f64;
    let mut sign = None;
    for v in domain_grid(curve, n_grid) {
        let kg = frame_at(curve, v)?.kappa_g;
        let factor = cfg.factor(kg);
        if !(factor.abs() > crate::bertrand::FACTOR_TOL) || sign.is_some_and(|s| s != factor.signum()) {
            return Err(Error::DegenerateBertrandPoint { v, factor });
        }
        sign = Some(factor.signum());
        let app = frenet(&integral.sample(v)?).map_err(|e| e.at(v))?;
        let eps = cfg.epsilon_for(kg);
        worst = worst.max((cfg.a * (eps * app.kappa + th * app.tau) - 1.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_dsl::preset;
    use std::f64::consts::{E, FRAC_PI_2, TAU};

    fn cfg(cone: Cone, n: usize) -> SurfaceConfig {
        SurfaceConfig {
            theta: 1.5,
            cone,
            u_range: (0.5, 3.0),
            v_range: (0.0, 2.0),
            nu: n,
            nv: n,
        }
    }

    #[test]
    fn example_336_surface_formula() {
        let c = preset("example_336", &[]).unwrap();
        let k = cfg(Cone::SpaceLikeCone, 2);
        let xi = 1.5f64.tanh();
        for v in [0.0, 0.7, FRAC_PI_2, 4.0] {
            let x = surface_point(&c, &k, E, v).unwrap();
            let want = E * 1.5f64.cosh() * MinkVec3::new(xi.cosh() * v.sin(), xi.cosh() * v.cos(), xi.sinh());
            assert!((x - want).max_abs() < 1e-12, "{x} vs {want}");
            let x1 = surface_point(&c, &k, 1.0, v).unwrap();
            assert!((x1 - 1.5f64.cosh() * c.sample(v).unwrap().position).max_abs() < 1e-14);
        }
    }

    #[test]
    fn example_46_surface_formula() {
        let c = preset("example_46", &[]).unwrap();
        let k = cfg(Cone::TimeLikeCone, 2);
        let xi = 1.0 / 1.5f64.tanh();
        for v in [0.0, 0.7, 2.0] {
            let x = surface_point(&c, &k, E, v).unwrap();
            let want = E * 1.5f64.sinh() * MinkVec3::new(xi.cosh() * v.sinh(), xi.sinh(), xi.cosh() * v.cosh());
            assert!((x - want).max_abs() < 1e-11, "{x} vs {want}");
        }
    }

    #[test]
    fn input_errors() {
        let c = preset("example_336", &[]).unwrap();
        let mut k = cfg(Cone::TimeLikeCone, 2);
        assert!(matches!(surface_point(&c, &k, 1.0, 0.0), Err(Error::BadCone { .. })));
        k.cone = Cone::SpaceLikeCone;
        k.theta = 0.0;
        assert_eq!(surface_point(&c, &k, 1.0, 0.0), Err(Error::ThetaZero));
        k.theta = 1.0;
        assert!(surface_point(&c, &k, 0.0, 0.0).is_err());
        k.nu = 1;
        assert!(generate_mesh(&c, &k).is_err());
    }

    #[test]
    fn meshes_are_space_like_on_their_cones() {
        for (name, cone) in [("example_336", Cone::SpaceLikeCone), ("example_46", Cone::TimeLikeCone)] {
            let c = preset(name, &[]).unwrap();
            let k = cfg(cone, 12);
            let mesh = generate_mesh(&c, &k).unwrap();
            assert_eq!(mesh.vertices.len(), 144);
            for (i, (&x, &n)) in mesh.vertices.iter().zip(&mesh.normals).enumerate() {
                let u = mesh.us[i / mesh.nv];
                let want = match cone {
                    Cone::SpaceLikeCone => (u * 1.5f64.cosh()).powi(2),
                    Cone::TimeLikeCone => -(u * 1.5f64.sinh()).powi(2),
                };
                assert!((mink_dot(x, x) - want).abs() < 1e-9 * want.abs().max(1.0));
                assert!((mink_dot(n, n) + 1.0).abs() < 1e-12, "normal not time-like");
            }
            let r = constant_slope_residual(&c, &k).unwrap();
            assert!(r.residual < 1e-12, "{name}: {r:?}");
        }
    }

    #[test]
    fn theorem_checks_on_examples() {
        let c = preset("example_336", &[]).unwrap();
        assert!(derivative_on_surface_check(&c, E, 1.5, 100).unwrap() < 1e-10);
        assert!(integral_curve_bertrand_check(&c, E, 1.5, 100).unwrap() < 1e-10);
        assert!(derivative_on_surface_check(&c, 1.0, 1.5, 10).unwrap() < 1e-13);
        let c = preset("example_46", &[]).unwrap();
        assert!(derivative_on_surface_check(&c, E, 1.5, 100).unwrap() < 1e-10);
        assert!(integral_curve_bertrand_check(&c, E, 1.5, 100).unwrap() < 1e-10);
    }

    #[test]
    fn integral_of_parameter_curve_is_the_closed_form_bertrand_curve() {
        let c = preset("example_336", &[]).unwrap();
        let g = ParameterCurveIntegral::new(c, 1.5, E, Some(1e-11)).unwrap();
        let xi = 1.5f64.tanh();
        for v in [0.5, 3.0, TAU] {
            let p = g.sample(v).unwrap().position;
            let want =
                E * 1.5f64.cosh() * MinkVec3::new(-xi.cosh() * (v.cos() - 1.0), xi.cosh() * v.sin(), xi.sinh() * v);
            assert!((p - want).max_abs() < 1e-8);
        }
    }
}
