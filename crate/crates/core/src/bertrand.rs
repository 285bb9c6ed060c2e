//! Bertrand curves built from unit-speed space-like curves on S12
//! (space-like Bertrand curves) and H2 (time-like Bertrand curves):
//!
//! ```text
//! γ̃(v) = a ∫₀ᵛ f dt + a tanh ξ ∫₀ᵛ f × f′ dt
//! ```
//!
//! Positions come from adaptive quadrature; derivatives come from the closed
//! form in terms of the generator's Sabban frame, so the Frenet apparatus of
//! γ̃ never depends on quadrature error.

use crate::curve_dsl::{domain_grid, Curve, CurveSample, Space};
use crate::error::{Error, Result};
use crate::frenet::{darboux_indicatrix, frenet, tau_kappa_spread};
use crate::lorentz::{MinkVec3, Sphere};
use crate::quadrature::integrate;
use crate::spherical_frames::{evolute, frame_at, SabbanFrame};

/// `|1 − tanh ξ·κ_g|` at or below this makes a grid point degenerate.
pub const FACTOR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BertrandConfig {
    pub a: f64,
    pub xi: f64,
    pub sphere: Sphere,
    pub epsilon: f64,
}

impl BertrandConfig {
    /// A configuration with `ε = sign(a)`.
    pub fn new(a: f64, xi: f64, sphere: Sphere) -> Result<Self> {
        if !(a != 0.0 && a.is_finite()) {
            return Err(Error::BadParameter {
                name: "a",
                value: a,
                reason: "must be finite and nonzero",
            });
        }
        if !xi.is_finite() {
            return Err(Error::BadParameter {
                name: "xi",
                value: xi,
                reason: "must be finite",
            });
        }
        Ok(Self {
            a,
            xi,
            sphere,
            epsilon: a.signum(),
        })
    }

    /// The constants of the constant slope surface through `(u, θ)`:
    /// `ξ = tanh θ ln u, a = u cosh θ cosh ξ` on S12 and
    /// `ξ = coth θ ln u, a = u sinh θ cosh ξ` on H2.
    pub fn from_surface(u: f64, theta: f64, sphere: Sphere) -> Result<Self> {
        if theta == 0.0 {
            return Err(Error::ThetaZero);
        }
        if !(u > 0.0 && u.is_finite()) {
            return Err(Error::BadParameter {
                name: "u",
                value: u,
                reason: "must be positive",
            });
        }
        let (xi, a) = match sphere {
            Sphere::S12 => {
                let xi = theta.tanh() * u.ln();
                (xi, u * theta.cosh() * xi.cosh())
            }
            Sphere::H2 => {
                let xi = u.ln() / theta.tanh();
                (xi, u * theta.sinh() * xi.cosh())
            }
        };
        Self::new(a, xi, sphere)
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        Self {
            epsilon: epsilon.signum(),
            ..self
        }
    }

    /// The Bertrand constants `(A, B) = (a, a tanh ξ)`.
    pub fn constants(&self) -> (f64, f64) {
        (self.a, self.a * self.xi.tanh())
    }

    /// `1 − tanh ξ·κ_g`.
    pub fn factor(&self, kappa_g: f64) -> f64 {
        1.0 - self.xi.tanh() * kappa_g
    }

    /// `sign(a)·sign(1 − tanh ξ·κ_g)`, the ε that makes the predicted κ
    /// nonnegative.
    pub fn epsilon_for(&self, kappa_g: f64) -> f64 {
        self.a.signum() * self.factor(kappa_g).signum()
    }
}

fn check_curve<C: Curve + ?Sized>(curve: &C, cfg: &BertrandConfig) -> Result<()> {
    if curve.space() != Space::from(cfg.sphere) {
        return Err(Error::BadParameter {
            name: "space",
            value: f64::NAN,
            reason: "generator must lie on the sphere named in the configuration",
        });
    }
    Ok(())
}

fn check_base_point<C: Curve + ?Sized>(curve: &C) -> Result<()> {
    let (lo, hi) = curve.domain();
    if !(lo <= 0.0 && 0.0 <= hi) {
        return Err(Error::BadParameter {
            name: "domain",
            value: lo,
            reason: "the integration base point 0 must lie in the domain",
        });
    }
    Ok(())
}

fn integrand<'c, C: Curve + ?Sized>(curve: &'c C, cfg: &BertrandConfig) -> impl Fn(f64) -> Result<MinkVec3> + 'c {
    let th = cfg.xi.tanh();
    let a = cfg.a;
    move |t| {
        let p = curve.sample(t)?;
        Ok(a * (p.position + th * p.position.cross(p.d1)))
    }
}

/// `γ̃(v)` by adaptive quadrature from the base point 0.
pub fn bertrand_point<C: Curve + ?Sized>(curve: &C, cfg: &BertrandConfig, v: f64, quad_tol: f64) -> Result<MinkVec3> {
    check_curve(curve, cfg)?;
    check_base_point(curve)?;
    integrate(integrand(curve, cfg), 0.0, v, quad_tol)
}

/// `γ̃` at every parameter of an increasing grid, integrating panel by panel
/// so the total error stays within `quad_tol`.
pub fn bertrand_polyline<C: Curve + ?Sized>(
    curve: &C,
    cfg: &BertrandConfig,
    grid: &[f64],
    quad_tol: f64,
) -> Result<Vec<MinkVec3>> {
    check_curve(curve, cfg)?;
    check_base_point(curve)?;
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::BadParameter {
            name: "grid",
            value: f64::NAN,
            reason: "parameters must be increasing",
        });
    }
    let f = integrand(curve, cfg);
    let panels = grid.len().max(1) as f64 + 1.0;
    let tol = quad_tol / panels;
    let mut out = Vec::with_capacity(grid.len());
    // start from the grid point nearest the base point and sweep both ways
    let start = grid.partition_point(|&v| v < 0.0);
    out.resize(grid.len(), MinkVec3::ZERO);
    let mut acc = MinkVec3::ZERO;
    let mut prev = 0.0;
    for i in start..grid.len() {
        acc += integrate(&f, prev, grid[i], tol)?;
        out[i] = acc;
        prev = grid[i];
    }
    let (mut acc, mut prev) = (MinkVec3::ZERO, 0.0);
    for i in (0..start).rev() {
        acc += integrate(&f, prev, grid[i], tol)?;
        out[i] = acc;
        prev = grid[i];
    }
    Ok(out)
}

fn derivatives_from_frame(frame: &SabbanFrame, cfg: &BertrandConfig) -> (MinkVec3, MinkVec3, MinkVec3) {
    let (a, th) = (cfg.a, cfg.xi.tanh());
    let (f, t, s, k, kp) = (frame.base, frame.t, frame.s, frame.kappa_g, frame.kappa_g_prime);
    let d1 = a * (f + th * s);
    let d2 = a * (1.0 - th * k) * t;
    let d3 = match cfg.sphere {
        Sphere::S12 => -a * (1.0 - th * k) * f - a * th * kp * t - a * (k - th * k * k) * s,
        Sphere::H2 => a * (1.0 - th * k) * f - a * th * kp * t + a * (k - th * k * k) * s,
    };
    (d1, d2, d3)
}

/// `γ̃(v)` with its first three derivatives; the derivatives are exact
/// expressions in the generator's Sabban frame.
pub fn bertrand_derivatives<C: Curve + ?Sized>(
    curve: &C,
    cfg: &BertrandConfig,
    v: f64,
    quad_tol: f64,
) -> Result<CurveSample> {
    let position = bertrand_point(curve, cfg, v, quad_tol)?;
    let frame = frame_at(curve, v)?;
    let (d1, d2, d3) = derivatives_from_frame(&frame, cfg);
    Ok(CurveSample { position, d1, d2, d3 })
}

/// The Bertrand curve of a generator as a [`Curve`] on the generator's
/// domain. Built with [`BertrandCurve::frame_only`] it skips the quadrature
/// and reports the origin as its position, which is enough for anything
/// that depends only on derivatives (Frenet apparatus, Darboux vectors).
#[derive(Debug, Clone)]
pub struct BertrandCurve<C> {
    generator: C,
    cfg: BertrandConfig,
    quad_tol: Option<f64>,
}

impl<C: Curve> BertrandCurve<C> {
    pub fn new(generator: C, cfg: BertrandConfig, quad_tol: f64) -> Result<Self> {
        check_curve(&generator, &cfg)?;
        check_base_point(&generator)?;
        Ok(Self {
            generator,
            cfg,
            quad_tol: Some(quad_tol),
        })
    }

    pub fn frame_only(generator: C, cfg: BertrandConfig) -> Result<Self> {
        check_curve(&generator, &cfg)?;
        Ok(Self {
            generator,
            cfg,
            quad_tol: None,
        })
    }

    pub fn generator(&self) -> &C {
        &self.generator
    }

    pub fn config(&self) -> &BertrandConfig {
        &self.cfg
    }
}

impl<C: Curve> Curve for BertrandCurve<C> {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        let frame = frame_at(&self.generator, v)?;
        let (d1, d2, d3) = derivatives_from_frame(&frame, &self.cfg);
        let position = match self.quad_tol {
            Some(tol) => bertrand_point(&self.generator, &self.cfg, v, tol)?,
            None => MinkVec3::ZERO,
        };
        Ok(CurveSample { position, d1, d2, d3 })
    }

    fn domain(&self) -> (f64, f64) {
        self.generator.domain()
    }

    fn space(&self) -> Space {
        Space::Free
    }
}

/// `κ = ε cosh²ξ (1 − tanh ξ·κ_g)/a` and `τ = cosh²ξ (κ_g − tanh ξ)/a`.
pub fn predicted_kappa_tau(kappa_g: f64, cfg: &BertrandConfig) -> (f64, f64) {
    let c2 = cfg.xi.cosh().powi(2);
    let th = cfg.xi.tanh();
    (
        cfg.epsilon * c2 * (1.0 - th * kappa_g) / cfg.a,
        c2 * (kappa_g - th) / cfg.a,
    )
}

/// Largest residuals of a Bertrand check over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BertrandResiduals {
    /// `|(κ, τ) − (κ, τ)_predicted|` (Euclidean norm of the pair).
    pub kappa_tau_abs: f64,
    /// The same divided by the norm of the predicted pair.
    pub kappa_tau_rel: f64,
    /// `|a(εκ + tanh ξ·τ) − 1|`.
    pub identity: f64,
}

/// The grid points with the per-point ε, refusing grids on which the factor
/// `1 − tanh ξ·κ_g` vanishes or changes sign.
fn checked_grid<C: Curve + ?Sized>(
    curve: &C,
    cfg: &BertrandConfig,
    n_grid: usize,
) -> Result<Vec<(f64, SabbanFrame, f64)>> {
    let mut out = Vec::with_capacity(n_grid);
    let mut sign = None;
    for v in domain_grid(curve, n_grid) {
        let frame = frame_at(curve, v)?;
        let factor = cfg.factor(frame.kappa_g);
        if !(factor.abs() > FACTOR_TOL) || sign.is_some_and(|s| s != factor.signum()) {
            return Err(Error::DegenerateBertrandPoint { v, factor });
        }
        sign = Some(factor.signum());
        out.push((v, frame, cfg.epsilon_for(frame.kappa_g)));
    }
    Ok(out)
}

/// Compares the numerically computed Frenet curvature and torsion of γ̃ with
/// the predicted ones and checks the Bertrand identity at every grid point.
pub fn verify_bertrand<C: Curve + ?Sized>(curve: &C, cfg: &BertrandConfig, n_grid: usize) -> Result<BertrandResiduals> {
    check_curve(curve, cfg)?;
    let th = cfg.xi.tanh();
    let mut r = BertrandResiduals::default();
    for (v, frame, eps) in checked_grid(curve, cfg, n_grid)? {
        let (d1, d2, d3) = derivatives_from_frame(&frame, cfg);
        let app = frenet(&CurveSample {
            position: MinkVec3::ZERO,
            d1,
            d2,
            d3,
        })
        .map_err(|e| e.at(v))?;
        let (k, t) = predicted_kappa_tau(frame.kappa_g, &cfg.with_epsilon(eps));
        let abs = (app.kappa - k).hypot(app.tau - t);
        r.kappa_tau_abs = r.kappa_tau_abs.max(abs);
        r.kappa_tau_rel = r.kappa_tau_rel.max(abs / k.hypot(t));
        r.identity = r.identity.max((cfg.a * (eps * app.kappa + th * app.tau) - 1.0).abs());
    }
    Ok(r)
}

/// Largest Euclidean distance between the spherical Darboux indicatrix of γ̃
/// and the evolute of the generator. The indicatrix's sign is matched to the
/// evolute at the first grid point and then held fixed.
pub fn darboux_equals_evolute<C: Curve + ?Sized>(curve: &C, cfg: &BertrandConfig, n_grid: usize) -> Result<f64> {
    check_curve(curve, cfg)?;
    let mut sign = None;
    let mut worst = 0.0f64;
    for v in domain_grid(curve, n_grid) {
        let frame = frame_at(curve, v)?;
        let e = evolute(&frame).map_err(|e| e.at(v))?;
        let (d1, d2, d3) = derivatives_from_frame(&frame, cfg);
        let app = frenet(&CurveSample {
            position: MinkVec3::ZERO,
            d1,
            d2,
            d3,
        })
        .map_err(|e| e.at(v))?;
        let (c, _) = darboux_indicatrix(&app).map_err(|e| e.at(v))?;
        let sigma = *sign.get_or_insert_with(|| {
            if (c - e).euclid_norm() <= (c + e).euclid_norm() {
                1.0
            } else {
                -1.0
            }
        });
        worst = worst.max((sigma * c - e).euclid_norm());
    }
    Ok(worst)
}

/// `max κ_g − min κ_g` over the grid.
pub fn kappa_g_spread<C: Curve + ?Sized>(curve: &C, n_grid: usize) -> Result<f64> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in domain_grid(curve, n_grid) {
        let k = frame_at(curve, v)?.kappa_g;
        lo = lo.min(k);
        hi = hi.max(k);
    }
    Ok(if hi >= lo { hi - lo } else { 0.0 })
}

/// `(generator is a pseudo-circle, γ̃ is a helix)`, each decided by a spread
/// below `tol`.
pub fn helix_correspondence<C: Curve + Clone>(
    curve: &C,
    cfg: &BertrandConfig,
    n_grid: usize,
    tol: f64,
) -> Result<(bool, bool)> {
    checked_grid(curve, cfg, n_grid)?;
    let pseudo = kappa_g_spread(curve, n_grid)? < tol;
    let bc = BertrandCurve::frame_only(curve.clone(), *cfg)?;
    let helix = tau_kappa_spread(&bc, n_grid)? < tol;
    Ok((pseudo, helix))
}
