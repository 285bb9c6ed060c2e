//! Parametric curves: the expression language, curve specs and their file
//! format, the built-in presets, validation of sphere membership and unit
//! speed, arc-length reparametrization, and random test curves.

mod arclength;
pub mod expr;
mod random;
mod spec;

use std::sync::Arc;

pub use arclength::{reparametrize_unit_speed, ArcLengthCurve};
pub use expr::{parse_constant, parse_expression, BinOp, Constant, ExprAst, UnaryOp};
pub use random::{random_unit_speed_curve, CurveFamily, RandomCurve};
pub use spec::{eval_curve, parse_curve_file, preset, CurveSpec, Space, PRESET_NAMES};

use crate::error::{Error, Result};
use crate::jets::{Jet3, JetVec3};
use crate::lorentz::{mink_dot, MinkVec3};

/// A curve point with its first three parameter derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurveSample {
    pub position: MinkVec3,
    pub d1: MinkVec3,
    pub d2: MinkVec3,
    pub d3: MinkVec3,
}

impl CurveSample {
    pub fn from_jets(j: JetVec3) -> Self {
        Self {
            position: j.order(0),
            d1: j.order(1),
            d2: j.order(2),
            d3: j.order(3),
        }
    }

    pub fn to_jets(self) -> JetVec3 {
        JetVec3::from_derivatives([self.position, self.d1, self.d2, self.d3])
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }
}

/// Anything that can be sampled with derivatives on a parameter interval.
pub trait Curve: Send + Sync {
    fn sample(&self, v: f64) -> Result<CurveSample>;
    fn domain(&self) -> (f64, f64);
    fn space(&self) -> Space;
}

impl<C: Curve + ?Sized> Curve for &C {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        (**self).sample(v)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn space(&self) -> Space {
        (**self).space()
    }
}

impl<C: Curve + ?Sized> Curve for Box<C> {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        (**self).sample(v)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn space(&self) -> Space {
        (**self).space()
    }
}

impl<C: Curve + ?Sized> Curve for Arc<C> {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        (**self).sample(v)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn space(&self) -> Space {
        (**self).space()
    }
}

type JetFn = dyn Fn(Jet3) -> Result<JetVec3> + Send + Sync;

/// A curve given by a Rust closure over jets, for closed-form curves that
/// do not need the expression language.
#[derive(Clone)]
pub struct JetCurve {
    space: Space,
    domain: (f64, f64),
    f: Arc<JetFn>,
}

impl JetCurve {
    pub fn new<F>(space: Space, domain: (f64, f64), f: F) -> Self
    where
        F: Fn(Jet3) -> Result<JetVec3> + Send + Sync + 'static,
    {
        Self {
            space,
            domain,
            f: Arc::new(f),
        }
    }
}

impl std::fmt::Debug for JetCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("JetCurve")
            .field("space", &self.space)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl Curve for JetCurve {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        Ok(CurveSample::from_jets((self.f)(Jet3::variable(v))?))
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
    fn space(&self) -> Space {
        self.space
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * (i as f64 / (n - 1) as f64)
                }
            })
            .collect(),
    }
}

/// The uniform grid over a curve's whole domain.
pub fn domain_grid<C: Curve + ?Sized>(curve: &C, n: usize) -> Vec<f64> {
    let (lo, hi) = curve.domain();
    uniform_grid(lo, hi, n)
}

fn check_grid(n_grid: usize) -> Result<()> {
    if n_grid < 2 {
        return Err(Error::BadParameter {
            name: "n_grid",
            value: n_grid as f64,
            reason: "need at least two grid points",
        });
    }
    Ok(())
}

/// Largest `|<f,f> ∓ 1|` over a uniform grid; the curve must declare a
/// sphere.
pub fn validate_on_sphere<C: Curve + ?Sized>(curve: &C, n_grid: usize) -> Result<f64> {
    check_grid(n_grid)?;
    let sphere = curve.space().sphere().ok_or(Error::BadParameter {
        name: "space",
        value: f64::NAN,
        reason: "sphere validation needs an S12 or H2 curve",
    })?;
    let mut worst = 0.0f64;
    for v in domain_grid(curve, n_grid) {
        let p = curve.sample(v).map_err(|e| e.at(v))?.position;
        worst = worst.max((mink_dot(p, p) - sphere.radius_sq()).abs());
    }
    Ok(worst)
}

/// Largest `|<c',c'> - 1|` over a uniform grid.
pub fn validate_unit_speed<C: Curve + ?Sized>(curve: &C, n_grid: usize) -> Result<f64> {
    check_grid(n_grid)?;
    let mut worst = 0.0f64;
    for v in domain_grid(curve, n_grid) {
        let d1 = curve.sample(v).map_err(|e| e.at(v))?.d1;
        worst = worst.max((mink_dot(d1, d1) - 1.0).abs());
    }
    Ok(worst)
}
