//! Adaptive Simpson quadrature for scalar and vector integrands.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::lorentz::MinkVec3;

/// Default absolute tolerance for curve integrals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Maximum number of subintervals one integral may be split into.
pub const INTERVAL_BUDGET: usize = 1 << 20;

const MAX_DEPTH: u32 = 48;

/// Values that can be integrated: closed under addition and scaling, with a
/// max-norm for the error estimate.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn max_abs(self) -> f64;
}

impl Integrand for f64 {
    fn max_abs(self) -> f64 {
        self.abs()
    }
}

impl Integrand for MinkVec3 {
    fn max_abs(self) -> f64 {
        MinkVec3::max_abs(self)
    }
}

struct Simpson<'f, T, F> {
    f: &'f F,
    used: usize,
    budget: usize,
    _t: std::marker::PhantomData<T>,
}

impl<T, F> Simpson<'_, T, F>
where
    T: Integrand,
    F: Fn(f64) -> Result<T>,
{
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: f64, b: f64, fa: T, fm: T, fb: T, whole: T, tol: f64, depth: u32) -> Result<T> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let flm = (self.f)(lm)?;
        let frm = (self.f)(rm)?;
        let h = b - a;
        let left = (fa + flm * 4.0 + fm) * (h / 12.0);
        let right = (fm + frm * 4.0 + fb) * (h / 12.0);
        let delta = left + right - whole;
        if delta.max_abs() <= 15.0 * tol || depth >= MAX_DEPTH {
            if delta.max_abs() > 15.0 * tol {
                return Err(Error::QuadratureFailure { lo: a, hi: b, tol });
            }
            // Richardson extrapolation
            return Ok(left + right + delta * (1.0 / 15.0));
        }
        self.used += 1;
        if self.used > self.budget {
            return Err(Error::QuadratureFailure { lo: a, hi: b, tol });
        }
        let l = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
        let r = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }
}

/// Integrates `f` over `[a, b]` (either orientation) to absolute tolerance
/// `tol` per component.
pub fn integrate<T, F>(f: F, a: f64, b: f64, tol: f64) -> Result<T>
where
    T: Integrand,
    F: Fn(f64) -> Result<T>,
{
    integrate_with_budget(f, a, b, tol, INTERVAL_BUDGET)
}

pub fn integrate_with_budget<T, F>(f: F, a: f64, b: f64, tol: f64, budget: usize) -> Result<T>
where
    T: Integrand,
    F: Fn(f64) -> Result<T>,
{
    if !(tol > 0.0) {
        return Err(Error::BadParameter {
            name: "quad_tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let fa = f(a)?;
    if a == b {
        return Ok(fa * 0.0);
    }
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    let mut s = Simpson {
        f: &f,
        used: 1,
        budget,
        _t: std::marker::PhantomData,
    };
    s.refine(a, b, fa, fm, fb, whole, tol, 0)
}
