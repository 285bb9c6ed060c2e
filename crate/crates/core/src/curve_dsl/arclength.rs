use crate::curve_dsl::{uniform_grid, Curve, CurveSample, Space};
use crate::error::{Error, Result};
use crate::jets::Jet3;
use crate::lorentz::{causal_character, pseudo_norm, CausalCharacter};
use crate::quadrature::integrate;

/// Speeds below this are treated as a stalled parametrization.
pub const MIN_SPEED: f64 = 1e-9;

const PANELS: usize = 256;
const SPEED_CHECKS: usize = 4 * PANELS + 1;
const MAX_NEWTON: usize = 60;

/// A space-like curve reparametrized by arc length `s ∈ [0, L]`, measured from
/// the start of the base curve's domain.
#[derive(Debug, Clone)]
pub struct ArcLengthCurve<C> {
    base: C,
    tol: f64,
    knots_v: Vec<f64>,
    knots_s: Vec<f64>,
}

/// Builds the arc-length evaluator of `curve`, integrating `|c'|` to
/// absolute tolerance `tol`.
pub fn reparametrize_unit_speed<C: Curve>(curve: C, tol: f64) -> Result<ArcLengthCurve<C>> {
    ArcLengthCurve::new(curve, tol)
}

impl<C: Curve> ArcLengthCurve<C> {
    pub fn new(base: C, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::BadParameter {
                name: "tol",
                value: tol,
                reason: "tolerance must be positive",
            });
        }
        let (lo, hi) = base.domain();
        for v in uniform_grid(lo, hi, SPEED_CHECKS) {
            let d1 = base.sample(v).map_err(|e| e.at(v))?.d1;
            let speed = pseudo_norm(d1);
            if speed < MIN_SPEED || causal_character(d1) == CausalCharacter::LightLike {
                return Err(Error::DegenerateSpeed { v, speed });
            }
            if causal_character(d1) != CausalCharacter::SpaceLike {
                return Err(Error::WrongCausalType {
                    expected: "space-like",
                    found: causal_character(d1).name(),
                }
                .at(v));
            }
        }
        let knots_v = uniform_grid(lo, hi, PANELS + 1);
        let mut knots_s = Vec::with_capacity(knots_v.len());
        let mut s = 0.0;
        knots_s.push(s);
        for w in knots_v.windows(2) {
            s += integrate(|v| speed(&base, v), w[0], w[1], tol / PANELS as f64)?;
            knots_s.push(s);
        }
        Ok(Self {
            base,
            tol,
            knots_v,
            knots_s,
        })
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    pub fn length(&self) -> f64 {
        *self.knots_s.last().unwrap_or(&0.0)
    }

    /// The base parameter `v` with arc length `s` from the start.
    pub fn param_at(&self, s: f64) -> Result<f64> {
        let len = self.length();
        if !(0.0..=len).contains(&s) {
            return Err(Error::BadParameter {
                name: "s",
                value: s,
                reason: "outside the arc-length domain",
            });
        }
        let k = self
            .knots_s
            .partition_point(|&x| x <= s)
            .saturating_sub(1)
            .min(PANELS - 1);
        let (mut a, mut b) = (self.knots_v[k], self.knots_v[k + 1]);
        let (s0, s1) = (self.knots_s[k], self.knots_s[k + 1]);
        let target = s - s0;
        let mut v = a + (b - a) * (target / (s1 - s0));
        let quad_tol = self.tol * 1e-2;
        for _ in 0..MAX_NEWTON {
            let arc = integrate(|t| speed(&self.base, t), self.knots_v[k], v, quad_tol)?;
            let f = arc - target;
            if f.abs() <= quad_tol {
                break;
            }
            if f > 0.0 {
                b = v;
            } else {
                a = v;
            }
            let step = f / speed(&self.base, v)?;
            let mut next = v - step;
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            let done = (next - v).abs() <= 4.0 * f64::EPSILON * v.abs().max(1.0);
            v = next;
            if done {
                break;
            }
        }
        Ok(v)
    }
}

fn speed<C: Curve + ?Sized>(curve: &C, v: f64) -> Result<f64> {
    Ok(pseudo_norm(curve.sample(v)?.d1))
}

impl<C: Curve> Curve for ArcLengthCurve<C> {
    fn sample(&self, s: f64) -> Result<CurveSample> {
        let v = self.param_at(s)?;
        let c = self.base.sample(v)?.to_jets();
        let vel = c.derivative();
        let sigma = vel.dot(vel).sqrt()?;
        let (s0, s1, s2) = (sigma.c0, sigma.c1, sigma.c2);
        // derivatives of the inverse function v(s)
        let inner = Jet3::new(
            v,
            1.0 / s0,
            -s1 / (s0 * s0 * s0),
            (3.0 * s1 * s1 - s0 * s2) / s0.powi(5),
        );
        let compose = |j: Jet3| inner.chain(j.coeffs());
        let out = crate::jets::JetVec3::new(compose(c.x1), compose(c.x2), compose(c.x3));
        Ok(CurveSample::from_jets(out))
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, self.length())
    }

    fn space(&self) -> Space {
        self.base.space()
    }
}
