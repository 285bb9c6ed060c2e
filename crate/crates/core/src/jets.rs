//! Order-3 truncated Taylor arithmetic.
//!
//! A [`Jet3`] stores a value together with its first three derivatives with
//! respect to one variable (derivatives, not Taylor coefficients). Arithmetic
//! follows the Leibniz rule and elementary functions compose through Faà di
//! Bruno's formula, so evaluating an expression on `Jet3::variable(v0)` yields
//! exact derivatives at `v0` up to rounding.
//!
//! Jets are also used with a known-invalid top coefficient (see
//! [`Jet3::derivative`]); every operation here only reads coefficients of
//! order `<= k` to produce order `k`, so lower orders stay exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::lorentz::MinkVec3;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet3 {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Jet3 {
    pub const fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self { c0, c1, c2, c3 }
    }

    /// The independent variable at `v0`: `(v0, 1, 0, 0)`.
    pub const fn variable(v0: f64) -> Self {
        Self::new(v0, 1.0, 0.0, 0.0)
    }

    pub const fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0, 0.0)
    }

    pub fn coeffs(self) -> [f64; 4] {
        [self.c0, self.c1, self.c2, self.c3]
    }

    pub fn is_finite(self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    pub fn is_constant(self) -> bool {
        self.c1 == 0.0 && self.c2 == 0.0 && self.c3 == 0.0
    }

    /// Shifts the jet down one order: `(c1, c2, c3, 0)`. The top coefficient
    /// of the result is unknown and must not be read.
    pub fn derivative(self) -> Self {
        Self::new(self.c1, self.c2, self.c3, 0.0)
    }

    /// Composes an outer function, given by its value and first three
    /// derivatives at `self.c0`, with this jet.
    pub fn chain(self, g: [f64; 4]) -> Self {
        let (a1, a2, a3) = (self.c1, self.c2, self.c3);
        Self::new(
            g[0],
            g[1] * a1,
            g[2] * a1 * a1 + g[1] * a2,
            g[3] * a1 * a1 * a1 + 3.0 * g[2] * a1 * a2 + g[1] * a3,
        )
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.c0 * k, self.c1 * k, self.c2 * k, self.c3 * k)
    }

    pub fn recip(self) -> Result<Self> {
        if self.c0 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let x = self.c0;
        let r = 1.0 / x;
        Ok(self.chain([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }

    pub fn checked_div(self, rhs: Jet3) -> Result<Self> {
        Ok(self * rhs.recip()?)
    }

    /// Integer power by repeated multiplication; negative exponents go
    /// through [`Jet3::recip`].
    pub fn powi(self, n: i32) -> Result<Self> {
        let mut acc = Jet3::constant(1.0);
        for _ in 0..n.unsigned_abs() {
            acc = acc * self;
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    /// `self ^ exponent`. A constant integer exponent is exact; anything else
    /// is `exp(exponent * ln(self))` and needs a positive base.
    pub fn pow(self, exponent: Jet3) -> Result<Self> {
        let n = exponent.c0;
        if exponent.is_constant() && n.fract() == 0.0 && n.abs() <= 64.0 {
            return self.powi(n as i32);
        }
        let ln = apply(Elementary::Ln, self)?;
        apply(Elementary::Exp, exponent * ln)
    }

    pub fn sqrt(self) -> Result<Self> {
        apply(Elementary::Sqrt, self)
    }
}

impl fmt::Display for Jet3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}, {}, {}]", self.c0, self.c1, self.c2, self.c3)
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, b: Jet3) -> Jet3 {
        Jet3::new(self.c0 + b.c0, self.c1 + b.c1, self.c2 + b.c2, self.c3 + b.c3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, b: Jet3) -> Jet3 {
        Jet3::new(self.c0 - b.c0, self.c1 - b.c1, self.c2 - b.c2, self.c3 - b.c3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, b: Jet3) -> Jet3 {
        let a = self;
        Jet3::new(
            a.c0 * b.c0,
            a.c1 * b.c0 + a.c0 * b.c1,
            a.c2 * b.c0 + 2.0 * a.c1 * b.c1 + a.c0 * b.c2,
            a.c3 * b.c0 + 3.0 * a.c2 * b.c1 + 3.0 * a.c1 * b.c2 + a.c0 * b.c3,
        )
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, k: f64) -> Jet3 {
        self.scale(k)
    }
}

/// The elementary functions understood by the expression language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Tanh,
    Exp,
    Ln,
    Sqrt,
}

impl Elementary {
    pub const ALL: [Elementary; 9] = [
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tan,
        Elementary::Tanh,
        Elementary::Exp,
        Elementary::Ln,
        Elementary::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tan => "tan",
            Elementary::Tanh => "tanh",
            Elementary::Exp => "exp",
            Elementary::Ln => "ln",
            Elementary::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Elementary> {
        Elementary::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Plain `f64` evaluation with the same domain checks as [`apply`].
    pub fn eval(self, x: f64) -> Result<f64> {
        Ok(self.derivatives(x)?[0])
    }

    /// Value and first three derivatives of the function at `x`.
    fn derivatives(self, x: f64) -> Result<[f64; 4]> {
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(Error::DomainError {
                    func: self.name(),
                    at: x,
                })
            }
        };
        Ok(match self {
            Elementary::Sin => {
                let (s, c) = x.sin_cos();
                [s, c, -s, -c]
            }
            Elementary::Cos => {
                let (s, c) = x.sin_cos();
                [c, -s, -c, s]
            }
            Elementary::Sinh => {
                let (s, c) = (x.sinh(), x.cosh());
                [s, c, s, c]
            }
            Elementary::Cosh => {
                let (s, c) = (x.sinh(), x.cosh());
                [c, s, c, s]
            }
            Elementary::Tan => {
                domain(x.cos().abs() > f64::EPSILON)?;
                let t = x.tan();
                let d1 = 1.0 + t * t;
                [t, d1, 2.0 * t * d1, 2.0 * d1 * (1.0 + 3.0 * t * t)]
            }
            Elementary::Tanh => {
                let t = x.tanh();
                let d1 = 1.0 - t * t;
                [t, d1, -2.0 * t * d1, -2.0 * d1 * (1.0 - 3.0 * t * t)]
            }
            Elementary::Exp => {
                let e = x.exp();
                [e, e, e, e]
            }
            Elementary::Ln => {
                domain(x > 0.0)?;
                let r = 1.0 / x;
                [x.ln(), r, -r * r, 2.0 * r * r * r]
            }
            Elementary::Sqrt => {
                domain(x > 0.0)?;
                let s = x.sqrt();
                let r = 1.0 / x;
                [s, 0.5 / s, -0.25 * r / s, 0.375 * r * r / s]
            }
        })
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn jet_variable(v0: f64) -> Jet3 {
    Jet3::variable(v0)
}

pub fn jet_constant(c: f64) -> Jet3 {
    Jet3::constant(c)
}

/// Applies an elementary function to a jet via Faà di Bruno.
pub fn apply(func: Elementary, a: Jet3) -> Result<Jet3> {
    let g = func.derivatives(a.c0)?;
    let out = a.chain(g);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::DomainError {
            func: func.name(),
            at: a.c0,
        })
    }
}

/// A vector of jets: a curve point together with its first three
/// derivatives, arranged so that Lorentzian products can be differentiated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JetVec3 {
    pub x1: Jet3,
    pub x2: Jet3,
    pub x3: Jet3,
}

impl JetVec3 {
    pub const fn new(x1: Jet3, x2: Jet3, x3: Jet3) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn constant(v: MinkVec3) -> Self {
        Self::new(Jet3::constant(v.x1), Jet3::constant(v.x2), Jet3::constant(v.x3))
    }

    /// Builds the jet from a point and its three derivatives.
    pub fn from_derivatives(d: [MinkVec3; 4]) -> Self {
        let comp = |f: fn(MinkVec3) -> f64| Jet3::new(f(d[0]), f(d[1]), f(d[2]), f(d[3]));
        Self::new(comp(|v| v.x1), comp(|v| v.x2), comp(|v| v.x3))
    }

    /// The `k`-th derivative as a vector, `k <= 3`.
    pub fn order(self, k: usize) -> MinkVec3 {
        let pick = |j: Jet3| j.coeffs()[k];
        MinkVec3::new(pick(self.x1), pick(self.x2), pick(self.x3))
    }

    pub fn value(self) -> MinkVec3 {
        self.order(0)
    }

    pub fn derivative(self) -> Self {
        Self::new(self.x1.derivative(), self.x2.derivative(), self.x3.derivative())
    }

    pub fn dot(self, o: JetVec3) -> Jet3 {
        self.x1 * o.x1 + self.x2 * o.x2 - self.x3 * o.x3
    }

    pub fn cross(self, o: JetVec3) -> JetVec3 {
        JetVec3::new(
            self.x2 * o.x3 - self.x3 * o.x2,
            self.x3 * o.x1 - self.x1 * o.x3,
            self.x2 * o.x1 - self.x1 * o.x2,
        )
    }

    pub fn scale(self, k: Jet3) -> JetVec3 {
        JetVec3::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }

    pub fn scale_f64(self, k: f64) -> JetVec3 {
        JetVec3::new(self.x1.scale(k), self.x2.scale(k), self.x3.scale(k))
    }

    /// `self / pseudo_norm(self)` as a jet, for a vector that is not
    /// light-like at the expansion point.
    pub fn normalized(self) -> Result<JetVec3> {
        let q = self.dot(self);
        let q = if q.c0 < 0.0 { -q } else { q };
        Ok(self.scale(q.sqrt()?.recip()?))
    }
}

impl Add for JetVec3 {
    type Output = JetVec3;
    fn add(self, o: JetVec3) -> JetVec3 {
        JetVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for JetVec3 {
    type Output = JetVec3;
    fn sub(self, o: JetVec3) -> JetVec3 {
        JetVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

/// Determinant of three jet rows.
pub fn jet_det3(x: JetVec3, y: JetVec3, z: JetVec3) -> Jet3 {
    // <x × y, z> = det(x, y, z)
    let c = x.cross(y);
    c.x1 * z.x1 + c.x2 * z.x2 - c.x3 * z.x3
}
