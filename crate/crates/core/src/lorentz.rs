//! Lorentzian linear algebra on R^3 with signature (+, +, -).
//!
//! The third coordinate is the time-like axis. The metric, the Lorentzian
//! cross product and the two unit "spheres" (de Sitter 2-space and the
//! hyperbolic plane) live here; everything else in the crate is built on
//! [`MinkVec3`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Relative tolerance used by [`causal_character`]: `<x,x>` is treated as zero
/// when it is within `CAUSAL_TOL * |x|_E^2` of it.
pub const CAUSAL_TOL: f64 = 1e-12;

/// A vector in Minkowski 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MinkVec3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl MinkVec3 {
    pub const ZERO: MinkVec3 = MinkVec3::new(0.0, 0.0, 0.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn dot(self, other: MinkVec3) -> f64 {
        mink_dot(self, other)
    }

    pub fn cross(self, other: MinkVec3) -> MinkVec3 {
        mink_cross(self, other)
    }

    pub fn pseudo_norm(self) -> f64 {
        pseudo_norm(self)
    }

    /// Ordinary Euclidean length, used for tolerances and distances.
    pub fn euclid_norm(self) -> f64 {
        self.euclid_norm_sq().sqrt()
    }

    pub fn euclid_norm_sq(self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn max_abs(self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn causal_character(self) -> CausalCharacter {
        causal_character(self)
    }

    /// `self / pseudo_norm(self)`; the caller guarantees the vector is not
    /// light-like.
    pub fn normalized(self) -> MinkVec3 {
        self / pseudo_norm(self)
    }
}

impl fmt::Display for MinkVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x1, self.x2, self.x3)
    }
}

impl Add for MinkVec3 {
    type Output = MinkVec3;
    fn add(self, o: MinkVec3) -> MinkVec3 {
        MinkVec3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for MinkVec3 {
    fn add_assign(&mut self, o: MinkVec3) {
        *self = *self + o;
    }
}

impl Sub for MinkVec3 {
    type Output = MinkVec3;
    fn sub(self, o: MinkVec3) -> MinkVec3 {
        MinkVec3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for MinkVec3 {
    type Output = MinkVec3;
    fn neg(self) -> MinkVec3 {
        MinkVec3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for MinkVec3 {
    type Output = MinkVec3;
    fn mul(self, k: f64) -> MinkVec3 {
        MinkVec3::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl Mul<MinkVec3> for f64 {
    type Output = MinkVec3;
    fn mul(self, v: MinkVec3) -> MinkVec3 {
        v * self
    }
}

impl Div<f64> for MinkVec3 {
    type Output = MinkVec3;
    fn div(self, k: f64) -> MinkVec3 {
        MinkVec3::new(self.x1 / k, self.x2 / k, self.x3 / k)
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    SpaceLike,
    TimeLike,
    LightLike,
}

impl CausalCharacter {
    pub fn name(self) -> &'static str {
        match self {
            CausalCharacter::SpaceLike => "space-like",
            CausalCharacter::TimeLike => "time-like",
            CausalCharacter::LightLike => "light-like",
        }
    }
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The two unit pseudo-spheres: de Sitter 2-space `<x,x> = 1` and the
/// hyperbolic plane `<x,x> = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sphere {
    S12,
    H2,
}

impl Sphere {
    /// The value of `<x,x>` on the sphere.
    pub fn radius_sq(self) -> f64 {
        match self {
            Sphere::S12 => 1.0,
            Sphere::H2 => -1.0,
        }
    }

    pub fn contains(self, x: MinkVec3, tol: f64) -> bool {
        match self {
            Sphere::S12 => on_de_sitter(x, tol),
            Sphere::H2 => on_hyperbolic(x, tol),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sphere::S12 => "S12",
            Sphere::H2 => "H2",
        }
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `<x, y> = x1 y1 + x2 y2 - x3 y3`.
pub fn mink_dot(x: MinkVec3, y: MinkVec3) -> f64 {
    x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3
}

pub fn pseudo_norm(x: MinkVec3) -> f64 {
    mink_dot(x, x).abs().sqrt()
}

/// Classifies `x` against the relative tolerance [`CAUSAL_TOL`]. The zero
/// vector is space-like.
pub fn causal_character(x: MinkVec3) -> CausalCharacter {
    let q = mink_dot(x, x);
    let scale = CAUSAL_TOL * x.euclid_norm_sq();
    if x == MinkVec3::ZERO || q > scale {
        CausalCharacter::SpaceLike
    } else if q < -scale {
        CausalCharacter::TimeLike
    } else {
        CausalCharacter::LightLike
    }
}

/// The Lorentzian cross product. `<x × y, z> = det(x, y, z)`.
pub fn mink_cross(x: MinkVec3, y: MinkVec3) -> MinkVec3 {
    MinkVec3::new(
        x.x2 * y.x3 - x.x3 * y.x2,
        x.x3 * y.x1 - x.x1 * y.x3,
        x.x2 * y.x1 - x.x1 * y.x2,
    )
}

/// Determinant of the 3×3 matrix with rows `x`, `y`, `z`.
pub fn det3(x: MinkVec3, y: MinkVec3, z: MinkVec3) -> f64 {
    x.x1 * (y.x2 * z.x3 - y.x3 * z.x2) - x.x2 * (y.x1 * z.x3 - y.x3 * z.x1) + x.x3 * (y.x1 * z.x2 - y.x2 * z.x1)
}

pub fn on_de_sitter(x: MinkVec3, tol: f64) -> bool {
    (mink_dot(x, x) - 1.0).abs() <= tol
}

pub fn on_hyperbolic(x: MinkVec3, tol: f64) -> bool {
    (mink_dot(x, x) + 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: f64, b: f64, c: f64) -> MinkVec3 {
        MinkVec3::new(a, b, c)
    }

    #[test]
    fn metric_examples() {
        assert_eq!(mink_dot(v(0., 0., 1.), v(0., 0., 1.)), -1.0);
        assert_eq!(mink_dot(v(1., 0., 0.), v(0., 1., 0.)), 0.0);
        assert_eq!(mink_dot(v(1., 2., 3.), v(4., 5., 6.)), -4.0);
    }

    #[test]
    fn pseudo_norm_examples() {
        assert_eq!(pseudo_norm(MinkVec3::ZERO), 0.0);
        assert_eq!(pseudo_norm(v(0., 0., 2.)), 2.0);
        assert_eq!(pseudo_norm(v(1., 1., 1.)), 1.0);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(v(1., 0., 0.)), CausalCharacter::SpaceLike);
        assert_eq!(causal_character(v(0., 0., 1.)), CausalCharacter::TimeLike);
        assert_eq!(causal_character(v(1., 0., 1.)), CausalCharacter::LightLike);
        assert_eq!(causal_character(MinkVec3::ZERO), CausalCharacter::SpaceLike);
        // inside the relative tolerance band
        assert_eq!(causal_character(v(1.0 + 1e-14, 0., 1.)), CausalCharacter::LightLike);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(mink_cross(v(1., 0., 0.), v(0., 1., 0.)), v(0., 0., -1.));
        let x = v(0.3, -1.7, 2.2);
        assert_eq!(mink_cross(x, x), MinkVec3::ZERO);
        for i in 0..20 {
            let t = -3.0 + 0.3 * i as f64;
            let f = v(t.sin(), t.cos(), 0.0);
            let fp = v(t.cos(), -t.sin(), 0.0);
            let c = mink_cross(f, fp);
            assert!((c - v(0., 0., 1.)).max_abs() < 1e-15, "{c}");
        }
    }

    #[test]
    fn sphere_membership() {
        assert!(on_de_sitter(v(1., 0., 0.), 1e-12));
        assert!(on_hyperbolic(v(0., 0., 1.), 1e-12));
        assert!(on_de_sitter(v(2f64.sqrt(), 0., 1.), 1e-12));
        assert!(!on_hyperbolic(v(1., 0., 0.), 1e-12));
        assert!(Sphere::H2.contains(v(0., 0., -1.), 1e-12));
    }

    #[test]
    fn det_matches_triple_product() {
        let (x, y, z) = (v(1., 2., 3.), v(-1., 0.5, 2.), v(0.25, -4., 1.));
        assert!((mink_dot(mink_cross(x, y), z) - det3(x, y, z)).abs() < 1e-13);
    }
}
