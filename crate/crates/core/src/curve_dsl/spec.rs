use std::fmt;
use std::str::FromStr;

use crate::curve_dsl::expr::{parse_constant, parse_expression, ExprAst};
use crate::curve_dsl::{Curve, CurveSample};
use crate::error::{Error, Result};
use crate::jets::{Jet3, JetVec3};
use crate::lorentz::Sphere;

/// Where a curve is declared to live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    S12,
    H2,
    Free,
}

impl Space {
    pub fn sphere(self) -> Option<Sphere> {
        match self {
            Space::S12 => Some(Sphere::S12),
            Space::H2 => Some(Sphere::H2),
            Space::Free => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::S12 => "S12",
            Space::H2 => "H2",
            Space::Free => "Free",
        }
    }
}

impl From<Sphere> for Space {
    fn from(s: Sphere) -> Self {
        match s {
            Sphere::S12 => Space::S12,
            Sphere::H2 => Space::H2,
        }
    }
}

impl FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "S12" => Ok(Space::S12),
            "H2" => Ok(Space::H2),
            "Free" => Ok(Space::Free),
            other => Err(format!("unknown space `{other}` (expected S12, H2 or Free)")),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Points checked for evaluability when a spec is built.
const VALIDATION_POINTS: usize = 33;

/// A parametric curve given by three component expressions in `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    space: Space,
    components: [ExprAst; 3],
    domain: (f64, f64),
}

impl CurveSpec {
    /// Builds a spec and checks that it evaluates on a grid over the domain.
    pub fn new(space: Space, x: ExprAst, y: ExprAst, z: ExprAst, domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::BadParameter {
                name: "domain",
                value: hi - lo,
                reason: "need finite v_min < v_max",
            });
        }
        let spec = Self {
            space,
            components: [x, y, z],
            domain,
        };
        for i in 0..VALIDATION_POINTS {
            let v = lo + (hi - lo) * i as f64 / (VALIDATION_POINTS - 1) as f64;
            spec.sample(v).map_err(|e| e.at(v))?;
        }
        Ok(spec)
    }

    pub fn parse(space: Space, x: &str, y: &str, z: &str, domain: (f64, f64)) -> Result<Self> {
        Self::new(
            space,
            parse_expression(x)?,
            parse_expression(y)?,
            parse_expression(z)?,
            domain,
        )
    }

    pub fn with_domain(&self, domain: (f64, f64)) -> Result<Self> {
        let [x, y, z] = self.components.clone();
        Self::new(self.space, x, y, z, domain)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn components(&self) -> &[ExprAst; 3] {
        &self.components
    }

    /// Evaluates the components as jets at `v`.
    pub fn eval_jets(&self, v: f64) -> Result<JetVec3> {
        let t = Jet3::variable(v);
        let [x, y, z] = &self.components;
        Ok(JetVec3::new(x.eval_jet(t)?, y.eval_jet(t)?, z.eval_jet(t)?))
    }

    /// Renders the spec in the curve file format.
    pub fn to_file_string(&self) -> String {
        let [x, y, z] = &self.components;
        format!(
            "space = {}\nx = \"{x}\"\ny = \"{y}\"\nz = \"{z}\"\ndomain = {:?} {:?}\n",
            self.space, self.domain.0, self.domain.1
        )
    }
}

impl Curve for CurveSpec {
    fn sample(&self, v: f64) -> Result<CurveSample> {
        let j = self.eval_jets(v)?;
        let s = CurveSample::from_jets(j);
        if !s.is_finite() {
            return Err(Error::DomainError { func: "curve", at: v });
        }
        Ok(s)
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn space(&self) -> Space {
        self.space
    }
}

/// Evaluates the curve: position and first three derivatives at `v`.
pub fn eval_curve(spec: &CurveSpec, v: f64) -> Result<CurveSample> {
    let (lo, hi) = spec.domain;
    if !(lo..=hi).contains(&v) {
        return Err(Error::BadParameter {
            name: "v",
            value: v,
            reason: "outside the curve domain",
        });
    }
    spec.sample(v)
}

/// Parses the line-oriented curve file format:
///
/// ```text
/// # comment
/// space = S12
/// x = "sin(v)"
/// y = "cos(v)"
/// z = "0"
/// domain = 0 6.283185307179586
/// ```
pub fn parse_curve_file(text: &str) -> Result<CurveSpec> {
    let mut space = None;
    let mut comps: [Option<ExprAst>; 3] = [None, None, None];
    let mut domain = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |message: String| Error::CurveFileError { line: line_no, message };
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(err("expected `key = value`".into()));
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "space" => {
                if space.is_some() {
                    return Err(err("duplicate key `space`".into()));
                }
                space = Some(value.parse::<Space>().map_err(err)?);
            }
            "x" | "y" | "z" => {
                let slot = &mut comps[(key.as_bytes()[0] - b'x') as usize];
                if slot.is_some() {
                    return Err(err(format!("duplicate key `{key}`")));
                }
                let inner = value
                    .strip_prefix('"')
                    .and_then(|v| v.strip_suffix('"'))
                    .filter(|_| value.len() >= 2)
                    .ok_or_else(|| err(format!("value of `{key}` must be a quoted expression")))?;
                let e = parse_expression(inner).map_err(|e| err(format!("in `{key}`: {e}")))?;
                *slot = Some(e);
            }
            "domain" => {
                if domain.is_some() {
                    return Err(err("duplicate key `domain`".into()));
                }
                let parts: Vec<&str> = if value.contains(',') {
                    value.split(',').map(str::trim).collect()
                } else {
                    value.split_whitespace().collect()
                };
                if parts.len() != 2 {
                    return Err(err("`domain` needs exactly two numbers".into()));
                }
                let lo = parse_constant(parts[0]).map_err(|e| err(format!("in `domain`: {e}")))?;
                let hi = parse_constant(parts[1]).map_err(|e| err(format!("in `domain`: {e}")))?;
                domain = Some((lo, hi));
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let missing = |k: &str| Error::CurveFileError {
        line: last_line,
        message: format!("missing key `{k}`"),
    };
    let space = space.ok_or_else(|| missing("space"))?;
    let [x, y, z] = comps;
    let x = x.ok_or_else(|| missing("x"))?;
    let y = y.ok_or_else(|| missing("y"))?;
    let z = z.ok_or_else(|| missing("z"))?;
    let domain = domain.ok_or_else(|| missing("domain"))?;
    CurveSpec::new(space, x, y, z, domain)
}

/// Strips a `#` comment that is not inside a quoted value.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

pub const PRESET_NAMES: [&str; 4] = ["example_336", "example_46", "pseudo_circle_s12", "pseudo_circle_h2"];

/// The built-in curves.
///
/// * `example_336`: `(sin v, cos v, 0)` on S12, `v ∈ [0, 2π]`.
/// * `example_46`: `(sinh v, 0, cosh v)` on H2, `v ∈ [0, 2]`.
/// * `pseudo_circle_s12(c)`, `c > 1`: `(c, r sinh(v/r), r cosh(v/r))` on S12
///   with `r = √(c²−1)`, `v ∈ [-2, 2]`.
/// * `pseudo_circle_h2(c)`, `c > 1`: `(r cos(v/r), r sin(v/r), c)` on H2,
///   `v ∈ [-2, 2]`.
pub fn preset(name: &str, params: &[f64]) -> Result<CurveSpec> {
    let no_params = |spec: Result<CurveSpec>| {
        if params.is_empty() {
            spec
        } else {
            Err(Error::BadParameter {
                name: "params",
                value: params.len() as f64,
                reason: "this preset takes no parameters",
            })
        }
    };
    let circle_param = || -> Result<(f64, f64)> {
        match params {
            [c] if c.is_finite() && *c > 1.0 => Ok((*c, (c * c - 1.0).sqrt())),
            [c] => Err(Error::BadParameter {
                name: "c",
                value: *c,
                reason: "pseudo-circle parameter must exceed 1",
            }),
            _ => Err(Error::BadParameter {
                name: "params",
                value: params.len() as f64,
                reason: "pseudo-circle presets take exactly one parameter c",
            }),
        }
    };
    match name {
        "example_336" => no_params(CurveSpec::parse(
            Space::S12,
            "sin(v)",
            "cos(v)",
            "0",
            (0.0, std::f64::consts::TAU),
        )),
        "example_46" => no_params(CurveSpec::parse(Space::H2, "sinh(v)", "0", "cosh(v)", (0.0, 2.0))),
        "pseudo_circle_s12" => {
            let (c, r) = circle_param()?;
            CurveSpec::parse(
                Space::S12,
                &format!("{c:?}"),
                &format!("{r:?}*sinh(v/{r:?})"),
                &format!("{r:?}*cosh(v/{r:?})"),
                (-2.0, 2.0),
            )
        }
        "pseudo_circle_h2" => {
            let (c, r) = circle_param()?;
            CurveSpec::parse(
                Space::H2,
                &format!("{r:?}*cos(v/{r:?})"),
                &format!("{r:?}*sin(v/{r:?})"),
                &format!("{c:?}"),
                (-2.0, 2.0),
            )
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{mink_dot, MinkVec3};

    #[test]
    fn eval_curve_examples() {
        let s = eval_curve(&preset("example_336", &[]).unwrap(), 0.0).unwrap();
        assert_eq!(s.position, MinkVec3::new(0.0, 1.0, 0.0));
        assert_eq!(s.d1, MinkVec3::new(1.0, 0.0, 0.0));

        let s = eval_curve(&preset("example_46", &[]).unwrap(), 0.0).unwrap();
        assert_eq!(s.position, MinkVec3::new(0.0, 0.0, 1.0));
        assert_eq!(s.d1, MinkVec3::new(1.0, 0.0, 0.0));

        let pc = preset("pseudo_circle_s12", &[2f64.sqrt()]).unwrap();
        let s = eval_curve(&pc, 0.0).unwrap();
        assert!((s.position - MinkVec3::new(2f64.sqrt(), 0.0, 1.0)).max_abs() < 1e-15);
        assert!((s.d1 - MinkVec3::new(0.0, 1.0, 0.0)).max_abs() < 1e-15);
        assert!((mink_dot(s.position, s.position) - 1.0).abs() < 1e-15);
        assert!((mink_dot(s.d1, s.d1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eval_outside_domain() {
        let spec = preset("example_46", &[]).unwrap();
        assert!(matches!(
            eval_curve(&spec, 3.0),
            Err(Error::BadParameter { name: "v", .. })
        ));
    }

    #[test]
    fn preset_errors() {
        assert_eq!(
            preset("circle", &[]).unwrap_err(),
            Error::UnknownPreset("circle".into())
        );
        assert!(matches!(
            preset("pseudo_circle_s12", &[1.0]),
            Err(Error::BadParameter { name: "c", .. })
        ));
        assert!(matches!(
            preset("pseudo_circle_h2", &[0.5]),
            Err(Error::BadParameter { name: "c", .. })
        ));
        assert!(preset("pseudo_circle_h2", &[]).is_err());
        assert!(preset("example_336", &[2.0]).is_err());
    }

    #[test]
    fn spec_rejects_bad_domains() {
        assert!(CurveSpec::parse(Space::Free, "v", "0", "0", (1.0, 1.0)).is_err());
        assert!(CurveSpec::parse(Space::Free, "v", "0", "0", (2.0, 1.0)).is_err());
        let e = CurveSpec::parse(Space::Free, "ln(v)", "0", "0", (-1.0, 1.0)).unwrap_err();
        assert!(matches!(e.root(), Error::DomainError { func: "ln", .. }), "{e}");
    }

    #[test]
    fn curve_file_round_trip() {
        let text =
            "# doubled circle\nspace = S12\nx = \"sin(2*v)\"  # comment\ny = \"cos(2*v)\"\nz = \"0\"\ndomain = 0, pi\n";
        let spec = parse_curve_file(text).unwrap();
        assert_eq!(spec.space(), Space::S12);
        assert_eq!(spec.domain(), (0.0, std::f64::consts::PI));
        let again = parse_curve_file(&spec.to_file_string()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn curve_file_errors() {
        let cases = [
            ("space = S12\ncolor = \"red\"\n", 2, "unknown key"),
            ("space = S3\n", 1, "unknown space"),
            ("space = S12\nx = sin(v)\n", 2, "quoted"),
            ("space = S12\nx = \"sin(\"\n", 2, "in `x`"),
            ("space = S12\nspace = H2\n", 2, "duplicate"),
            ("space = S12\ndomain = 1\n", 2, "two numbers"),
            ("space = S12\nnonsense\n", 2, "key = value"),
            (
                "space = S12\nx = \"v\"\ny = \"0\"\nz = \"0\"\n",
                4,
                "missing key `domain`",
            ),
            ("x = \"\"\"\n", 1, "in `x`"),
        ];
        for (text, line, needle) in cases {
            match parse_curve_file(text) {
                Err(Error::CurveFileError { line: l, message }) => {
                    assert_eq!(l, line, "{text:?}: {message}");
                    assert!(message.contains(needle), "{text:?}: {message}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
