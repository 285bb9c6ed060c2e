//! The built-in verification suite: the closed-form examples, the Bertrand,
//! helix, Darboux-indicatrix and evolute identities, the surface theorems and
//! the frame equations, run on the preset curves and on seeded random
//! curves. The output is deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bertrand::{
    bertrand_polyline, darboux_equals_evolute, kappa_g_spread, verify_bertrand, BertrandConfig, BertrandCurve,
};
use crate::curve_dsl::{
    domain_grid, preset, random_unit_speed_curve, uniform_grid, Curve, CurveFamily, CurveSpec, RandomCurve,
};
use crate::error::Result;
use crate::frenet::{frenet_ode_residual, tau_kappa_spread};
use crate::io_export::VerificationReport;
use crate::lorentz::{det3, mink_dot, MinkVec3, Sphere};
use crate::slope_surface::{
    constant_slope_residual, derivative_on_surface_check, integral_curve_bertrand_check, Cone, SurfaceConfig,
};
use crate::spherical_frames::{contact_function, curvature_center, evolute, frame_at, frame_ode_residual};

/// Seed of the random curves used by [`paper_suite`].
pub const SUITE_SEED: u64 = 0x5eed_b3e7;

/// Closed form of the space-like Bertrand curve of `example_336` at
/// `u = e, θ = 1.5`.
pub fn example_336_bertrand(v: f64) -> MinkVec3 {
    let xi = 1.5f64.tanh();
    std::f64::consts::E
        * 1.5f64.cosh()
        * MinkVec3::new(-xi.cosh() * (v.cos() - 1.0), xi.cosh() * v.sin(), xi.sinh() * v)
}

/// Closed form of the time-like Bertrand curve of `example_46` at
/// `u = e, θ = 1.5`.
pub fn example_46_bertrand(v: f64) -> MinkVec3 {
    let xi = 1.0 / 1.5f64.tanh();
    std::f64::consts::E
        * 1.5f64.sinh()
        * MinkVec3::new(xi.cosh() * (v.cosh() - 1.0), xi.sinh() * v, xi.cosh() * v.sinh())
}

fn record(report: &mut VerificationReport, name: &str, tol: f64, notes: &str, check: impl FnOnce() -> Result<f64>) {
    match check() {
        Ok(r) => report.push(name, r, tol, notes),
        Err(e) => report.push_error(name, tol, &e),
    }
}

fn max_over<T>(items: &[T], mut f: impl FnMut(&T) -> Result<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in items {
        worst = worst.max(f(x)?);
    }
    Ok(worst)
}

/// Seeded random generators, drawn once per suite run.
struct RandomCurves {
    generic: Vec<(Sphere, RandomCurve)>,
    supercritical: Vec<(Sphere, RandomCurve)>,
}

impl RandomCurves {
    fn draw(rng: &mut ChaCha8Rng, n_generic: usize, n_super: usize) -> Result<Self> {
        let mut generic = Vec::new();
        let mut supercritical = Vec::new();
        for sphere in [Sphere::S12, Sphere::H2] {
            for _ in 0..n_generic {
                generic.push((sphere, random_unit_speed_curve(rng, sphere, CurveFamily::Generic)?));
            }
            for _ in 0..n_super {
                supercritical.push((
                    sphere,
                    random_unit_speed_curve(rng, sphere, CurveFamily::Supercritical)?,
                ));
            }
        }
        Ok(Self { generic, supercritical })
    }
}

fn closed_form_error(name: &str, f: fn(f64) -> MinkVec3, hi: f64) -> Result<f64> {
    let c = preset(name, &[])?;
    let sphere = c.space().sphere().expect("example presets lie on a sphere");
    let cfg = BertrandConfig::from_surface(std::f64::consts::E, 1.5, sphere)?;
    let grid = uniform_grid(0.0, hi, 200);
    let pts = bertrand_polyline(&c, &cfg, &grid, 1e-10)?;
    Ok(grid
        .iter()
        .zip(&pts)
        .map(|(&v, &p)| (p - f(v)).max_abs())
        .fold(0.0, f64::max))
}

fn example_presets() -> Result<Vec<(&'static str, CurveSpec)>> {
    Ok(vec![
        ("example_336", preset("example_336", &[])?),
        ("example_46", preset("example_46", &[])?),
    ])
}

fn pseudo_circles() -> Result<Vec<(&'static str, CurveSpec)>> {
    let c = 2f64.sqrt();
    Ok(vec![
        ("pseudo_circle_s12", preset("pseudo_circle_s12", &[c])?),
        ("pseudo_circle_h2", preset("pseudo_circle_h2", &[c])?),
    ])
}

fn example_cfg(sphere: Sphere) -> Result<BertrandConfig> {
    BertrandConfig::from_surface(std::f64::consts::E, 1.5, sphere)
}

fn sphere_of<C: Curve>(c: &C) -> Sphere {
    c.space().sphere().expect("generators lie on a sphere")
}

fn random_cfg(sphere: Sphere) -> Result<BertrandConfig> {
    BertrandConfig::new(1.3, 0.3, sphere)
}

/// A `u` interval around 1 on which `|tanh ξ(u)·κ_g| ≤ 1/2` along the whole
/// generator, so `x_v = (cosh ξ − κ_g sinh ξ)·(scale)·t` stays away from
/// zero and the surface is regular.
fn regular_u_range<C: Curve>(c: &C, theta: f64, sphere: Sphere) -> Result<(f64, f64)> {
    let kmax = max_over(&domain_grid(c, 200), |&v| Ok(frame_at(c, v)?.kappa_g.abs()))?;
    let xi_max = (0.5 / kmax.max(1.0)).atanh();
    let k = match sphere {
        Sphere::S12 => theta.tanh(),
        Sphere::H2 => 1.0 / theta.tanh(),
    };
    let ln_u = (xi_max / k.abs()).min(2f64.ln());
    Ok(((-ln_u).exp(), ln_u.exp()))
}

/// Largest residual of the cross-product identities over random triples.
pub fn cross_identity_residual(rng: &mut impl Rng, n: usize) -> f64 {
    let mut draw = || {
        MinkVec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    };
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (x, y, z) = (draw(), draw(), draw());
        let xy = x.cross(y);
        let r = [
            (mink_dot(xy, z) - det3(x, y, z)).abs(),
            (xy + y.cross(x)).max_abs(),
            (xy.cross(z) - (-mink_dot(x, z) * y + mink_dot(y, z) * x)).max_abs(),
            mink_dot(xy, x).abs().max(mink_dot(xy, y).abs()),
            (mink_dot(xy, xy) - (-mink_dot(x, x) * mink_dot(y, y) + mink_dot(x, y).powi(2))).abs(),
        ];
        worst = r.into_iter().fold(worst, f64::max);
    }
    worst
}

/// Runs every check and returns the report.
pub fn paper_suite() -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let random = match RandomCurves::draw(&mut rng, 20, 10) {
        Ok(r) => r,
        Err(e) => {
            report.push_error("random_curves.draw", 0.0, &e);
            return report;
        }
    };
    let presets = example_presets().expect("presets parse");
    let circles = pseudo_circles().expect("presets parse");

    record(
        &mut report,
        "example_336.bertrand_closed_form",
        1e-8,
        "200 points on [0, 2pi]",
        || closed_form_error("example_336", example_336_bertrand, std::f64::consts::TAU),
    );
    record(
        &mut report,
        "example_46.bertrand_closed_form",
        1e-8,
        "200 points on [0, 2]",
        || closed_form_error("example_46", example_46_bertrand, 2.0),
    );

    for (name, c) in &presets {
        let cfg = example_cfg(sphere_of(c)).expect("valid constants");
        match verify_bertrand(c, &cfg, 100) {
            Ok(r) => {
                report.push(format!("{name}.bertrand_identity"), r.identity, 1e-7, "100 points");
                report.push(
                    format!("{name}.kappa_tau_relative"),
                    r.kappa_tau_rel,
                    1e-7,
                    "100 points",
                );
            }
            Err(e) => report.push_error(format!("{name}.bertrand_identity"), 1e-7, &e),
        }
    }
    for sphere in [Sphere::S12, Sphere::H2] {
        let curves: Vec<_> = random.generic.iter().filter(|(s, _)| *s == sphere).collect();
        let mut identity = 0.0f64;
        let mut rel = 0.0f64;
        let outcome = (|| -> Result<()> {
            let cfg = random_cfg(sphere)?;
            for (_, c) in &curves {
                let r = verify_bertrand(c, &cfg, 100)?;
                identity = identity.max(r.identity);
                rel = rel.max(r.kappa_tau_rel);
            }
            Ok(())
        })();
        let notes = format!("{} random curves, a = 1.3, xi = 0.3", curves.len());
        match outcome {
            Ok(()) => {
                report.push(
                    format!("random_{}.bertrand_identity", sphere.name()),
                    identity,
                    1e-7,
                    &notes,
                );
                report.push(
                    format!("random_{}.kappa_tau_relative", sphere.name()),
                    rel,
                    1e-7,
                    &notes,
                );
            }
            Err(e) => report.push_error(format!("random_{}.bertrand_identity", sphere.name()), 1e-7, &e),
        }
    }

    for (name, c) in &circles {
        record(
            &mut report,
            &format!("{name}.darboux_equals_evolute"),
            1e-7,
            "100 points",
            || darboux_equals_evolute(c, &random_cfg(sphere_of(c))?, 100),
        );
    }
    for sphere in [Sphere::S12, Sphere::H2] {
        let curves: Vec<_> = random.supercritical.iter().filter(|(s, _)| *s == sphere).collect();
        record(
            &mut report,
            &format!("random_{}.darboux_equals_evolute", sphere.name()),
            1e-7,
            &format!("{} random curves with kappa_g^2 > 1, 100 points each", curves.len()),
            || {
                let cfg = random_cfg(sphere)?;
                max_over(&curves, |(_, c)| darboux_equals_evolute(c, &cfg, 100))
            },
        );
    }

    for (name, c) in circles.iter().chain(&presets) {
        record(
            &mut report,
            &format!("{name}.helix_tau_kappa_spread"),
            1e-9,
            "constant kappa_g",
            || {
                let cfg = random_cfg(sphere_of(c))?;
                tau_kappa_spread(&BertrandCurve::frame_only(c.clone(), cfg)?, 100)
            },
        );
    }
    for sphere in [Sphere::S12, Sphere::H2] {
        let name = format!("random_{}.non_helix", sphere.name());
        let outcome = (|| -> Result<(f64, f64)> {
            let cfg = random_cfg(sphere)?;
            for (_, c) in random.generic.iter().filter(|(s, _)| *s == sphere) {
                let spread = kappa_g_spread(c, 100)?;
                if spread > 0.1 {
                    let tk = tau_kappa_spread(&BertrandCurve::frame_only(c.clone(), cfg)?, 100)?;
                    return Ok((spread, tk));
                }
            }
            Ok((0.0, 0.0))
        })();
        match outcome {
            Ok((kg, tk)) => report.push(
                name,
                1e-3 / tk,
                1.0,
                format!("1e-3 / tau_kappa_spread; kappa_g spread {kg:.3e}, tau/kappa spread {tk:.3e}"),
            ),
            Err(e) => report.push_error(name, 1.0, &e),
        }
    }

    for (name, c) in &presets {
        record(
            &mut report,
            &format!("{name}.derivative_on_surface"),
            1e-9,
            "u = e, theta = 1.5",
            || derivative_on_surface_check(c, std::f64::consts::E, 1.5, 100),
        );
        record(
            &mut report,
            &format!("{name}.integral_curve_bertrand"),
            1e-7,
            "u = e, theta = 1.5",
            || integral_curve_bertrand_check(c, std::f64::consts::E, 1.5, 100),
        );
    }

    for (name, c) in &presets {
        let (lo, hi) = c.domain();
        let cfg = SurfaceConfig {
            theta: 1.5,
            cone: Cone::for_sphere(sphere_of(c)),
            u_range: (0.5, 3.0),
            v_range: (lo, hi),
            nu: 50,
            nv: 50,
        };
        match constant_slope_residual(c, &cfg) {
            Ok(r) => report.push(
                format!("{name}.constant_slope"),
                r.residual,
                1e-8,
                format!("50x50 grid, <x,n>/(|x||n|) = {:.12}", r.q_mean),
            ),
            Err(e) => report.push_error(format!("{name}.constant_slope"), 1e-8, &e),
        }
    }
    for sphere in [Sphere::S12, Sphere::H2] {
        let curves: Vec<_> = random.generic.iter().filter(|(s, _)| *s == sphere).take(10).collect();
        let theta = match sphere {
            Sphere::S12 => 0.7,
            Sphere::H2 => 0.9,
        };
        record(
            &mut report,
            &format!("random_{}.constant_slope", sphere.name()),
            1e-8,
            &format!(
                "{} random generators, theta = {theta}, 50x50 grids on the regular u range",
                curves.len()
            ),
            || {
                max_over(&curves, |(_, c)| {
                    let cfg = SurfaceConfig {
                        theta,
                        cone: Cone::for_sphere(sphere),
                        u_range: regular_u_range(c, theta, sphere)?,
                        v_range: c.domain(),
                        nu: 50,
                        nv: 50,
                    };
                    Ok(constant_slope_residual(c, &cfg)?.residual)
                })
            },
        );
    }

    let all_generators: Vec<(String, Box<dyn Curve>)> = presets
        .iter()
        .chain(&circles)
        .map(|(n, c)| (n.to_string(), Box::new(c.clone()) as Box<dyn Curve>))
        .chain(
            random
                .generic
                .iter()
                .take(3)
                .chain(random.generic.iter().skip(20).take(3))
                .enumerate()
                .map(|(i, (s, c))| {
                    (
                        format!("random_{}_{i}", s.name()),
                        Box::new(c.clone()) as Box<dyn Curve>,
                    )
                }),
        )
        .collect();
    record(
        &mut report,
        "sabban_frame_equations",
        1e-7,
        "100 points per curve",
        || {
            max_over(&all_generators, |(_, c)| {
                let sphere = sphere_of(c);
                max_over(&domain_grid(c, 100), |&v| frame_ode_residual(c, sphere, v))
            })
        },
    );
    record(
        &mut report,
        "frenet_equations",
        1e-7,
        "Bertrand curves, 100 points per curve",
        || {
            max_over(&all_generators, |(_, c)| {
                let bc = BertrandCurve::frame_only(c, random_cfg(sphere_of(c))?)?;
                max_over(&domain_grid(c, 100), |&v| frenet_ode_residual(&bc, v))
            })
        },
    );
    record(
        &mut report,
        "cross_product_identities",
        1e-12,
        "1000 random triples",
        || Ok(cross_identity_residual(&mut rng, 1000)),
    );

    let sqrt2 = 2f64.sqrt();
    record(
        &mut report,
        "pseudo_circle_s12.evolute",
        1e-8,
        "constant (-1, 0, 0)",
        || {
            let c = &circles[0].1;
            max_over(&domain_grid(c, 100), |&v| {
                let fr = frame_at(c, v)?;
                let e = evolute(&fr)?;
                let u0 = curvature_center(&fr)?.u_plus;
                Ok((e - MinkVec3::new(-1.0, 0.0, 0.0))
                    .max_abs()
                    .max((mink_dot(fr.base, u0) - sqrt2).abs()))
            })
        },
    );
    record(
        &mut report,
        "pseudo_circle_h2.evolute",
        1e-8,
        "constant (0, 0, 1)",
        || {
            let c = &circles[1].1;
            max_over(&domain_grid(c, 100), |&v| {
                let fr = frame_at(c, v)?;
                let e = evolute(&fr)?;
                Ok((e - MinkVec3::new(0.0, 0.0, 1.0))
                    .max_abs()
                    .max((mink_dot(fr.base, e) + sqrt2).abs()))
            })
        },
    );
    record(
        &mut report,
        "random.three_point_contact",
        1e-8,
        "10 parameters on each kappa_g^2 > 1 curve; max of |psi|, |psi'|, |psi''|",
        || {
            max_over(&random.supercritical, |(_, c)| {
                max_over(&domain_grid(c, 10), |&v| {
                    let psi = contact_function(c, v)?;
                    Ok(psi.c0.abs().max(psi.c1.abs()).max(psi.c2.abs()))
                })
            })
        },
    );
    report
}
