use std::io::Write;

use lorentz_geom::bertrand::{
    bertrand_point, bertrand_polyline, darboux_equals_evolute, helix_correspondence, verify_bertrand, BertrandConfig,
    BertrandCurve,
};
use lorentz_geom::curve_dsl::{domain_grid, parse_constant, parse_curve_file, preset, Curve, CurveSpec};
use lorentz_geom::frenet::{frenet, frenet_ode_residual};
use lorentz_geom::io_export::{write_csv, write_obj, write_report, CsvRow, VerificationReport};
use lorentz_geom::slope_surface::{
    constant_slope_residual, derivative_on_surface_check, generate_mesh, integral_curve_bertrand_check, Cone,
    SurfaceConfig,
};
use lorentz_geom::spherical_frames::{self as sf, contact_function, frame_at, frame_ode_residual};
use lorentz_geom::suite::paper_suite;
use lorentz_geom::{Error, Sphere};

use crate::{BertrandArgs, BertrandConstants, CurveInput, EvoluteArgs, FrameArgs, OutputArg, SurfaceArgs, VerifyArgs};

pub enum Outcome {
    Success,
    ChecksFailed,
}

type CliResult<T> = Result<T, String>;

fn lib(e: Error) -> String {
    e.to_string()
}

fn number(flag: &str, text: &str) -> CliResult<f64> {
    parse_constant(text).map_err(|e| format!("invalid --{flag} `{text}`: {e}"))
}

/// `a:b`, or a single value meaning `a:a`.
fn range(flag: &str, text: &str) -> CliResult<(f64, f64)> {
    match text.split_once(':') {
        Some((a, b)) => Ok((number(flag, a)?, number(flag, b)?)),
        None => {
            let x = number(flag, text)?;
            Ok((x, x))
        }
    }
}

fn load_curve(input: &CurveInput, v: Option<&str>) -> CliResult<CurveSpec> {
    let spec = match (&input.preset, &input.curve) {
        (Some(name), None) => {
            let params = input
                .params
                .iter()
                .map(|p| number("param", p))
                .collect::<CliResult<Vec<_>>>()?;
            preset(name, &params).map_err(lib)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_curve_file(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        _ => return Err("exactly one of --preset or --curve is required".into()),
    };
    match v {
        Some(text) => spec.with_domain(range("v", text)?).map_err(lib),
        None => Ok(spec),
    }
}

fn sphere_of(spec: &CurveSpec) -> CliResult<Sphere> {
    spec.space()
        .sphere()
        .ok_or_else(|| "this command needs a curve on S12 or H2".to_string())
}

fn samples(n: usize) -> CliResult<usize> {
    if n < 2 {
        return Err(format!("invalid --samples {n}: need at least 2"));
    }
    Ok(n)
}

fn emit(output: &OutputArg, bytes: &[u8]) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| e.to_string())
        }
    }
}

fn csv(extra: &[&str], rows: &[CsvRow]) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(extra, rows, &mut buf).map_err(lib)?;
    Ok(buf)
}

pub fn frame(args: FrameArgs) -> CliResult<Outcome> {
    let curve = load_curve(&args.input, args.v.as_deref())?;
    let grid = domain_grid(&curve, samples(args.samples)?);
    let bytes = if curve.space().sphere().is_some() {
        let rows = grid
            .iter()
            .map(|&v| {
                let f = frame_at(&curve, v)?;
                Ok(CsvRow::with_extra(
                    v,
                    f.base,
                    vec![
                        f.t.x1,
                        f.t.x2,
                        f.t.x3,
                        f.s.x1,
                        f.s.x2,
                        f.s.x3,
                        f.kappa_g,
                        f.kappa_g_prime,
                    ],
                ))
            })
            .collect::<Result<Vec<_>, Error>>()
            .map_err(lib)?;
        csv(&["t1", "t2", "t3", "s1", "s2", "s3", "kappa_g", "kappa_g_prime"], &rows)?
    } else {
        let rows = grid
            .iter()
            .map(|&v| {
                let s = curve.sample(v)?;
                let a = frenet(&s).map_err(|e| e.at(v))?;
                Ok(CsvRow::with_extra(
                    v,
                    s.position,
                    vec![
                        a.t.x1, a.t.x2, a.t.x3, a.n.x1, a.n.x2, a.n.x3, a.b.x1, a.b.x2, a.b.x3, a.kappa, a.tau,
                    ],
                ))
            })
            .collect::<Result<Vec<_>, Error>>()
            .map_err(lib)?;
        csv(
            &["T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3", "kappa", "tau"],
            &rows,
        )?
    };
    emit(&args.output, &bytes)?;
    Ok(Outcome::Success)
}

/// The Bertrand constants and, when they came from a surface, `(u, θ)`.
fn bertrand_config(c: &BertrandConstants, sphere: Sphere) -> CliResult<(BertrandConfig, Option<(f64, f64)>)> {
    match (&c.a, &c.xi, &c.u, &c.theta) {
        (Some(a), Some(xi), None, None) => {
            let cfg = BertrandConfig::new(number("a", a)?, number("xi", xi)?, sphere).map_err(lib)?;
            Ok((cfg, None))
        }
        (None, None, Some(u), Some(theta)) => {
            let (u, theta) = (number("u", u)?, number("theta", theta)?);
            let cfg = BertrandConfig::from_surface(u, theta, sphere).map_err(lib)?;
            Ok((cfg, Some((u, theta))))
        }
        _ => Err("give either --a and --xi, or --u and --theta".into()),
    }
}

pub fn bertrand(args: BertrandArgs) -> CliResult<Outcome> {
    let curve = load_curve(&args.input, args.v.as_deref())?;
    let sphere = sphere_of(&curve)?;
    let (cfg, _) = bertrand_config(&args.constants, sphere)?;
    let quad_tol = number("quad-tol", &args.quad_tol)?;
    let grid = domain_grid(&curve, samples(args.samples)?);
    let points = bertrand_polyline(&curve, &cfg, &grid, quad_tol).map_err(lib)?;
    let bc = BertrandCurve::frame_only(&curve, cfg).map_err(lib)?;
    let rows = grid
        .iter()
        .zip(points)
        .map(|(&v, p)| {
            let a = frenet(&bc.sample(v)?).map_err(|e| e.at(v))?;
            Ok(CsvRow::with_extra(v, p, vec![a.kappa, a.tau]))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(lib)?;
    emit(&args.output, &csv(&["kappa", "tau"], &rows)?)?;
    Ok(Outcome::Success)
}

pub fn surface(args: SurfaceArgs) -> CliResult<Outcome> {
    let curve = load_curve(&args.input, args.v.as_deref())?;
    let sphere = sphere_of(&curve)?;
    let cfg = SurfaceConfig {
        theta: number("theta", &args.theta)?,
        cone: Cone::for_sphere(sphere),
        u_range: range("u", &args.u)?,
        v_range: curve.domain(),
        nu: args.nu,
        nv: args.nv,
    };
    let mesh = generate_mesh(&curve, &cfg).map_err(lib)?;
    let mut buf = Vec::new();
    write_obj(&mesh, &mut buf).map_err(lib)?;
    emit(&args.output, &buf)?;
    Ok(Outcome::Success)
}

pub fn evolute(args: EvoluteArgs) -> CliResult<Outcome> {
    let curve = load_curve(&args.input, args.v.as_deref())?;
    sphere_of(&curve)?;
    let rows = domain_grid(&curve, samples(args.samples)?)
        .iter()
        .map(|&v| {
            let f = frame_at(&curve, v)?;
            let e = sf::evolute(&f).map_err(|e| e.at(v))?;
            Ok(CsvRow::with_extra(v, e, vec![f.kappa_g]))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(lib)?;
    emit(&args.output, &csv(&["kappa_g"], &rows)?)?;
    Ok(Outcome::Success)
}

fn max_over(grid: &[f64], mut f: impl FnMut(f64) -> lorentz_geom::Result<f64>) -> lorentz_geom::Result<f64> {
    let mut worst = 0.0f64;
    for &v in grid {
        worst = worst.max(f(v)?);
    }
    Ok(worst)
}

fn record(report: &mut VerificationReport, name: &str, tol: f64, notes: &str, r: lorentz_geom::Result<f64>) {
    match r {
        Ok(x) => report.push(name, x, tol, notes),
        Err(e) => report.push_error(name, tol, &e),
    }
}

/// `[u·e^-δ, u·e^δ]` with `δ ≤ ln 1.25` halved until `1 − tanh ξ·κ_g` keeps
/// its sign over the window, so the patch avoids the singular curve.
fn regular_u_window(curve: &CurveSpec, u: f64, theta: f64, sphere: Sphere, grid: &[f64]) -> CliResult<(f64, f64)> {
    let kappas = grid
        .iter()
        .map(|&v| frame_at(curve, v).map(|f| f.kappa_g))
        .collect::<Result<Vec<_>, Error>>()
        .map_err(lib)?;
    let signs = |u: f64| -> CliResult<Vec<f64>> {
        let cfg = BertrandConfig::from_surface(u, theta, sphere).map_err(lib)?;
        Ok(kappas.iter().map(|&k| cfg.factor(k).signum()).collect())
    };
    let centre = signs(u)?;
    let mut delta = 1.25f64.ln();
    for _ in 0..30 {
        let (lo, hi) = (u * (-delta).exp(), u * delta.exp());
        if signs(lo)? == centre && signs(hi)? == centre {
            return Ok((lo, hi));
        }
        delta /= 2.0;
    }
    Err(format!("surface is singular at u = {u}: 1 - tanh(xi) kappa_g vanishes"))
}

fn curve_report(args: &VerifyArgs) -> CliResult<VerificationReport> {
    let curve = load_curve(&args.input, None)?;
    let sphere = sphere_of(&curve)?;
    let tol = number("tol", &args.tol)?;
    let quad_tol = number("quad-tol", &args.quad_tol)?;
    let n = samples(args.samples)?;
    let c = &args.constants;
    let (cfg, surface) = if c.a.is_none() && c.u.is_none() && c.theta.is_none() {
        let (u, theta) = (std::f64::consts::E, 1.5);
        (
            BertrandConfig::from_surface(u, theta, sphere).map_err(lib)?,
            Some((u, theta)),
        )
    } else {
        bertrand_config(c, sphere)?
    };
    let grid = domain_grid(&curve, n);
    let mut report = VerificationReport::new();
    let notes = format!("{n} points");

    record(
        &mut report,
        "sabban_frame_equations",
        tol,
        &notes,
        max_over(&grid, |v| frame_ode_residual(&curve, sphere, v)),
    );
    match verify_bertrand(&curve, &cfg, n) {
        Ok(r) => {
            report.push("bertrand_identity", r.identity, tol, &notes);
            report.push("kappa_tau_relative", r.kappa_tau_rel, tol, &notes);
        }
        Err(e) => report.push_error("bertrand_identity", tol, &e),
    }
    record(
        &mut report,
        "frenet_equations",
        tol,
        &notes,
        BertrandCurve::frame_only(&curve, cfg).and_then(|bc| max_over(&grid, |v| frenet_ode_residual(&bc, v))),
    );
    match helix_correspondence(&curve, &cfg, n, 1e-9) {
        Ok((pseudo, helix)) => report.push(
            "helix_correspondence",
            if pseudo == helix { 0.0 } else { 1.0 },
            0.0,
            format!("pseudo-circle {pseudo}, helix {helix}"),
        ),
        Err(e) => report.push_error("helix_correspondence", 0.0, &e),
    }
    let supercritical = grid
        .iter()
        .all(|&v| frame_at(&curve, v).is_ok_and(|f| f.kappa_g * f.kappa_g - 1.0 > 1e-9));
    if supercritical {
        record(
            &mut report,
            "darboux_equals_evolute",
            tol,
            &notes,
            darboux_equals_evolute(&curve, &cfg, n),
        );
        record(
            &mut report,
            "three_point_contact",
            tol,
            &notes,
            max_over(&grid, |v| {
                let psi = contact_function(&curve, v)?;
                Ok(psi.c0.abs().max(psi.c1.abs()).max(psi.c2.abs()))
            }),
        );
    }
    if let Some((u, theta)) = surface {
        let at = format!("u = {u}, theta = {theta}");
        record(
            &mut report,
            "derivative_on_surface",
            tol,
            &at,
            derivative_on_surface_check(&curve, u, theta, n),
        );
        record(
            &mut report,
            "integral_curve_bertrand",
            tol,
            &at,
            integral_curve_bertrand_check(&curve, u, theta, n),
        );
        let cfg = SurfaceConfig {
            theta,
            cone: Cone::for_sphere(sphere),
            u_range: regular_u_window(&curve, u, theta, sphere, &grid)?,
            v_range: curve.domain(),
            nu: 50,
            nv: 50,
        };
        let (u0, u1) = cfg.u_range;
        match constant_slope_residual(&curve, &cfg) {
            Ok(r) => report.push(
                "constant_slope",
                r.residual,
                tol,
                format!(
                    "50x50 grid on u in [{u0:.6}, {u1:.6}], <x,n>/(|x||n|) = {:.12}",
                    r.q_mean
                ),
            ),
            Err(e) => report.push_error("constant_slope", tol, &e),
        }
    }
    record(
        &mut report,
        "bertrand_quadrature",
        tol,
        "incremental polyline vs direct quadrature at the domain end",
        (|| {
            let poly = bertrand_polyline(&curve, &cfg, &grid, quad_tol)?;
            let end = *grid.last().unwrap_or(&0.0);
            let direct = bertrand_point(&curve, &cfg, end, quad_tol)?;
            Ok((poly[poly.len() - 1] - direct).max_abs())
        })(),
    );
    Ok(report)
}

pub fn verify(args: VerifyArgs) -> CliResult<Outcome> {
    let report = match args.suite.as_deref() {
        Some("paper") => paper_suite(),
        Some(other) => return Err(format!("unknown suite `{other}`; available: paper")),
        None => curve_report(&args)?,
    };
    let mut buf = Vec::new();
    write_report(&report, &mut buf).map_err(lib)?;
    emit(&args.output, &buf)?;
    Ok(if report.all_passed() {
        Outcome::Success
    } else {
        Outcome::ChecksFailed
    })
}
