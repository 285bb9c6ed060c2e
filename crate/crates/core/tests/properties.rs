//! Property tests for the algebraic and geometric invariants.

use lorentz_geom::bertrand::{bertrand_derivatives, bertrand_point, BertrandConfig, BertrandCurve};
use lorentz_geom::curve_dsl::{
    parse_expression, random_unit_speed_curve, BinOp, Constant, Curve, CurveFamily, ExprAst, RandomCurve, UnaryOp,
};
use lorentz_geom::frenet::frenet;
use lorentz_geom::jets::{apply, Elementary, Jet3};
use lorentz_geom::lorentz::{det3, mink_dot};
use lorentz_geom::slope_surface::{generate_mesh, surface_partials, Cone, SurfaceConfig};
use lorentz_geom::spherical_frames::{center_derivative, evolute_jet, frame_at};
use lorentz_geom::{CausalCharacter, MinkVec3, Sphere};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vec3() -> impl Strategy<Value = MinkVec3> {
    prop::array::uniform3(-10.0f64..10.0).prop_map(MinkVec3::from_array)
}

fn sphere() -> impl Strategy<Value = Sphere> {
    prop_oneof![Just(Sphere::S12), Just(Sphere::H2)]
}

fn curve(sphere: Sphere, seed: u64, family: CurveFamily) -> RandomCurve {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unit_speed_curve(&mut rng, sphere, family).unwrap()
}

fn param(c: &RandomCurve, t: f64) -> f64 {
    let (lo, hi) = c.domain();
    lo + t * (hi - lo)
}

fn scale(x: MinkVec3, y: MinkVec3, z: MinkVec3) -> f64 {
    1.0 + x.euclid_norm() * y.euclid_norm() * z.euclid_norm().max(1.0) * x.euclid_norm().max(y.euclid_norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cross_product_identities(x in vec3(), y in vec3(), z in vec3()) {
        let xy = x.cross(y);
        let s = scale(x, y, z);
        prop_assert!((mink_dot(xy, z) - det3(x, y, z)).abs() <= 1e-12 * s);
        prop_assert_eq!(xy + y.cross(x), MinkVec3::ZERO);
        let lagrange = xy.cross(z) + mink_dot(x, z) * y - mink_dot(y, z) * x;
        prop_assert!(lagrange.max_abs() <= 1e-12 * s);
        prop_assert!(mink_dot(xy, x).abs() <= 1e-12 * s && mink_dot(xy, y).abs() <= 1e-12 * s);
        let norm = mink_dot(xy, xy) + mink_dot(x, x) * mink_dot(y, y) - mink_dot(x, y).powi(2);
        prop_assert!(norm.abs() <= 1e-12 * s * s);
    }

    #[test]
    fn causal_character_follows_sign(x in vec3()) {
        let q = mink_dot(x, x);
        let tol = 1e-12 * x.euclid_norm_sq();
        let want = if q > tol {
            CausalCharacter::SpaceLike
        } else if q < -tol {
            CausalCharacter::TimeLike
        } else {
            return Ok(());
        };
        prop_assert_eq!(x.causal_character(), want);
    }
}

/// Five-point central difference with `h = 1e-5`.
fn fd(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-5;
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn safe_point(f: Elementary, t: f64) -> f64 {
    match f {
        Elementary::Ln | Elementary::Sqrt => 0.1 + 4.0 * t,
        Elementary::Tan => -1.3 + 2.6 * t,
        _ => -4.0 + 8.0 * t,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn jets_match_finite_differences(i in 0..Elementary::ALL.len(), t in 0.0f64..1.0) {
        let f = Elementary::ALL[i];
        let x = safe_point(f, t);
        let jet = |y: f64| apply(f, Jet3::variable(y)).unwrap();
        let j = jet(x);
        prop_assert!(j.is_finite());
        for k in 0..3 {
            let lower = fd(|y| jet(y).coeffs()[k], x);
            prop_assert!(rel(j.coeffs()[k + 1], lower) < 1e-6, "{} at {x}: order {}", f.name(), k + 1);
        }
    }
}

#[test]
fn composed_jets_match_hand_derivatives() {
    type D = fn(f64) -> [f64; 4];
    let cases: [(&str, D); 10] = [
        ("v^3", |x| [x.powi(3), 3.0 * x * x, 6.0 * x, 6.0]),
        ("sin(v) * cos(v)", |x| {
            let (s, c) = ((2.0 * x).sin(), (2.0 * x).cos());
            [s / 2.0, c, -2.0 * s, -4.0 * c]
        }),
        ("exp(2*v)", |x| {
            let e = (2.0 * x).exp();
            [e, 2.0 * e, 4.0 * e, 8.0 * e]
        }),
        ("1 / v", |x| {
            [1.0 / x, -1.0 / (x * x), 2.0 / x.powi(3), -6.0 / x.powi(4)]
        }),
        ("ln(v^2)", |x| [(x * x).ln(), 2.0 / x, -2.0 / (x * x), 4.0 / x.powi(3)]),
        ("sqrt(v)", |x| {
            let r = x.sqrt();
            [r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r)]
        }),
        ("v * exp(v)", |x| {
            let e = x.exp();
            [x * e, (x + 1.0) * e, (x + 2.0) * e, (x + 3.0) * e]
        }),
        ("sinh(v) / cosh(v)", |x| {
            let t = x.tanh();
            let s2 = 1.0 - t * t;
            [t, s2, -2.0 * t * s2, s2 * (6.0 * t * t - 2.0)]
        }),
        ("cos(v^2)", |x| {
            let (s, c) = ((x * x).sin(), (x * x).cos());
            [
                c,
                -2.0 * x * s,
                -2.0 * s - 4.0 * x * x * c,
                -12.0 * x * c + 8.0 * x.powi(3) * s,
            ]
        }),
        ("(v + 1) / (v - 1)", |x| {
            let d = x - 1.0;
            [(x + 1.0) / d, -2.0 / (d * d), 4.0 / d.powi(3), -12.0 / d.powi(4)]
        }),
    ];
    for (text, exact) in cases {
        let ast = parse_expression(text).unwrap();
        for x in [0.3, 0.7, 1.9, 2.6] {
            let j = ast.eval_jet(Jet3::variable(x)).unwrap().coeffs();
            let want = exact(x);
            for k in 0..4 {
                let err = (j[k] - want[k]).abs() / want[k].abs().max(1.0);
                assert!(err < 1e-12, "{text} at {x}, order {k}: {} vs {}", j[k], want[k]);
            }
        }
    }
}

fn ast() -> impl Strategy<Value = ExprAst> {
    let leaf = prop_oneof![
        (0u32..100_000, 0i32..4).prop_map(|(m, e)| ExprAst::Number(f64::from(m) / 10f64.powi(e))),
        (1e-300f64..1e300).prop_map(ExprAst::Number),
        Just(ExprAst::Constant(Constant::Pi)),
        Just(ExprAst::Constant(Constant::E)),
        Just(ExprAst::Variable),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ExprAst::neg),
            (0..Elementary::ALL.len(), inner.clone()).prop_map(|(i, e)| ExprAst::func(Elementary::ALL[i], e)),
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Mul),
                    Just(BinOp::Div),
                    Just(BinOp::Pow)
                ],
                inner.clone(),
                inner
            )
                .prop_map(|(op, l, r)| ExprAst::binary(op, l, r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printed_ast_parses_back(e in ast()) {
        let text = e.to_string();
        let back = parse_expression(&text);
        prop_assert_eq!(back.as_ref(), Ok(&e), "{}", text);
    }

    #[test]
    fn parser_never_panics(text in "[-+*/^() .0-9a-z,$]{0,40}") {
        let _ = parse_expression(&text);
    }
}

#[test]
fn unary_minus_wraps_powers() {
    let e = parse_expression("-v^2").unwrap();
    let want = ExprAst::Unary(
        UnaryOp::Neg,
        Box::new(ExprAst::binary(BinOp::Pow, ExprAst::Variable, ExprAst::number(2.0))),
    );
    assert_eq!(e, want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sabban_frame_invariants(sp in sphere(), seed in any::<u64>(), t in 0.0f64..1.0) {
        let c = curve(sp, seed, CurveFamily::Generic);
        let f = frame_at(&c, param(&c, t)).unwrap();
        let sign = match sp {
            Sphere::S12 => 1.0,
            Sphere::H2 => -1.0,
        };
        prop_assert!((mink_dot(f.base, f.base) - sign).abs() < 1e-9);
        prop_assert!((mink_dot(f.t, f.t) - 1.0).abs() < 1e-9);
        prop_assert!((mink_dot(f.s, f.s) + sign).abs() < 1e-9);
        prop_assert!((f.s - f.base.cross(f.t)).max_abs() < 1e-9);
        prop_assert!((f.s.cross(f.t) - f.base).max_abs() < 1e-9);
        prop_assert!((det3(f.base, f.t, f.s) + sign).abs() < 1e-9);
        for (x, y) in [(f.base, f.t), (f.base, f.s), (f.t, f.s)] {
            prop_assert!(mink_dot(x, y).abs() < 1e-9);
        }
    }

    #[test]
    fn bertrand_frenet_invariants(
        sp in sphere(),
        seed in any::<u64>(),
        t in 0.0f64..1.0,
        a in prop_oneof![-3.0f64..-0.3, 0.3f64..3.0],
        xi in prop_oneof![-0.6f64..-0.05, 0.05f64..0.6],
    ) {
        let c = curve(sp, seed, CurveFamily::Generic);
        let v = param(&c, t);
        let cfg = BertrandConfig::new(a, xi, sp).unwrap();
        let kg = frame_at(&c, v).unwrap().kappa_g;
        prop_assume!(cfg.factor(kg).abs() > 1e-3);
        let s = BertrandCurve::frame_only(&c, cfg).unwrap().sample(v).unwrap();
        let app = frenet(&s).unwrap();
        let (tt, nn, bb) = match sp {
            Sphere::S12 => (1.0, 1.0, -1.0),
            Sphere::H2 => (-1.0, 1.0, 1.0),
        };
        let d = a * a / xi.cosh().powi(2);
        prop_assert!((mink_dot(s.d1, s.d1) - tt * d).abs() < 1e-9 * d.max(1.0));
        prop_assert!((mink_dot(app.t, app.t) - tt).abs() < 1e-9);
        prop_assert!((mink_dot(app.n, app.n) - nn).abs() < 1e-9);
        prop_assert!((mink_dot(app.b, app.b) - bb).abs() < 1e-9);
        let b = match sp {
            Sphere::S12 => app.n.cross(app.t),
            Sphere::H2 => app.t.cross(app.n),
        };
        prop_assert!((app.b - b).max_abs() < 1e-9);
        for (x, y) in [(app.t, app.n), (app.t, app.b), (app.n, app.b)] {
            prop_assert!(mink_dot(x, y).abs() < 1e-9);
        }
        prop_assert!(app.kappa >= 0.0);
        let gap = app.tau * app.tau - app.kappa * app.kappa;
        let expected = xi.cosh().powi(2) * (kg * kg - 1.0) / (a * a);
        prop_assume!(expected.abs() > 1e-6);
        // tau^2 - kappa^2 = cosh^2 xi (kappa_g^2 - 1) / a^2 on both spheres
        prop_assert_eq!(gap.signum(), expected.signum());
        let dd = mink_dot(app.darboux_vector(), app.darboux_vector());
        let want = match sp {
            Sphere::S12 => gap,
            Sphere::H2 => -gap,
        };
        prop_assert_eq!(dd.signum(), want.signum());
    }

    #[test]
    fn evolute_derivative_formula(sp in sphere(), seed in any::<u64>(), t in 0.0f64..1.0) {
        let c = curve(sp, seed, CurveFamily::Supercritical);
        let v = param(&c, t);
        let frame = frame_at(&c, v).unwrap();
        let jet = evolute_jet(&c, v).unwrap();
        let (plus, minus) = center_derivative(&frame).unwrap();
        let formula = match sp {
            Sphere::S12 => minus,
            Sphere::H2 => plus,
        };
        prop_assert!((jet.order(1) - formula).max_abs() < 1e-7, "{:?} vs {:?}", jet.order(1), formula);
    }

    #[test]
    fn cone_membership_and_timelike_normals(
        sp in sphere(),
        seed in any::<u64>(),
        t in 0.0f64..1.0,
        theta in prop_oneof![-2.0f64..-0.2, 0.2f64..2.0],
        u in 0.2f64..5.0,
    ) {
        let c = curve(sp, seed, CurveFamily::Generic);
        let cone = Cone::for_sphere(sp);
        let p = surface_partials(&c, theta, cone, u, param(&c, t)).unwrap();
        let want = match cone {
            Cone::SpaceLikeCone => u * u * theta.cosh().powi(2),
            Cone::TimeLikeCone => -u * u * theta.sinh().powi(2),
        };
        prop_assert!((mink_dot(p.x, p.x) - want).abs() < 1e-9 * want.abs().max(1.0));
        let (e, f, g) = p.first_fundamental_form();
        prop_assume!(g.abs() > 1e-8);
        prop_assert!(e > 0.0 && e * g - f * f > 0.0, "E = {e}, F = {f}, G = {g}");
        prop_assert_eq!(p.normal(u, 0.0).unwrap().causal_character(), CausalCharacter::TimeLike);
    }

    #[test]
    fn bertrand_positions_differentiate_to_d1(sp in sphere(), seed in any::<u64>(), t in 0.05f64..0.95) {
        let c = curve(sp, seed, CurveFamily::Generic);
        let cfg = BertrandConfig::new(1.3, 0.3, sp).unwrap();
        let v = param(&c, t);
        let h = 1e-4;
        let p = |x: f64| bertrand_point(&c, &cfg, x, 1e-12).unwrap();
        let fd = (p(v - 2.0 * h) - 8.0 * p(v - h) + 8.0 * p(v + h) - p(v + 2.0 * h)) / (12.0 * h);
        let d1 = bertrand_derivatives(&c, &cfg, v, 1e-12).unwrap().d1;
        prop_assert!((fd - d1).max_abs() < 1e-6, "{:?} vs {:?}", fd, d1);
    }
}

#[test]
fn mesh_generation_is_deterministic() {
    let c = curve(Sphere::H2, 99, CurveFamily::Generic);
    let cfg = SurfaceConfig {
        theta: 0.9,
        cone: Cone::TimeLikeCone,
        u_range: (0.8, 1.2),
        v_range: c.domain(),
        nu: 20,
        nv: 30,
    };
    let a = generate_mesh(&c, &cfg).unwrap();
    let b = generate_mesh(&c, &cfg).unwrap();
    assert_eq!(a.vertices.len(), 600);
    let bits = |m: &lorentz_geom::slope_surface::SurfaceMesh| -> Vec<u64> {
        m.vertices.iter().flat_map(|p| p.to_array()).map(f64::to_bits).collect()
    };
    assert_eq!(bits(&a), bits(&b));
}
