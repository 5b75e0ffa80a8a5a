mod common;

use approx::assert_abs_diff_eq;
use cruled::csurface::{make_c_surface, CSurface};
use cruled::curve::linspace;
use cruled::error::Error;
use cruled::frame::{Convention, CurveKind};
use cruled::oracle::{
    distribution_parameter, oracle_curve_curvatures, oracle_forms, striction_point,
    RuledSurfaceDef, DEFAULT_FD_STEP,
};
use nalgebra::Vector3;
use rand::Rng;

fn fd_forms(surface: &CSurface, s: f64, v: f64, h: f64) -> cruled::oracle::OracleForms {
    let phi = |x: f64, y: f64| surface.point_near(x, y, s);
    oracle_forms(&phi, s, v, h).unwrap()
}

#[test]
fn planar_chain() {
    let mut rng = common::rng(31);
    for _ in 0..10 {
        let curve = common::random_planar(&mut rng);
        let surface = make_c_surface(curve, Convention::Smooth, (-1.0, 1.0)).unwrap();
        assert_eq!(surface.classify(32, 1e-9).unwrap().kind, CurveKind::Planar);
        for s in surface.valid_samples(24) {
            let app = surface.apparatus(s).unwrap();
            assert!(app.sin_theta.abs() <= 1e-9);
            assert!(surface.distribution_closed(s).unwrap().abs() <= 1e-9);
            for v in [-1.0, -0.3, 0.4, 1.0] {
                let b = surface.forms_closed(s, v).unwrap();
                assert!(
                    b.k.abs() <= 1e-8 && b.h.abs() <= 1e-8,
                    "K = {}, H = {}",
                    b.k,
                    b.h
                );
                // the surface is the plane of the curve, so the oracle sees it flat too
                let o = fd_forms(&surface, s, v, DEFAULT_FD_STEP).forms;
                assert!(o.k.abs() <= 1e-5 && o.h.abs() <= 1e-5);
            }
        }
    }
}

#[test]
fn helix_chain() {
    let mut rng = common::rng(32);
    for _ in 0..25 {
        let (_, _, curve) = common::random_helix(&mut rng);
        let surface = make_c_surface(curve, Convention::Smooth, (-1.0, 1.0)).unwrap();
        for s in surface.valid_samples(24) {
            assert!(surface.apparatus(s).unwrap().g.abs() <= 1e-9);
            let line = surface.striction_line(s).unwrap();
            assert!(line.v_star.abs() <= 1e-9);
            assert!(
                (line.point - cruled::curve::CurveEval::point(surface.base(), s).unwrap()).norm()
                    <= 1e-9
            );
            let a = surface.striction_curvatures(s).unwrap().as_array();
            let b = surface.base_curvatures(s).unwrap().as_array();
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn base_curve_flags_hold_for_every_surface() {
    let mut rng = common::rng(33);
    let mut surfaces = vec![
        common::random_general(&mut rng),
        common::random_general(&mut rng),
    ];
    surfaces.push(
        make_c_surface(
            common::random_planar(&mut rng),
            Convention::Strict,
            (-1.0, 1.0),
        )
        .unwrap(),
    );
    surfaces.push(
        make_c_surface(
            common::random_helix(&mut rng).2,
            Convention::Strict,
            (-1.0, 1.0),
        )
        .unwrap(),
    );
    for surface in surfaces {
        let report = surface.corollary_predicates(32, 1e-8).unwrap();
        assert!(report.base_geodesic && report.base_principal && !report.base_asymptotic);
        assert!(report.all_hold(), "{:?}", report.checks);
    }
}

#[test]
fn closed_form_identities_and_normal() {
    let mut rng = common::rng(34);
    for _ in 0..5 {
        let surface = common::random_general(&mut rng);
        for _ in 0..20 {
            let s = common::interior_s(&mut rng, &surface, 0.01);
            let v = rng.random_range(-1.0..=1.0);
            let app = surface.apparatus(s).unwrap();
            let b = surface.forms_closed(s, v).unwrap();
            let d = v * v * app.f * app.f + (app.sin_theta + v * app.g).powi(2);
            assert_abs_diff_eq!(b.metric_det(), d, epsilon = 1e-10 * d.max(1.0));
            assert_abs_diff_eq!(
                b.k,
                b.gaussian_from_coefficients(),
                epsilon = 1e-10 * b.k.abs().max(1.0)
            );
            assert_abs_diff_eq!(
                b.h,
                b.mean_from_coefficients(),
                epsilon = 1e-10 * b.h.abs().max(1.0)
            );
            assert_abs_diff_eq!(b.normal.norm(), 1.0, epsilon = 1e-10);

            let phi = |x: f64, y: f64| surface.point_near(x, y, s);
            let h = DEFAULT_FD_STEP;
            let ps = (phi(s + h, v).unwrap() - phi(s - h, v).unwrap()) / (2.0 * h);
            let pv = (phi(s, v + h).unwrap() - phi(s, v - h).unwrap()) / (2.0 * h);
            assert!(b.normal.dot(&ps).abs() <= 1e-6 && b.normal.dot(&pv).abs() <= 1e-6);

            let n0 = surface.forms_closed(s, 0.0).unwrap().normal;
            assert_abs_diff_eq!(n0, -app.sin_theta.signum() * app.n, epsilon = 1e-12);
        }
    }
}

#[test]
fn halving_the_step_stays_within_the_error_estimate() {
    let mut rng = common::rng(35);
    let surface = common::random_general(&mut rng);
    for _ in 0..10 {
        let s = common::interior_s(&mut rng, &surface, 0.01);
        let v = rng.random_range(-1.0..=1.0);
        let coarse = fd_forms(&surface, s, v, DEFAULT_FD_STEP);
        let fine = fd_forms(&surface, s, v, DEFAULT_FD_STEP / 2.0);
        for i in 0..8 {
            let change = (coarse.forms.entries()[i] - fine.forms.entries()[i]).abs();
            assert!(
                change <= 4.0 * fine.error_estimate[i],
                "entry {i}: {change} vs {}",
                fine.error_estimate[i]
            );
        }
    }
}

#[test]
fn oracle_normals_are_orthogonal() {
    let mut rng = common::rng(36);
    let surface = common::random_general(&mut rng);
    for _ in 0..20 {
        let s = common::interior_s(&mut rng, &surface, 0.01);
        let v = rng.random_range(-1.0..=1.0);
        let o = fd_forms(&surface, s, v, DEFAULT_FD_STEP).forms;
        let phi = |x: f64, y: f64| surface.point_near(x, y, s);
        let h = DEFAULT_FD_STEP;
        let ps = (phi(s + h, v).unwrap() - phi(s - h, v).unwrap()) / (2.0 * h);
        let pv = (phi(s, v + h).unwrap() - phi(s, v - h).unwrap()) / (2.0 * h);
        assert!(o.normal.dot(&ps).abs() <= 1e-8 && o.normal.dot(&pv).abs() <= 1e-8);
        assert_abs_diff_eq!(o.normal.norm(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            o.k,
            o.gaussian_from_coefficients(),
            epsilon = 1e-10 * o.k.abs().max(1.0)
        );
    }
}

#[test]
fn tangent_surface_is_flat() {
    let w = std::f64::consts::FRAC_1_SQRT_2;
    let surface = RuledSurfaceDef::new(
        move |s| Ok(Vector3::new((s * w).cos(), (s * w).sin(), s * w)),
        move |s| Ok(Vector3::new(-w * (s * w).sin(), w * (s * w).cos(), w)),
        (0.0, 3.0),
        (0.2, 1.0),
    );
    for s in linspace(0.2, 2.8, 8) {
        assert!(distribution_parameter(&surface, s).unwrap().abs() <= 1e-9);
        for v in [0.3, 0.7, 1.0] {
            let phi = |x: f64, y: f64| surface.point(x, y);
            let o = oracle_forms(&phi, s, v, DEFAULT_FD_STEP).unwrap().forms;
            assert!(o.k.abs() <= 1e-5, "K = {}", o.k);
        }
    }
}

#[test]
fn oracle_striction_matches_closed_form() {
    let mut rng = common::rng(37);
    let surface = common::random_general(&mut rng);
    let ruled = surface.ruled_surface_def();
    ruled.validate(64).unwrap();
    for _ in 0..10 {
        let s = common::interior_s(&mut rng, &surface, 0.01);
        let sp = striction_point(&ruled, s).unwrap();
        let line = surface.striction_line(s).unwrap();
        assert_abs_diff_eq!(sp.offset, line.v_star, epsilon = 1e-7);
        assert_abs_diff_eq!(
            distribution_parameter(&ruled, s).unwrap(),
            surface.distribution_closed(s).unwrap(),
            epsilon = 1e-7
        );
    }
}

#[test]
fn example_42_paper_ruling_striction() {
    // rulings given directly by their printed closed form
    let curve = cruled::builtin::builtin_curve("example-4.2").unwrap();
    let ruled = RuledSurfaceDef::new(
        move |s| cruled::curve::CurveEval::jet_extended(&curve, s, 0).map(|j| j.value()),
        |s| {
            let r = 2f64.sqrt() * s;
            Ok(Vector3::new(-r.cos(), r.sin(), 0.0))
        },
        (0.0, 2.0 * std::f64::consts::PI),
        (-1.0, 1.0),
    );
    let sp = striction_point(&ruled, std::f64::consts::FRAC_PI_2).unwrap();
    assert_abs_diff_eq!(sp.offset, -0.5, epsilon = 1e-8);
    assert_abs_diff_eq!(
        distribution_parameter(&ruled, 1.0).unwrap(),
        -1f64.sin() / 2.0,
        epsilon = 1e-6
    );
}

#[test]
fn base_curve_oracle_matches_oriented_closed_form() {
    let mut rng = common::rng(38);
    for _ in 0..3 {
        let surface = common::random_general(&mut rng);
        for _ in 0..8 {
            let s = common::interior_s(&mut rng, &surface, 0.01);
            let closed = match surface.base_curvatures_oriented(s) {
                Ok(c) => c,
                Err(Error::SingularPoint { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let phi = |x: f64, y: f64| surface.point_near(x, y, s);
            let o = oracle_curve_curvatures(&phi, &|t| Ok((t, 0.0)), s, DEFAULT_FD_STEP).unwrap();
            for (a, b) in closed.as_array().iter().zip(o.as_array()) {
                assert!((a - b).abs() <= 1e-5, "{closed:?} vs {o:?} at {s}");
            }
        }
    }
}
