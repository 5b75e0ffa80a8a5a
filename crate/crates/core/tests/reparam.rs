mod common;

use cruled::curve::{linspace, unit_speed_check, CurveDef, CurveEval};
use cruled::reparam::arc_length_reparameterize;
use proptest::prelude::*;

const TOL: f64 = 1e-10;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reparameterizing_twice_is_idempotent(
        ax in 0.6f64..1.6, ay in 0.6f64..1.6, e in 0.02f64..0.08, k in 2u32..=3, lift in -0.6f64..0.6,
    ) {
        let curve = cruled::families::Epicycle { amp_x: ax, amp_y: ay, e, k }
            .lifted([lift, 0.1, 0.0], 1.0, (0.0, 2.0))
            .unwrap();
        let once = arc_length_reparameterize(curve, TOL).unwrap();
        let twice = arc_length_reparameterize(once.clone(), TOL).unwrap();
        prop_assert!((once.length() - twice.length()).abs() <= 2.0 * TOL);
        for s in linspace(0.0, once.length().min(twice.length()), 33) {
            let d = (once.point(s).unwrap() - twice.point(s).unwrap()).norm();
            prop_assert!(d <= 2.0 * TOL, "moved by {d} at s = {s}");
        }
        prop_assert!(unit_speed_check(&twice, 64, TOL).unwrap().passed);
    }
}

/// Fourth-order central difference.
fn d<F: Fn(f64) -> nalgebra::Vector3<f64>>(f: F, x: f64, h: f64) -> nalgebra::Vector3<f64> {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

#[test]
fn reparameterized_jets_agree_with_finite_differences() {
    let curve = CurveDef::new(
        "c",
        ["2*cos(s) + s", "sin(3*s)", "s^2/3"],
        (0.0, 2.0),
        false,
    )
    .unwrap();
    let r = arc_length_reparameterize(curve, TOL).unwrap();
    let h = 2e-4;
    for s in [0.3, 1.0, 2.2] {
        let jet = r.jet(s, 5).unwrap();
        for k in 1..=5 {
            let fd = d(|x| r.jet(x, k - 1).unwrap().derivative(k - 1), s, h);
            let got = jet.derivative(k);
            assert!(
                (got - fd).norm() <= 1e-7 * fd.norm().max(1.0),
                "order {k} at s = {s}: {got:?} vs {fd:?}"
            );
        }
    }
}
