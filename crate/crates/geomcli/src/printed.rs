//! Values printed for the two worked examples, as reference data.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use cruled::{builtin_curve, CurveDef};
use nalgebra::Vector3;

use crate::verify::Severity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintedExample {
    /// Helix example; every printed value is consistent and checked as gold.
    Helix41,
    /// General-curve example; printed values are reference data only.
    General42,
}

/// Printed flags for the base curve: geodesic, asymptotic, principal.
pub type CurveFlags = (bool, bool, bool);

impl PrintedExample {
    /// The example whose built-in curve `curve` is, if any.
    pub fn detect(curve: &CurveDef) -> Option<Self> {
        [
            ("example-4.1", Self::Helix41),
            ("example-4.2", Self::General42),
        ]
        .into_iter()
        .find(|(name, _)| builtin_curve(name).is_ok_and(|b| &b == curve))
        .map(|(_, e)| e)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Helix41 => "example 4.1",
            Self::General42 => "example 4.2",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Self::Helix41 => Severity::Gold,
            Self::General42 => Severity::PaperReference,
        }
    }

    pub fn source(self, quantity: &str) -> String {
        format!("{}, printed {quantity}", self.label())
    }

    /// `N`, `C`, `W`.
    pub fn frame(self, s: f64) -> [Vector3<f64>; 3] {
        match self {
            Self::Helix41 => {
                let (sa, ca) = (s * FRAC_1_SQRT_2).sin_cos();
                [
                    Vector3::new(-ca, -sa, 0.0),
                    Vector3::new(sa, -ca, 0.0),
                    Vector3::new(0.0, 0.0, 1.0),
                ]
            }
            Self::General42 => {
                let (sb, cb) = (SQRT_2 * s).sin_cos();
                let r = FRAC_1_SQRT_2;
                [
                    Vector3::new(-r * sb, -r * cb, r),
                    Vector3::new(-cb, sb, 0.0),
                    Vector3::new(-r * sb, -r * cb, -r),
                ]
            }
        }
    }

    /// `(f, g)`.
    pub fn curvatures(self) -> (f64, f64) {
        match self {
            Self::Helix41 => (FRAC_1_SQRT_2, 0.0),
            Self::General42 => (1.0, -1.0),
        }
    }

    /// Striction offset along the ruling.
    pub fn v_star(self, s: f64) -> f64 {
        match self {
            Self::Helix41 => 0.0,
            Self::General42 => -s.sin() / 2.0,
        }
    }

    pub fn distribution(self, s: f64) -> f64 {
        match self {
            Self::Helix41 => 1.0,
            Self::General42 => -s.sin() / 2.0,
        }
    }

    pub fn striction_point(self, s: f64) -> Vector3<f64> {
        match self {
            Self::Helix41 => {
                let a = s * FRAC_1_SQRT_2;
                Vector3::new(a.cos(), a.sin(), a)
            }
            Self::General42 => {
                let (sb, cb) = (SQRT_2 * s).sin_cos();
                let (ss, cs) = s.sin_cos();
                let k = 3.0 * FRAC_1_SQRT_2;
                Vector3::new(
                    -1.5 * ss * cb + k * sb * cs,
                    1.5 * ss * sb + k * cb * cs,
                    -FRAC_1_SQRT_2 * cs,
                )
            }
        }
    }

    /// `E, F, G, L, M, N, K, H`.
    pub fn forms(self, s: f64, v: f64) -> [f64; 8] {
        let q = v * v + 1.0;
        let k = -1.0 / (q * q);
        let h = 1.0 / (2.0 * q.powf(1.5));
        match self {
            Self::Helix41 => [
                v * v / 2.0 + 1.0,
                -FRAC_1_SQRT_2,
                1.0,
                -1.0 / (2.0 * q.sqrt()),
                1.0 / (2.0 * v * v + 2.0).sqrt(),
                0.0,
                k,
                h,
            ],
            Self::General42 => {
                let (ss, cs) = s.sin_cos();
                let e = 2.0 * v * ss + 2.0 * v * v + 1.0;
                let root = (e - cs * cs).sqrt();
                [e, -cs, 1.0, cs * (ss + v) / root, -ss / root, 0.0, k, h]
            }
        }
    }

    pub fn normal(self, s: f64, v: f64) -> Vector3<f64> {
        match self {
            Self::Helix41 => {
                let (sa, ca) = (s * FRAC_1_SQRT_2).sin_cos();
                Vector3::new(ca, sa, -v) / (v * v + 1.0).sqrt()
            }
            Self::General42 => {
                let (sb, cb) = (SQRT_2 * s).sin_cos();
                let (ss, cs) = s.sin_cos();
                let root = (2.0 * v * ss + 2.0 * v * v + 1.0 - cs * cs).sqrt();
                SQRT_2 / (2.0 * root) * Vector3::new(-sb * ss, -cb * ss, ss + 2.0 * v)
            }
        }
    }

    /// Surface normal along the base curve.
    pub fn base_normal(self, s: f64) -> Vector3<f64> {
        match self {
            Self::Helix41 => {
                let (sa, ca) = (s * FRAC_1_SQRT_2).sin_cos();
                Vector3::new(ca, sa, 0.0)
            }
            Self::General42 => {
                let (sb, cb) = (SQRT_2 * s).sin_cos();
                Vector3::new(-sb, -cb, 1.0) * FRAC_1_SQRT_2
            }
        }
    }

    /// `(κ_g, κ_n, τ_g)` of the base curve.
    pub fn base_curvatures(self, s: f64) -> [f64; 3] {
        match self {
            Self::Helix41 => [0.0, -0.5, 0.0],
            Self::General42 => [0.0, s.cos(), 0.0],
        }
    }

    pub fn base_flags(self) -> CurveFlags {
        (true, false, true)
    }

    /// Surface normal along the striction line, where printed separately.
    pub fn striction_normal(self, s: f64) -> Option<Vector3<f64>> {
        match self {
            Self::Helix41 => None,
            Self::General42 => {
                let (sb, cb) = (SQRT_2 * s).sin_cos();
                Some(Vector3::new(-sb, -cb, 0.0))
            }
        }
    }

    /// `(κ_g, κ_n, τ_g)` of the striction line, where printed separately.
    pub fn striction_curvatures(self, s: f64) -> Option<[f64; 3]> {
        match self {
            Self::Helix41 => None,
            Self::General42 => {
                let c = s.cos();
                let q = 7.0 * c * c + 2.0;
                Some([3.0 * SQRT_2 / q, 3.0 * c / SQRT_2, -18.0 * c / q.powf(1.5)])
            }
        }
    }
}
