//! Frenet and alternative moving frames of unit-speed curves.
//!
//! Everything is computed on derivative jets, so the rates `f′`, `g′` and the
//! frame derivatives used for the structure-equation residuals are exact to
//! rounding. The angle `θ` whose integral relation ties `(κ, τ)` to `(f, g)` is
//! never integrated: it only enters through `cos θ = κ/f` and `sin θ = τ/f`.

use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::curve::{linspace, CurveEval};
use crate::error::{Error, Result};
use crate::jet::{ScalarJet, VecJet};

/// Below this |κ| the principal normal is declared undefined.
pub const KAPPA_MIN: f64 = 1e-8;
/// Below this `f` the curve is treated as a straight line.
pub const F_MIN: f64 = 1e-8;
/// Accepted deviation of `‖α′‖` from 1 at frame evaluation.
pub const FRAME_SPEED_TOL: f64 = 1e-8;

/// How the principal normal is oriented.
///
/// `Strict` always uses `N = T′/‖T′‖`, so `κ ≥ 0`. `Smooth` keeps `N`
/// continuous along a sweep in increasing `s`, which lets `κ` change sign
/// through isolated zeros.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Strict,
    #[default]
    Smooth,
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Self::Strict),
            "smooth" => Ok(Self::Smooth),
            other => Err(Error::InvalidArgument(format!(
                "unknown convention `{other}` (expected strict|smooth)"
            ))),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Smooth => "smooth",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrenetData {
    pub t: Vector3<f64>,
    pub n: Vector3<f64>,
    pub b: Vector3<f64>,
    pub kappa: f64,
    pub tau: f64,
    pub kappa_prime: f64,
    pub tau_prime: f64,
}

/// Pointwise data of the alternative moving frame `{N, C, W}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AltApparatus {
    pub n: Vector3<f64>,
    pub c: Vector3<f64>,
    pub w: Vector3<f64>,
    pub f: f64,
    pub g: f64,
    pub f_prime: f64,
    pub g_prime: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
}

impl AltApparatus {
    pub fn kappa(&self) -> f64 {
        self.f * self.cos_theta
    }

    pub fn tau(&self) -> f64 {
        self.f * self.sin_theta
    }
}

/// Frame vectors and curvatures as jets in the arc length.
///
/// For an input jet of order `p`: `tangent` has order `p-1`, `normal`,
/// `binormal` and `kappa` order `p-2`, `c`, `w`, `tau` and `f` order `p-3`,
/// and `g` order `p-4`.
#[derive(Clone, Copy, Debug)]
pub struct FrameJets {
    pub tangent: VecJet,
    pub normal: VecJet,
    pub binormal: VecJet,
    pub c: VecJet,
    pub w: VecJet,
    pub kappa: ScalarJet,
    pub tau: ScalarJet,
    pub f: ScalarJet,
    pub g: ScalarJet,
}

/// Builds the frame jets from a curve jet of order ≥ 4.
///
/// Under [`Convention::Smooth`], `reference` is the neighbouring normal of a
/// sweep; the normal is flipped when it points against it. Without a reference
/// both conventions coincide.
pub fn frame_jets(
    jet: &VecJet,
    convention: Convention,
    reference: Option<&Vector3<f64>>,
) -> Result<FrameJets> {
    let p = jet.order();
    if p < 4 {
        return Err(Error::InvalidArgument(format!(
            "frame evaluation needs a jet of order ≥ 4, got {p}"
        )));
    }
    let tangent = jet.differentiate();
    let deviation = (tangent.value().norm() - 1.0).abs();
    if deviation > FRAME_SPEED_TOL {
        return Err(Error::NotUnitSpeed { deviation });
    }
    let accel = tangent.differentiate();
    let jerk = accel.differentiate();

    let kappa_abs = accel.value().norm();
    if kappa_abs < KAPPA_MIN {
        return Err(Error::FrameUndefined { kappa: kappa_abs });
    }
    let flip = match (convention, reference) {
        (Convention::Smooth, Some(r)) => accel.value().dot(r) < 0.0,
        _ => false,
    };
    let mut kappa = accel.norm();
    if flip {
        kappa = -kappa;
    }
    let normal = accel.scale(kappa.recip());
    let binormal = tangent.cross(&normal);
    let tau = tangent.cross(&accel).dot(&jerk) / (kappa * kappa);
    let f = (kappa * kappa + tau * tau).sqrt();
    if f.value() < F_MIN {
        return Err(Error::DegenerateBaseCurve { f: f.value() });
    }
    // (τ/κ)′ κ²/f² expanded, so κ may change sign under the smooth convention
    let g = (tau.differentiate() * kappa - kappa.differentiate() * tau) / (f * f);
    let dn = normal.differentiate();
    let c = dn.scale(dn.norm().recip());
    let w = (tangent.scale(tau) + binormal.scale(kappa)).scale(f.recip());
    Ok(FrameJets {
        tangent,
        normal,
        binormal,
        c,
        w,
        kappa,
        tau,
        f,
        g,
    })
}

pub fn frenet_apparatus(
    jet: &VecJet,
    convention: Convention,
    reference: Option<&Vector3<f64>>,
) -> Result<FrenetData> {
    let j = frame_jets(jet, convention, reference)?;
    Ok(FrenetData {
        t: j.tangent.value(),
        n: j.normal.value(),
        b: j.binormal.value(),
        kappa: j.kappa.value(),
        tau: j.tau.value(),
        kappa_prime: j.kappa.derivative(1),
        tau_prime: j.tau.derivative(1),
    })
}

/// Alternative frame apparatus; needs a jet of order 5 for `g′`.
pub fn alternative_apparatus(
    jet: &VecJet,
    convention: Convention,
    reference: Option<&Vector3<f64>>,
) -> Result<AltApparatus> {
    if jet.order() < 5 {
        return Err(Error::InvalidArgument(format!(
            "alternative apparatus needs a jet of order 5, got {}",
            jet.order()
        )));
    }
    Ok(apparatus_from_jets(&frame_jets(
        jet, convention, reference,
    )?))
}

pub fn apparatus_from_jets(j: &FrameJets) -> AltApparatus {
    let f = j.f.value();
    AltApparatus {
        n: j.normal.value(),
        c: j.c.value(),
        w: j.w.value(),
        f,
        g: j.g.value(),
        f_prime: j.f.derivative(1),
        g_prime: j.g.derivative(1),
        cos_theta: j.kappa.value() / f,
        sin_theta: j.tau.value() / f,
    }
}

/// Tangent and binormal rebuilt from the alternative frame.
pub fn reconstruct_frenet(app: &AltApparatus) -> (Vector3<f64>, Vector3<f64>) {
    let t = -app.cos_theta * app.c + app.sin_theta * app.w;
    let b = app.sin_theta * app.c + app.cos_theta * app.w;
    (t, b)
}

/// Norms of `N′ − fC`, `C′ + fN − gW` and `W′ + gC`.
pub fn frame_ode_residuals(j: &FrameJets) -> [f64; 3] {
    let (f, g) = (j.f.value(), j.g.value());
    let (n, c, w) = (j.normal.value(), j.c.value(), j.w.value());
    [
        (j.normal.derivative(1) - f * c).norm(),
        (j.c.derivative(1) + f * n - g * w).norm(),
        (j.w.derivative(1) + g * c).norm(),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    StraightLine,
    Planar,
    Helix,
    General,
}

impl std::fmt::Display for CurveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveClass {
    pub kind: CurveKind,
    pub max_f: f64,
    pub max_g: f64,
    pub max_sin_theta: f64,
    pub tol: f64,
    pub samples: usize,
}

/// Classifies a unit-speed curve by sampled alternative curvatures.
///
/// Samples where the principal normal is undefined contribute to `max_f` only.
pub fn classify_curve<C: CurveEval + ?Sized>(
    curve: &C,
    samples: usize,
    tol: f64,
) -> Result<CurveClass> {
    if samples < 16 {
        return Err(Error::InvalidArgument(
            "classify_curve needs ≥ 16 samples".into(),
        ));
    }
    let (s0, s1) = curve.domain();
    let (mut max_f, mut max_g, mut max_sin): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for s in linspace(s0, s1, samples) {
        let jet = curve.jet(s, 5)?;
        match frame_jets(&jet, Convention::Strict, None) {
            Ok(j) => {
                let f = j.f.value();
                max_f = max_f.max(f);
                max_g = max_g.max(j.g.value().abs());
                max_sin = max_sin.max((j.tau.value() / f).abs());
            }
            Err(Error::FrameUndefined { kappa }) => max_f = max_f.max(kappa),
            Err(e) => return Err(e),
        }
    }
    let kind = if max_f <= tol {
        CurveKind::StraightLine
    } else if max_sin <= tol {
        CurveKind::Planar
    } else if max_g <= tol {
        CurveKind::Helix
    } else {
        CurveKind::General
    };
    Ok(CurveClass {
        kind,
        max_f,
        max_g,
        max_sin_theta: max_sin,
        tol,
        samples,
    })
}

/// Principal normals propagated continuously along increasing `s`.
#[derive(Clone, Debug, Default)]
pub struct NormalSweep {
    samples: Vec<(f64, Vector3<f64>)>,
}

impl NormalSweep {
    /// Samples with `|κ| < KAPPA_MIN` are skipped and the previous sign carries over.
    pub fn build<C: CurveEval + ?Sized>(curve: &C, grid: &[f64]) -> Result<Self> {
        let mut samples: Vec<(f64, Vector3<f64>)> = Vec::with_capacity(grid.len());
        for &s in grid {
            let accel = curve.jet(s, 2)?.derivative(2);
            let kappa = accel.norm();
            if kappa < KAPPA_MIN {
                continue;
            }
            let mut n = accel / kappa;
            if let Some((_, prev)) = samples.last() {
                if n.dot(prev) < 0.0 {
                    n = -n;
                }
            }
            samples.push((s, n));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(f64, Vector3<f64>)] {
        &self.samples
    }

    /// Index of the sweep sample nearest to `s` among those accepted by `same_side`.
    pub fn nearest(&self, s: f64, same_side: impl Fn(f64) -> bool) -> Option<usize> {
        let at = self.samples.partition_point(|(x, _)| *x < s);
        let mut best: Option<usize> = None;
        let mut consider = |i: usize| {
            if same_side(self.samples[i].0) {
                let d = (self.samples[i].0 - s).abs();
                if best.is_none_or(|b| d < (self.samples[b].0 - s).abs()) {
                    best = Some(i);
                }
            }
        };
        // closest candidates on either side
        if at < self.samples.len() {
            consider(at);
        }
        if at > 0 {
            consider(at - 1);
        }
        best
    }
}
