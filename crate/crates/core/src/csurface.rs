//! C-ruled surfaces `φ(s, v) = α(s) + v·C(s)` and their closed-form invariants.
//!
//! All angle terms go through `cos θ = κ/f` and `sin θ = τ/f`.

use std::sync::Arc;

use nalgebra::Vector3;
use serde::Serialize;

use crate::curve::{linspace, CurveDef, CurveEval, UnitSpeedCurve};
use crate::domain::{Interval, TrimmedDomain};
use crate::error::{Error, Result};
use crate::frame::{
    apparatus_from_jets, frame_jets, AltApparatus, Convention, CurveClass, CurveKind, FrameJets,
    FrenetData, NormalSweep, F_MIN,
};
use crate::oracle::{
    classify_surface_curve, CurveOnSurfaceFlags, FormBundle, RuledSurfaceDef,
    SurfaceCurveCurvatures,
};

/// Neighbourhoods with `|κ|` below this are excised.
pub const KAPPA_TRIM: f64 = 1e-6;
/// Extra width added on each side of an excision.
pub const TRIM_MARGIN: f64 = 1e-3;
/// Surface points with `EG − F²` below this are singular.
pub const SINGULAR_D: f64 = 1e-12;
/// Smallest accepted `f² + g²`.
pub const DENOM_MIN: f64 = 1e-12;
/// Largest spacing of the trimming and normal-sweep grid.
pub const SWEEP_SPACING: f64 = 2.5e-3;
const SWEEP_MIN_SAMPLES: usize = 512;

/// One excised neighbourhood of a curvature zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrimRecord {
    pub center: f64,
    pub min_kappa: f64,
    pub excised: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StrictionLine {
    pub point: Vector3<f64>,
    pub v_star: f64,
}

/// `L` and `H` with the `vfg` term missing its `cos θ` factor, a common
/// transcription. Kept for side-by-side reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrintedForms {
    pub l: f64,
    pub h: f64,
}

/// Per-parameter data shared by every point on a ruling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RulingData {
    pub s: f64,
    pub f: f64,
    pub g: f64,
    pub f_prime: f64,
    pub g_prime: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub p: f64,
    pub v_star: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CPointReport {
    pub s: f64,
    pub v: f64,
    pub position: Vector3<f64>,
    pub forms: FormBundle,
    pub ruling: RulingData,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Biconditional {
    pub name: &'static str,
    pub predicate: bool,
    pub class_side: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub class: CurveClass,
    pub samples: usize,
    pub tol: f64,
    pub striction_equals_base: bool,
    pub developable: bool,
    pub minimal: bool,
    pub base_geodesic: bool,
    pub base_asymptotic: bool,
    pub base_principal: bool,
    pub striction_geodesic: bool,
    pub striction_asymptotic: bool,
    pub striction_principal: bool,
    pub checks: Vec<Biconditional>,
}

impl CorollaryReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// A C-ruled surface over a unit-speed base curve.
#[derive(Clone, Debug)]
pub struct CSurface {
    base: UnitSpeedCurve,
    convention: Convention,
    domain: TrimmedDomain,
    v_range: (f64, f64),
    sweep: NormalSweep,
    trim_log: Vec<TrimRecord>,
}

/// Builds the C-ruled surface of `curve`, reparameterizing it by arc length
/// unless it is declared unit speed.
pub fn make_c_surface(
    curve: CurveDef,
    convention: Convention,
    v_range: (f64, f64),
) -> Result<CSurface> {
    CSurface::new(UnitSpeedCurve::new(curve)?, convention, v_range)
}

fn golden_min(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..80 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let (fa, fb) = (f(a)?, f(b)?);
    let best = [(a, fa), (c, fc), (d, fd), (b, fb)]
        .into_iter()
        .fold((a, fa), |acc, p| if p.1 < acc.1 { p } else { acc });
    Ok(best)
}

/// Edge of `{|κ| < KAPPA_TRIM}` between `inside` and `outside`.
fn trim_edge(kappa: &dyn Fn(f64) -> Result<f64>, inside: f64, outside: f64) -> Result<f64> {
    if kappa(outside)? < KAPPA_TRIM {
        return Ok(outside);
    }
    let (mut a, mut b) = (inside, outside);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if kappa(m)? < KAPPA_TRIM {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(b)
}

impl CSurface {
    pub fn new(base: UnitSpeedCurve, convention: Convention, v_range: (f64, f64)) -> Result<Self> {
        if !(v_range.0 <= v_range.1) {
            return Err(Error::InvalidArgument(format!(
                "empty v-range [{}, {}]",
                v_range.0, v_range.1
            )));
        }
        let (s0, s1) = base.domain();
        let count = (((s1 - s0) / SWEEP_SPACING).ceil() as usize + 1).max(SWEEP_MIN_SAMPLES);
        let grid = linspace(s0, s1, count);
        let kappa = |s: f64| -> Result<f64> { Ok(base.jet(s, 2)?.derivative(2).norm()) };
        let samples: Vec<f64> = grid.iter().map(|&s| kappa(s)).collect::<Result<_>>()?;
        let peak = samples.iter().cloned().fold(0.0, f64::max);
        if peak < F_MIN {
            return Err(Error::DegenerateBaseCurve { f: peak });
        }

        let mut domain = TrimmedDomain::full(s0, s1);
        let mut trim_log = Vec::new();
        let last = grid.len() - 1;
        for i in 0..=last {
            let left = if i > 0 { samples[i - 1] } else { f64::INFINITY };
            let right = if i < last {
                samples[i + 1]
            } else {
                f64::INFINITY
            };
            if !(samples[i] <= left && samples[i] <= right) {
                continue;
            }
            let (lo, hi) = (grid[i.saturating_sub(1)], grid[(i + 1).min(last)]);
            let (center, min_kappa) = golden_min(&kappa, lo, hi)?;
            if min_kappa >= KAPPA_TRIM {
                continue;
            }
            let a = trim_edge(&kappa, center, lo)?;
            let b = trim_edge(&kappa, center, hi)?;
            let excised = Interval::new(a - TRIM_MARGIN, b + TRIM_MARGIN);
            domain.excise(excised);
            trim_log.push(TrimRecord {
                center,
                min_kappa,
                excised: Interval::new(excised.lo.max(s0), excised.hi.min(s1)),
            });
        }
        if domain.is_empty() {
            return Err(Error::DegenerateBaseCurve { f: peak });
        }

        let sweep = match convention {
            Convention::Smooth => {
                let valid: Vec<f64> = grid
                    .iter()
                    .cloned()
                    .filter(|&s| domain.contains(s))
                    .collect();
                NormalSweep::build(&base, &valid)?
            }
            Convention::Strict => NormalSweep::default(),
        };
        Ok(Self {
            base,
            convention,
            domain,
            v_range,
            sweep,
            trim_log,
        })
    }

    pub fn base(&self) -> &UnitSpeedCurve {
        &self.base
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn domain(&self) -> &TrimmedDomain {
        &self.domain
    }

    pub fn v_range(&self) -> (f64, f64) {
        self.v_range
    }

    pub fn trim_log(&self) -> &[TrimRecord] {
        &self.trim_log
    }

    fn check_v(&self, v: f64) -> Result<()> {
        let (v0, v1) = self.v_range;
        if !(v >= v0 && v <= v1) {
            return Err(Error::OutOfDomain {
                s: v,
                s0: v0,
                s1: v1,
            });
        }
        Ok(())
    }

    /// Neighbouring sweep normal for the smooth convention.
    fn reference(&self, s: f64) -> Option<Vector3<f64>> {
        if self.convention == Convention::Strict {
            return None;
        }
        let same_piece = |x: f64| !self.domain.separates(s, x);
        let idx = if self.domain.contains(s) {
            self.sweep.nearest(s, same_piece)
        } else {
            self.sweep.nearest(s, |_| true)
        }?;
        Some(self.sweep.samples()[idx].1)
    }

    /// Frame jets at `s` (order-5 curve jet).
    pub fn frame_jets(&self, s: f64) -> Result<FrameJets> {
        self.domain.check(s)?;
        let jet = self.base.jet(s, 5)?;
        frame_jets(&jet, self.convention, self.reference(s).as_ref())
    }

    pub fn apparatus(&self, s: f64) -> Result<AltApparatus> {
        Ok(apparatus_from_jets(&self.frame_jets(s)?))
    }

    pub fn frenet(&self, s: f64) -> Result<FrenetData> {
        let j = self.frame_jets(s)?;
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

    /// The ruling direction `C(s)`.
    pub fn ruling(&self, s: f64) -> Result<Vector3<f64>> {
        Ok(self.frame_jets(s)?.c.value())
    }

    pub fn eval_point(&self, s: f64, v: f64) -> Result<Vector3<f64>> {
        self.check_v(v)?;
        Ok(self.base.point(s)? + v * self.ruling(s)?)
    }

    /// `φ(s, v)` without domain checks, orienting `N` like the sweep near
    /// `anchor`. Finite-difference stencils around `anchor` call this.
    pub fn point_near(&self, s: f64, v: f64, anchor: f64) -> Result<Vector3<f64>> {
        let jet = self.base.jet_extended(s, 4)?;
        let j = frame_jets(&jet, self.convention, self.reference(anchor).as_ref())?;
        Ok(jet.value() + v * j.c.value())
    }

    /// Apparatus without domain checks, oriented like the sweep near `anchor`.
    pub fn apparatus_near(&self, s: f64, anchor: f64) -> Result<AltApparatus> {
        let jet = self.base.jet_extended(s, 5)?;
        let j = frame_jets(&jet, self.convention, self.reference(anchor).as_ref())?;
        Ok(apparatus_from_jets(&j))
    }

    /// Striction offset `v*` without domain checks, for stencils near `anchor`.
    pub fn striction_offset_near(&self, s: f64, anchor: f64) -> Result<f64> {
        Self::striction_offset(&self.apparatus_near(s, anchor)?, s)
    }

    /// The surface as a generic ruled surface for the finite-difference oracle.
    pub fn ruled_surface_def(&self) -> RuledSurfaceDef {
        let a = Arc::new(self.clone());
        let b = Arc::clone(&a);
        let s_domain = (self.domain.start, self.domain.end);
        RuledSurfaceDef::new(
            move |s| a.base.jet_extended(s, 0).map(|j| j.value()),
            move |s| {
                b.point_near(s, 1.0, s)
                    .and_then(|p| Ok(p - b.base.jet_extended(s, 0)?.value()))
            },
            s_domain,
            self.v_range,
        )
    }

    fn denominator(app: &AltApparatus, s: f64) -> Result<f64> {
        let value = app.f * app.f + app.g * app.g;
        if !(value >= DENOM_MIN) {
            return Err(Error::DegenerateDenominator { s, value });
        }
        Ok(value)
    }

    fn striction_offset(app: &AltApparatus, s: f64) -> Result<f64> {
        Ok(-app.g * app.sin_theta / Self::denominator(app, s)?)
    }

    pub fn striction_line(&self, s: f64) -> Result<StrictionLine> {
        let app = self.apparatus(s)?;
        let v_star = Self::striction_offset(&app, s)?;
        Ok(StrictionLine {
            point: self.base.point(s)? + v_star * app.c,
            v_star,
        })
    }

    /// `P = f·sin θ/(f² + g²)`.
    pub fn distribution_closed(&self, s: f64) -> Result<f64> {
        let app = self.apparatus(s)?;
        Ok(app.f * app.sin_theta / Self::denominator(&app, s)?)
    }

    pub fn ruling_data(&self, s: f64) -> Result<RulingData> {
        let app = self.apparatus(s)?;
        let denom = Self::denominator(&app, s)?;
        Ok(RulingData {
            s,
            f: app.f,
            g: app.g,
            f_prime: app.f_prime,
            g_prime: app.g_prime,
            cos_theta: app.cos_theta,
            sin_theta: app.sin_theta,
            p: app.f * app.sin_theta / denom,
            v_star: -app.g * app.sin_theta / denom,
        })
    }

    fn metric_discriminant(app: &AltApparatus, s: f64, v: f64) -> Result<f64> {
        let a = app.sin_theta + v * app.g;
        let d = v * v * app.f * app.f + a * a;
        if !(d >= SINGULAR_D) {
            return Err(Error::SingularPoint { s, v, d });
        }
        Ok(d)
    }

    /// Fundamental forms, curvatures and unit normal at `(s, v)`.
    pub fn forms_closed(&self, s: f64, v: f64) -> Result<FormBundle> {
        self.check_v(v)?;
        Self::forms_from_apparatus(&self.apparatus(s)?, s, v)
    }

    pub fn forms_from_apparatus(app: &AltApparatus, s: f64, v: f64) -> Result<FormBundle> {
        let d = Self::metric_discriminant(app, s, v)?;
        let root = d.sqrt();
        let AltApparatus {
            f,
            g,
            f_prime: fp,
            g_prime: gp,
            cos_theta: c,
            sin_theta: sn,
            ..
        } = *app;
        let a = sn + v * g;
        let shape = v * v * (fp * g - f * gp) + sn * (v * fp - f * c) - v * f * g * c;
        let mean = v * v * (fp * g - f * gp) + v * fp * sn + f * sn * c - v * f * g * c;
        Ok(FormBundle {
            e: v * v * f * f + c * c + a * a,
            f: -c,
            g: 1.0,
            l: shape / root,
            m: f * sn / root,
            n: 0.0,
            k: -(f * f * sn * sn) / (d * d),
            h: mean / (2.0 * d * root),
            normal: (-a * app.n - v * f * app.w) / root,
        })
    }

    /// `L` and `H` without the `cos θ` factor on the `vfg` term.
    pub fn forms_as_printed(&self, s: f64, v: f64) -> Result<PrintedForms> {
        self.check_v(v)?;
        let app = self.apparatus(s)?;
        let d = Self::metric_discriminant(&app, s, v)?;
        let AltApparatus {
            f,
            g,
            f_prime: fp,
            g_prime: gp,
            cos_theta: c,
            sin_theta: sn,
            ..
        } = app;
        let l = v * v * (fp * g - f * gp) + sn * (v * fp - f * c) - v * f * g;
        let h = v * v * (fp * g - f * gp) + v * fp * sn + f * sn * c - v * f * g;
        Ok(PrintedForms {
            l: l / d.sqrt(),
            h: h / (2.0 * d.powf(1.5)),
        })
    }

    pub fn point_report(&self, s: f64, v: f64) -> Result<CPointReport> {
        self.check_v(v)?;
        let app = self.apparatus(s)?;
        let denom = Self::denominator(&app, s)?;
        Ok(CPointReport {
            s,
            v,
            position: self.base.point(s)? + v * app.c,
            forms: Self::forms_from_apparatus(&app, s, v)?,
            ruling: RulingData {
                s,
                f: app.f,
                g: app.g,
                f_prime: app.f_prime,
                g_prime: app.g_prime,
                cos_theta: app.cos_theta,
                sin_theta: app.sin_theta,
                p: app.f * app.sin_theta / denom,
                v_star: -app.g * app.sin_theta / denom,
            },
        })
    }

    /// Base-curve curvatures `(0, −f·cos θ, 0)`, assuming the surface normal
    /// along the base curve is `−N`.
    pub fn base_curvatures(&self, s: f64) -> Result<SurfaceCurveCurvatures> {
        let app = self.apparatus(s)?;
        Ok(SurfaceCurveCurvatures::new(
            0.0,
            -app.f * app.cos_theta,
            0.0,
        ))
    }

    /// Base-curve curvatures with the actual surface normal at `v = 0`, which is
    /// `−sign(sin θ)·N`. Undefined where `sin θ` vanishes, since the surface is
    /// singular along the whole base curve there.
    pub fn base_curvatures_oriented(&self, s: f64) -> Result<SurfaceCurveCurvatures> {
        let app = self.apparatus(s)?;
        Self::metric_discriminant(&app, s, 0.0)?;
        let sign = app.sin_theta.signum();
        Ok(SurfaceCurveCurvatures::new(
            0.0,
            -sign * app.f * app.cos_theta,
            0.0,
        ))
    }

    /// Striction-line curvatures `(fg·cos²θ/√(f²+g²), −f²cos θ/√(f²+g²), fg·cos²θ)`.
    ///
    /// These disagree with the finite-difference oracle on general curves.
    pub fn striction_curvatures(&self, s: f64) -> Result<SurfaceCurveCurvatures> {
        let app = self.apparatus(s)?;
        let root = Self::denominator(&app, s)?.sqrt();
        let (f, g, c) = (app.f, app.g, app.cos_theta);
        Ok(SurfaceCurveCurvatures::new(
            f * g * c * c / root,
            -f * f * c / root,
            f * g * c * c,
        ))
    }

    /// Untrimmed parameters among `n` equispaced samples of the full domain.
    pub fn valid_samples(&self, n: usize) -> Vec<f64> {
        linspace(self.domain.start, self.domain.end, n)
            .into_iter()
            .filter(|&s| self.domain.contains(s))
            .collect()
    }

    /// Classifies the base curve from its apparatus on the trimmed domain.
    pub fn classify(&self, samples: usize, tol: f64) -> Result<CurveClass> {
        if samples < 16 {
            return Err(Error::InvalidArgument(
                "classification needs ≥ 16 samples".into(),
            ));
        }
        let (mut max_f, mut max_g, mut max_sin): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for s in self.valid_samples(samples) {
            let app = self.apparatus(s)?;
            max_f = max_f.max(app.f);
            max_g = max_g.max(app.g.abs());
            max_sin = max_sin.max(app.sin_theta.abs());
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

    /// Sampled corollary predicates, each paired with the curve-class side of
    /// its biconditional.
    ///
    /// `g = 0` holds for planar curves too, so the helix side of the
    /// striction-line statements is taken as "helix or planar".
    pub fn corollary_predicates(&self, samples: usize, tol: f64) -> Result<CorollaryReport> {
        let class = self.classify(samples, tol)?;
        let ss = self.valid_samples(samples);
        let vs = linspace(self.v_range.0, self.v_range.1, 5);
        let (mut max_v_star, mut max_p, mut max_h): (f64, f64, f64) = (0.0, 0.0, 0.0);
        let mut base = Vec::with_capacity(ss.len());
        let mut striction = Vec::with_capacity(ss.len());
        for &s in &ss {
            let data = self.ruling_data(s)?;
            max_v_star = max_v_star.max(data.v_star.abs());
            max_p = max_p.max(data.p.abs());
            let app = self.apparatus(s)?;
            for &v in &vs {
                match Self::forms_from_apparatus(&app, s, v) {
                    Ok(b) => max_h = max_h.max(b.h.abs()),
                    Err(Error::SingularPoint { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            base.push(self.base_curvatures(s)?);
            striction.push(self.striction_curvatures(s)?);
        }
        let flags = |c: &[SurfaceCurveCurvatures]| -> Result<CurveOnSurfaceFlags> {
            classify_surface_curve(c, tol)
        };
        let b = flags(&base)?;
        let st = flags(&striction)?;
        let kind = class.kind;
        let helix_or_planar = matches!(kind, CurveKind::Helix | CurveKind::Planar);
        let planar = kind == CurveKind::Planar;
        let iff = |name, predicate: bool, class_side: bool| Biconditional {
            name,
            predicate,
            class_side,
            holds: predicate == class_side,
        };
        let developable = max_p <= tol;
        let minimal = max_h <= tol;
        let striction_equals_base = max_v_star <= tol;
        let checks = vec![
            iff(
                "striction_equals_base iff helix or planar",
                striction_equals_base,
                helix_or_planar,
            ),
            iff("developable iff planar", developable, planar),
            Biconditional {
                name: "planar implies minimal",
                predicate: minimal,
                class_side: planar,
                holds: !planar || minimal,
            },
            iff("base curve geodesic", b.geodesic, true),
            iff("base curve principal", b.principal, true),
            iff("base curve not asymptotic", !b.asymptotic, true),
            iff(
                "striction geodesic iff helix or planar",
                st.geodesic,
                helix_or_planar,
            ),
            iff("striction not asymptotic", !st.asymptotic, true),
            iff(
                "striction principal iff helix or planar",
                st.principal,
                helix_or_planar,
            ),
        ];
        Ok(CorollaryReport {
            class,
            samples,
            tol,
            striction_equals_base,
            developable,
            minimal,
            base_geodesic: b.geodesic,
            base_asymptotic: b.asymptotic,
            base_principal: b.principal,
            striction_geodesic: st.geodesic,
            striction_asymptotic: st.asymptotic,
            striction_principal: st.principal,
            checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn example_41() -> CSurface {
        let c = CurveDef::new(
            "example-4.1",
            ["cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)"],
            (0.0, 4.0 * PI),
            true,
        )
        .unwrap();
        make_c_surface(c, Convention::Smooth, (-1.0, 1.0)).unwrap()
    }

    fn example_42(convention: Convention) -> CSurface {
        let c = CurveDef::new(
            "example-4.2",
            [
                "3/sqrt(2)*sin(sqrt(2)*s)*cos(s) - 2*sin(s)*cos(sqrt(2)*s)",
                "3/sqrt(2)*cos(sqrt(2)*s)*cos(s) + 2*sin(s)*sin(sqrt(2)*s)",
                "-1/sqrt(2)*cos(s)",
            ],
            (0.0, 2.0 * PI),
            true,
        )
        .unwrap();
        make_c_surface(c, convention, (-1.0, 1.0)).unwrap()
    }

    fn circle() -> CSurface {
        let c = CurveDef::new("circle", ["cos(s)", "sin(s)", "0"], (0.0, 2.0 * PI), true).unwrap();
        make_c_surface(c, Convention::Smooth, (-1.0, 1.0)).unwrap()
    }

    #[test]
    fn helix_is_untrimmed() {
        let s = example_41();
        assert!(s.trim_log().is_empty());
        assert_eq!(s.domain().pieces().len(), 1);
    }

    #[test]
    fn straight_line_rejected() {
        let c = CurveDef::new("line", ["s", "0", "0"], (0.0, 1.0), true).unwrap();
        assert!(matches!(
            make_c_surface(c, Convention::Smooth, (-1.0, 1.0)),
            Err(Error::DegenerateBaseCurve { .. })
        ));
    }

    #[test]
    fn example_42_trims_curvature_zeros() {
        let s = example_42(Convention::Smooth);
        let centers: Vec<f64> = s.trim_log().iter().map(|t| t.center).collect();
        assert_eq!(centers.len(), 2);
        assert_abs_diff_eq!(centers[0], FRAC_PI_2, epsilon = 1e-6);
        assert_abs_diff_eq!(centers[1], 3.0 * FRAC_PI_2, epsilon = 1e-6);
        for t in s.trim_log() {
            assert!(t.excised.len() > 2.0 * TRIM_MARGIN);
            assert!(t.excised.len() < 2.0 * TRIM_MARGIN + 1e-5);
        }
        assert!(matches!(
            s.striction_line(FRAC_PI_2),
            Err(Error::Trimmed { .. })
        ));
    }

    #[test]
    fn eval_points() {
        let s = example_41();
        assert_abs_diff_eq!(
            s.eval_point(0.0, 1.0).unwrap(),
            Vector3::new(1.0, -1.0, 0.0),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            s.eval_point(2.0, 0.0).unwrap(),
            s.base().point(2.0).unwrap()
        );
        let e = example_42(Convention::Smooth);
        let r = 3.0 * FRAC_1_SQRT_2;
        assert_abs_diff_eq!(
            e.eval_point(0.0, 0.5).unwrap(),
            Vector3::new(-0.5, r, -FRAC_1_SQRT_2),
            epsilon = 1e-12
        );
        assert!(matches!(
            s.eval_point(0.0, 2.0),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            s.eval_point(-1.0, 0.0),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn striction_and_distribution() {
        let s = example_41();
        let line = s.striction_line(1.0).unwrap();
        assert_abs_diff_eq!(line.v_star, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.distribution_closed(1.0).unwrap(), 1.0, epsilon = 1e-12);
        let e = example_42(Convention::Smooth);
        assert_abs_diff_eq!(
            e.distribution_closed(1.0).unwrap(),
            -1f64.sin() / 2.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            e.striction_line(1.0).unwrap().v_star,
            -1f64.sin() / 2.0,
            epsilon = 1e-10
        );
        // approaching the curvature zero from below
        let edge = e.domain().excised[0].lo - 1e-9;
        assert_abs_diff_eq!(e.striction_line(edge).unwrap().v_star, -0.5, epsilon = 1e-5);
        let c = circle();
        assert_eq!(c.striction_line(0.3).unwrap().v_star, 0.0);
        assert_eq!(c.distribution_closed(0.3).unwrap(), 0.0);
    }

    #[test]
    fn helix_forms_at_origin() {
        let b = example_41().forms_closed(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(b.e, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(b.f, -FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_eq!(b.g, 1.0);
        assert_abs_diff_eq!(b.l, -1.0 / (2.0 * 2f64.sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(b.m, 0.5, epsilon = 1e-12);
        assert_eq!(b.n, 0.0);
        assert_abs_diff_eq!(b.k, -0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(b.h, 2f64.powf(-2.5), epsilon = 1e-12);
        assert_abs_diff_eq!(
            b.normal,
            Vector3::new(1.0, 0.0, -1.0) * FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(b.k, b.gaussian_from_coefficients(), epsilon = 1e-12);
        assert_abs_diff_eq!(b.h, b.mean_from_coefficients(), epsilon = 1e-12);
    }

    #[test]
    fn circle_is_flat_and_minimal() {
        let c = circle();
        let b = c.forms_closed(1.0, 0.5).unwrap();
        for x in [b.l, b.m, b.n, b.k, b.h] {
            assert_abs_diff_eq!(x, 0.0, epsilon = 1e-14);
        }
        assert!(matches!(
            c.forms_closed(1.0, 0.0),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn example_42_first_form() {
        let e = example_42(Convention::Smooth);
        let b = e.forms_closed(1.0, 0.3).unwrap();
        assert_abs_diff_eq!(b.e, 0.6 * 1f64.sin() + 0.18 + 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(b.f, -1f64.cos(), epsilon = 1e-10);
        // the example's L agrees with the corrected form once the cos θ factor is kept
        let s = 1.0f64;
        let d = 0.6 * s.sin() + 0.18 + 1.0 - s.cos().powi(2);
        assert_abs_diff_eq!(b.l, s.cos() * (s.sin() + 0.3) / d.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(b.m, -s.sin() / d.sqrt(), epsilon = 1e-10);
        let printed = e.forms_as_printed(1.0, 0.3).unwrap();
        assert!((printed.l - b.l).abs() > 1e-3);
    }

    #[test]
    fn base_curvature_forms() {
        let s = example_41();
        assert_eq!(
            s.base_curvatures(0.5).unwrap(),
            s.base_curvatures_oriented(0.5).unwrap()
        );
        let k = s.base_curvatures(0.5).unwrap();
        assert_abs_diff_eq!(k.kappa_n, -0.5, epsilon = 1e-12);
        let e = example_42(Convention::Smooth);
        assert_abs_diff_eq!(
            e.base_curvatures(1.0).unwrap().kappa_n,
            -1f64.cos(),
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            e.base_curvatures_oriented(1.0).unwrap().kappa_n,
            1f64.cos(),
            epsilon = 1e-10
        );
        let c = circle();
        assert_abs_diff_eq!(
            c.base_curvatures(0.2).unwrap().kappa_n,
            -1.0,
            epsilon = 1e-14
        );
        assert!(c.base_curvatures_oriented(0.2).is_err());
    }

    #[test]
    fn striction_curvatures_printed() {
        let e = example_42(Convention::Smooth);
        let k = e.striction_curvatures(1.0).unwrap();
        let c = 1f64.cos();
        assert_abs_diff_eq!(k.kappa_g, -c * c / 2f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(k.kappa_n, -c / 2f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(k.tau_g, -c * c, epsilon = 1e-10);
        let h = example_41();
        assert_abs_diff_eq!(
            h.striction_curvatures(3.0).unwrap().as_array()[..],
            h.base_curvatures(3.0).unwrap().as_array()[..],
            epsilon = 1e-12
        );
    }

    #[test]
    fn conventions_differ_past_the_zero() {
        let smooth = example_42(Convention::Smooth);
        let strict = example_42(Convention::Strict);
        let a = smooth.apparatus(2.0).unwrap();
        let b = strict.apparatus(2.0).unwrap();
        assert_abs_diff_eq!(a.g, -1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(b.g, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(a.c, -b.c, epsilon = 1e-10);
        assert_abs_diff_eq!(a.cos_theta, 2f64.cos(), epsilon = 1e-10);
    }

    #[test]
    fn corollaries() {
        let r = example_41().corollary_predicates(64, 1e-8).unwrap();
        assert_eq!(r.class.kind, CurveKind::Helix);
        assert!(r.striction_equals_base && !r.developable && !r.minimal);
        assert!(r.base_geodesic && r.base_principal && !r.base_asymptotic);
        assert!(r.striction_geodesic);
        assert!(r.all_hold(), "{:?}", r.checks);

        let c = circle().corollary_predicates(64, 1e-8).unwrap();
        assert_eq!(c.class.kind, CurveKind::Planar);
        assert!(c.developable && c.minimal && c.striction_equals_base);
        assert!(c.all_hold(), "{:?}", c.checks);

        let e = example_42(Convention::Smooth)
            .corollary_predicates(64, 1e-8)
            .unwrap();
        assert_eq!(e.class.kind, CurveKind::General);
        assert!(!e.striction_equals_base && !e.developable && !e.base_asymptotic);
        assert!(e.all_hold(), "{:?}", e.checks);
    }
}
