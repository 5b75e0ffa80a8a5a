//! Generic ruled-surface and curve-on-surface quantities by finite differences.
//!
//! Nothing here knows about the alternative frame. Surfaces are plain
//! `(s, v) ↦ point` evaluators and every derivative is a central difference with
//! one Richardson step, so these routines serve as an independent reference for
//! the closed forms in [`crate::csurface`].
//!
//! First derivatives use the step `h`; second derivatives use `100·h`, which
//! keeps the `ε/step²` rounding term near `1e-10` for unit-scale geometry.

use std::sync::Arc;

use nalgebra::Vector3;
use serde::Serialize;

use crate::curve::linspace;
use crate::error::{Error, Result};

pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Ratio between the second- and first-derivative steps.
pub const SECOND_STEP_RATIO: f64 = 100.0;
/// Below this `‖φ_s × φ_v‖` the tangent plane is degenerate.
pub const TANGENT_PLANE_MIN: f64 = 1e-8;
/// Below this `‖X′‖` a ruling is cylindrical and striction is undefined.
pub const CYLINDRICAL_MIN: f64 = 1e-8;
/// Below this speed a curve on a surface is not regular.
pub const CURVE_SPEED_MIN: f64 = 1e-8;

/// Fundamental forms, curvatures and unit normal at one surface point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FormBundle {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub k: f64,
    pub h: f64,
    pub normal: Vector3<f64>,
}

/// Field names of [`FormBundle::entries`], in order.
pub const FORM_ENTRY_NAMES: [&str; 8] = ["E", "F", "G", "L", "M", "N", "K", "H"];

impl FormBundle {
    /// Completes a bundle with `K = (LN − M²)/(EG − F²)` and
    /// `H = (EN − 2FM + GL)/(2(EG − F²))`.
    pub fn from_coefficients(
        [e, f, g]: [f64; 3],
        [l, m, n]: [f64; 3],
        normal: Vector3<f64>,
    ) -> Self {
        let det = e * g - f * f;
        Self {
            e,
            f,
            g,
            l,
            m,
            n,
            k: (l * n - m * m) / det,
            h: (e * n - 2.0 * f * m + g * l) / (2.0 * det),
            normal,
        }
    }

    pub fn metric_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn gaussian_from_coefficients(&self) -> f64 {
        (self.l * self.n - self.m * self.m) / self.metric_det()
    }

    pub fn mean_from_coefficients(&self) -> f64 {
        (self.e * self.n - 2.0 * self.f * self.m + self.g * self.l) / (2.0 * self.metric_det())
    }

    /// `[E, F, G, L, M, N, K, H]`.
    pub fn entries(&self) -> [f64; 8] {
        [
            self.e, self.f, self.g, self.l, self.m, self.n, self.k, self.h,
        ]
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SurfaceCurveCurvatures {
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
}

impl SurfaceCurveCurvatures {
    pub fn new(kappa_g: f64, kappa_n: f64, tau_g: f64) -> Self {
        Self {
            kappa_g,
            kappa_n,
            tau_g,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.kappa_g, self.kappa_n, self.tau_g]
    }
}

/// Finite-difference bundle with a per-entry error estimate in
/// [`FORM_ENTRY_NAMES`] order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleForms {
    pub forms: FormBundle,
    pub error_estimate: [f64; 8],
}

type PointFn = dyn Fn(f64) -> Result<Vector3<f64>> + Send + Sync;

/// `φ(s, v) = α(s) + v·X(s)` from point evaluators of the base curve and ruling.
///
/// Both evaluators must be defined a few multiples of the finite-difference
/// step beyond `s_domain`.
#[derive(Clone)]
pub struct RuledSurfaceDef {
    base: Arc<PointFn>,
    ruling: Arc<PointFn>,
    pub s_domain: (f64, f64),
    pub v_domain: (f64, f64),
}

impl std::fmt::Debug for RuledSurfaceDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RuledSurfaceDef")
            .field("s_domain", &self.s_domain)
            .field("v_domain", &self.v_domain)
            .finish_non_exhaustive()
    }
}

impl RuledSurfaceDef {
    pub fn new(
        base: impl Fn(f64) -> Result<Vector3<f64>> + Send + Sync + 'static,
        ruling: impl Fn(f64) -> Result<Vector3<f64>> + Send + Sync + 'static,
        s_domain: (f64, f64),
        v_domain: (f64, f64),
    ) -> Self {
        Self {
            base: Arc::new(base),
            ruling: Arc::new(ruling),
            s_domain,
            v_domain,
        }
    }

    pub fn base(&self, s: f64) -> Result<Vector3<f64>> {
        (self.base)(s)
    }

    pub fn ruling(&self, s: f64) -> Result<Vector3<f64>> {
        (self.ruling)(s)
    }

    pub fn point(&self, s: f64, v: f64) -> Result<Vector3<f64>> {
        Ok(self.base(s)? + v * self.ruling(s)?)
    }

    /// Checks `‖X‖ = 1 ± 1e-8` on `samples` equispaced parameters.
    pub fn validate(&self, samples: usize) -> Result<()> {
        for s in linspace(self.s_domain.0, self.s_domain.1, samples.max(2)) {
            let norm = self.ruling(s)?.norm();
            if (norm - 1.0).abs() > 1e-8 {
                return Err(Error::InvalidArgument(format!(
                    "ruling is not a unit vector at s = {s} (norm {norm})"
                )));
            }
        }
        Ok(())
    }
}

/// Richardson-extrapolated central first derivative and the plain one.
fn diff1(f: &dyn Fn(f64) -> Result<Vector3<f64>>, x: f64, h: f64) -> Result<[Vector3<f64>; 2]> {
    let d1 = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let d2 = (f(x + 2.0 * h)? - f(x - 2.0 * h)?) / (4.0 * h);
    Ok([(4.0 * d1 - d2) / 3.0, d1])
}

fn diff2(f: &dyn Fn(f64) -> Result<Vector3<f64>>, x: f64, k: f64) -> Result<[Vector3<f64>; 2]> {
    let mid = f(x)?;
    let c1 = (f(x + k)? - 2.0 * mid + f(x - k)?) / (k * k);
    let c2 = (f(x + 2.0 * k)? - 2.0 * mid + f(x - 2.0 * k)?) / (4.0 * k * k);
    Ok([(4.0 * c1 - c2) / 3.0, c1])
}

fn diff_mixed(
    phi: &dyn Fn(f64, f64) -> Result<Vector3<f64>>,
    s: f64,
    v: f64,
    k: f64,
) -> Result<[Vector3<f64>; 2]> {
    let m = |k: f64| -> Result<Vector3<f64>> {
        Ok(
            (phi(s + k, v + k)? - phi(s + k, v - k)? - phi(s - k, v + k)? + phi(s - k, v - k)?)
                / (4.0 * k * k),
        )
    };
    let m1 = m(k)?;
    let m2 = m(2.0 * k)?;
    Ok([(4.0 * m1 - m2) / 3.0, m1])
}

/// Bundle from surface partials `φ_s, φ_v, φ_ss, φ_sv, φ_vv`, with the normal
/// oriented along `φ_s × φ_v`.
pub fn forms_from_partials(
    ps: &Vector3<f64>,
    pv: &Vector3<f64>,
    pss: &Vector3<f64>,
    psv: &Vector3<f64>,
    pvv: &Vector3<f64>,
) -> Result<FormBundle> {
    let cross = ps.cross(pv);
    let norm = cross.norm();
    if !(norm >= TANGENT_PLANE_MIN) {
        return Err(Error::DegenerateTangentPlane {
            s: f64::NAN,
            v: f64::NAN,
            norm,
        });
    }
    let n = cross / norm;
    Ok(FormBundle::from_coefficients(
        [ps.dot(ps), ps.dot(pv), pv.dot(pv)],
        [pss.dot(&n), psv.dot(&n), pvv.dot(&n)],
        n,
    ))
}

fn surface_partials(
    phi: &dyn Fn(f64, f64) -> Result<Vector3<f64>>,
    s: f64,
    v: f64,
    h: f64,
) -> Result<[[Vector3<f64>; 5]; 2]> {
    let k = SECOND_STEP_RATIO * h;
    let ps = diff1(&|x| phi(x, v), s, h)?;
    let pv = diff1(&|y| phi(s, y), v, h)?;
    let pss = diff2(&|x| phi(x, v), s, k)?;
    let pvv = diff2(&|y| phi(s, y), v, k)?;
    let psv = diff_mixed(phi, s, v, k)?;
    Ok([
        [ps[0], pv[0], pss[0], psv[0], pvv[0]],
        [ps[1], pv[1], pss[1], psv[1], pvv[1]],
    ])
}

fn unit_normal(
    phi: &dyn Fn(f64, f64) -> Result<Vector3<f64>>,
    s: f64,
    v: f64,
    h: f64,
) -> Result<Vector3<f64>> {
    let ps = diff1(&|x| phi(x, v), s, h)?[0];
    let pv = diff1(&|y| phi(s, y), v, h)?[0];
    let cross = ps.cross(&pv);
    let norm = cross.norm();
    if !(norm >= TANGENT_PLANE_MIN) {
        return Err(Error::DegenerateTangentPlane { s, v, norm });
    }
    Ok(cross / norm)
}

/// Fundamental forms of `phi` at `(s, v)` by finite differences with step `h`.
///
/// `phi` is evaluated up to `200·h` away from `(s, v)`.
pub fn oracle_forms(
    phi: &dyn Fn(f64, f64) -> Result<Vector3<f64>>,
    s: f64,
    v: f64,
    h: f64,
) -> Result<OracleForms> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let [fine, plain] = surface_partials(phi, s, v, h)?;
    let bundle = |p: &[Vector3<f64>; 5]| {
        forms_from_partials(&p[0], &p[1], &p[2], &p[3], &p[4]).map_err(|e| match e {
            Error::DegenerateTangentPlane { norm, .. } => {
                Error::DegenerateTangentPlane { s, v, norm }
            }
            other => other,
        })
    };
    let forms = bundle(&fine)?;
    let rough = bundle(&plain)?;

    let scale = phi(s, v)?.norm().max(1.0);
    let k = SECOND_STEP_RATIO * h;
    let first_floor = 8.0 * f64::EPSILON * scale / h;
    let second_floor = 32.0 * f64::EPSILON * scale / (k * k);
    let mut error_estimate = [0.0; 8];
    for (i, (a, b)) in forms.entries().iter().zip(rough.entries()).enumerate() {
        let floor = if i < 3 { first_floor } else { second_floor };
        error_estimate[i] = (a - b).abs() + floor * (1.0 + a.abs());
    }
    Ok(OracleForms {
        forms,
        error_estimate,
    })
}

/// Striction point and its offset along the ruling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StrictionPoint {
    pub point: Vector3<f64>,
    pub offset: f64,
}

fn tangent_and_ruling_rate(
    surface: &RuledSurfaceDef,
    s: f64,
    h: f64,
) -> Result<(Vector3<f64>, Vector3<f64>, Vector3<f64>)> {
    let t = diff1(&|x| surface.base(x), s, h)?[0];
    let x = surface.ruling(s)?;
    let dx = diff1(&|y| surface.ruling(y), s, h)?[0];
    if !(dx.norm() >= CYLINDRICAL_MIN) {
        return Err(Error::CylindricalRuling { s, norm: dx.norm() });
    }
    Ok((t, x, dx))
}

/// `α − (⟨T, X′⟩/‖X′‖²)·X`, with derivatives by finite differences.
pub fn striction_point(surface: &RuledSurfaceDef, s: f64) -> Result<StrictionPoint> {
    let (t, x, dx) = tangent_and_ruling_rate(surface, s, DEFAULT_FD_STEP)?;
    let offset = -t.dot(&dx) / dx.norm_squared();
    Ok(StrictionPoint {
        point: surface.base(s)? + offset * x,
        offset,
    })
}

/// `det(T, X, X′)/‖X′‖²`.
pub fn distribution_parameter(surface: &RuledSurfaceDef, s: f64) -> Result<f64> {
    let (t, x, dx) = tangent_and_ruling_rate(surface, s, DEFAULT_FD_STEP)?;
    Ok(t.dot(&x.cross(&dx)) / dx.norm_squared())
}

/// Curvatures of `t ↦ φ(u(t), w(t))` on the surface `phi`.
///
/// The curve is normalized to unit speed locally through the chain rule, so all
/// derivatives below are with respect to its own arc length `σ`:
/// `κ_g = ⟨n × T, T′⟩`, `κ_n = ⟨T′, n⟩` and `τ_g = ⟨n × n′, T′⟩`.
pub fn oracle_curve_curvatures(
    phi: &dyn Fn(f64, f64) -> Result<Vector3<f64>>,
    domain_curve: &dyn Fn(f64) -> Result<(f64, f64)>,
    t: f64,
    h: f64,
) -> Result<SurfaceCurveCurvatures> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let beta = |x: f64| -> Result<Vector3<f64>> {
        let (u, w) = domain_curve(x)?;
        phi(u, w)
    };
    let k = SECOND_STEP_RATIO * h;
    let d1 = diff1(&beta, t, h)?[0];
    let d2 = diff2(&beta, t, k)?[0];
    let sigma = d1.norm();
    if !(sigma >= CURVE_SPEED_MIN) {
        return Err(Error::NonRegularCurve { s: t, speed: sigma });
    }
    let tangent = d1 / sigma;
    let tangent_rate = (d2 - d2.dot(&tangent) * tangent) / (sigma * sigma);

    let normal_at = |x: f64| -> Result<Vector3<f64>> {
        let (u, w) = domain_curve(x)?;
        unit_normal(phi, u, w, h)
    };
    let n = normal_at(t)?;
    let normal_rate = diff1(&normal_at, t, k)?[0] / sigma;

    Ok(SurfaceCurveCurvatures {
        kappa_g: n.cross(&tangent).dot(&tangent_rate),
        kappa_n: tangent_rate.dot(&n),
        tau_g: n.cross(&normal_rate).dot(&tangent_rate),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveOnSurfaceFlags {
    pub geodesic: bool,
    pub asymptotic: bool,
    pub principal: bool,
}

/// Geodesic, asymptotic and principal-line flags from sampled curvatures.
pub fn classify_surface_curve(
    samples: &[SurfaceCurveCurvatures],
    tol: f64,
) -> Result<CurveOnSurfaceFlags> {
    if samples.len() < 8 {
        return Err(Error::InvalidArgument(format!(
            "classify_surface_curve needs ≥ 8 samples, got {}",
            samples.len()
        )));
    }
    let max = |f: fn(&SurfaceCurveCurvatures) -> f64| {
        samples.iter().map(|c| f(c).abs()).fold(0.0, f64::max)
    };
    Ok(CurveOnSurfaceFlags {
        geodesic: max(|c| c.kappa_g) <= tol,
        asymptotic: max(|c| c.kappa_n) <= tol,
        principal: max(|c| c.tau_g) <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn helix_c_surface() -> RuledSurfaceDef {
        let w = FRAC_1_SQRT_2;
        RuledSurfaceDef::new(
            move |s| Ok(Vector3::new((s * w).cos(), (s * w).sin(), s * w)),
            move |s| Ok(Vector3::new((s * w).sin(), -(s * w).cos(), 0.0)),
            (0.0, 4.0 * std::f64::consts::PI),
            (-1.0, 1.0),
        )
    }

    fn tangent_surface() -> RuledSurfaceDef {
        let w = FRAC_1_SQRT_2;
        RuledSurfaceDef::new(
            move |s| Ok(Vector3::new((s * w).cos(), (s * w).sin(), s * w)),
            move |s| Ok(Vector3::new(-w * (s * w).sin(), w * (s * w).cos(), w)),
            (0.0, 1.0),
            (-1.0, 1.0),
        )
    }

    #[test]
    fn helix_striction_and_distribution() {
        let surface = helix_c_surface();
        surface.validate(64).unwrap();
        for s in [0.3, 2.0, 5.0] {
            let sp = striction_point(&surface, s).unwrap();
            assert_abs_diff_eq!(sp.offset, 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(
                distribution_parameter(&surface, s).unwrap(),
                1.0,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn tangent_surface_is_developable() {
        let surface = tangent_surface();
        let sp = striction_point(&surface, 0.4).unwrap();
        assert_abs_diff_eq!(sp.offset, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(
            distribution_parameter(&surface, 0.4).unwrap(),
            0.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn cylinder_ruling_rejected() {
        let surface = RuledSurfaceDef::new(
            |s| Ok(Vector3::new(s.cos(), s.sin(), 0.0)),
            |_| Ok(Vector3::new(0.0, 0.0, 1.0)),
            (0.0, 1.0),
            (0.0, 1.0),
        );
        assert!(matches!(
            striction_point(&surface, 0.5),
            Err(Error::CylindricalRuling { .. })
        ));
    }

    #[test]
    fn plane_forms() {
        let phi = |s: f64, v: f64| Ok(Vector3::new(s, v, 0.0));
        let out = oracle_forms(&phi, 0.2, 0.3, DEFAULT_FD_STEP).unwrap();
        let expect = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for (a, b) in out.forms.entries().iter().zip(expect) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn helix_surface_forms() {
        let surface = helix_c_surface();
        let phi = |s: f64, v: f64| surface.point(s, v);
        let out = oracle_forms(&phi, 0.7, 0.4, DEFAULT_FD_STEP).unwrap().forms;
        assert_abs_diff_eq!(out.e, 1.08, epsilon = 1e-6);
        assert_abs_diff_eq!(out.f, -FRAC_1_SQRT_2, epsilon = 1e-6);
        assert_abs_diff_eq!(out.g, 1.0, epsilon = 1e-6);
        let at = oracle_forms(&phi, 0.0, 1.0, DEFAULT_FD_STEP).unwrap().forms;
        assert_abs_diff_eq!(at.k, -0.25, epsilon = 1e-5);
        assert_abs_diff_eq!(at.k, at.gaussian_from_coefficients(), epsilon = 1e-12);
        assert_abs_diff_eq!(at.h, at.mean_from_coefficients(), epsilon = 1e-12);
    }

    #[test]
    fn degenerate_tangent_plane() {
        let phi = |s: f64, _v: f64| Ok(Vector3::new(s, 0.0, 0.0));
        assert!(matches!(
            oracle_forms(&phi, 0.0, 0.0, DEFAULT_FD_STEP),
            Err(Error::DegenerateTangentPlane { .. })
        ));
    }

    #[test]
    fn helix_base_curve_curvatures() {
        let surface = helix_c_surface();
        let phi = |s: f64, v: f64| surface.point(s, v);
        let c = oracle_curve_curvatures(&phi, &|t| Ok((t, 0.0)), 1.1, DEFAULT_FD_STEP).unwrap();
        assert_abs_diff_eq!(c.kappa_g, 0.0, epsilon = 1e-5);
        assert_abs_diff_eq!(c.kappa_n, -0.5, epsilon = 1e-5);
        assert_abs_diff_eq!(c.tau_g, 0.0, epsilon = 1e-5);
    }

    #[test]
    fn ruling_is_straight() {
        let surface = helix_c_surface();
        let phi = |s: f64, v: f64| surface.point(s, v);
        let c = oracle_curve_curvatures(&phi, &|t| Ok((0.8, t)), 0.5, DEFAULT_FD_STEP).unwrap();
        assert_abs_diff_eq!(c.kappa_g, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(c.kappa_n, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn stationary_curve_rejected() {
        let phi = |s: f64, v: f64| Ok(Vector3::new(s, v, 0.0));
        assert!(matches!(
            oracle_curve_curvatures(&phi, &|_| Ok((0.0, 0.0)), 0.0, DEFAULT_FD_STEP),
            Err(Error::NonRegularCurve { .. })
        ));
    }

    #[test]
    fn surface_curve_flags() {
        let base = vec![SurfaceCurveCurvatures::new(0.0, -0.5, 0.0); 8];
        let flags = classify_surface_curve(&base, 1e-9).unwrap();
        assert_eq!(
            flags,
            CurveOnSurfaceFlags {
                geodesic: true,
                asymptotic: false,
                principal: true
            }
        );
        let zero = vec![SurfaceCurveCurvatures::default(); 8];
        let flags = classify_surface_curve(&zero, 1e-9).unwrap();
        assert!(flags.geodesic && flags.asymptotic && flags.principal);
        let bent = vec![SurfaceCurveCurvatures::new(0.1, 0.0, 0.0); 8];
        let flags = classify_surface_curve(&bent, 1e-9).unwrap();
        assert!(!flags.geodesic && flags.asymptotic && flags.principal);
        assert!(classify_surface_curve(&bent[..7], 1e-9).is_err());
    }
}
