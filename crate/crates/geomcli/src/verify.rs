//! Closed forms against the finite-difference oracle and printed values.
//!
//! Every record carries a closed-form slot, an oracle slot and a `paper` slot,
//! any of which may be empty. A record passes when every available delta is
//! within its tolerance. Failing gold records are `FAIL`; failing
//! paper-reference records are `WARN`.

use std::path::PathBuf;

use cruled::csurface::TrimRecord;
use cruled::curve::linspace;
use cruled::frame::{apparatus_from_jets, frame_ode_residuals, reconstruct_frenet};
use cruled::oracle::{
    distribution_parameter, oracle_curve_curvatures, oracle_forms, striction_point, OracleForms,
    RuledSurfaceDef, FORM_ENTRY_NAMES,
};
use cruled::{CSurface, Convention, SurfaceCurveCurvatures};
use nalgebra::Vector3;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{
    build_surface, is_skippable, write_output, CliResult, CurveInfo, RunConfig, NORMALIZATION,
};
use crate::printed::PrintedExample;

/// Tolerance of the Frenet reconstruction from the alternative apparatus.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;
/// Tolerance of algebraic identities between closed forms, relative above 1.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Normal curvatures smaller than this carry no sign information.
pub const SIGN_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Number(f64),
    Vector([f64; 3]),
    Flag(bool),
}

impl Value {
    fn distance(&self, other: &Value) -> Option<f64> {
        match (self, other) {
            (Value::Number(a), Value::Number(b)) => Some((a - b).abs()),
            (Value::Vector(a), Value::Vector(b)) => Some(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max),
            ),
            (Value::Flag(a), Value::Flag(b)) => Some(if a == b { 0.0 } else { 1.0 }),
            _ => None,
        }
    }

    fn magnitude(&self) -> f64 {
        match self {
            Value::Number(a) => a.abs(),
            Value::Vector(a) => a.iter().map(|x| x.abs()).fold(0.0, f64::max),
            Value::Flag(_) => 0.0,
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Number(x)
    }
}

impl From<Vector3<f64>> for Value {
    fn from(x: Vector3<f64>) -> Self {
        Value::Vector([x.x, x.y, x.z])
    }
}

impl From<[f64; 3]> for Value {
    fn from(x: [f64; 3]) -> Self {
        Value::Vector(x)
    }
}

impl From<SurfaceCurveCurvatures> for Value {
    fn from(x: SurfaceCurveCurvatures) -> Self {
        Value::Vector(x.as_array())
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Flag(x)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaperValue {
    pub value: Value,
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Gold,
    PaperReference,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub check: String,
    pub quantity: String,
    pub s: Option<f64>,
    pub v: Option<f64>,
    pub closed_form: Option<Value>,
    pub oracle: Option<Value>,
    pub paper: Option<PaperValue>,
    pub delta_oracle: Option<f64>,
    pub delta_paper: Option<f64>,
    pub tolerance: f64,
    pub severity: Severity,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut out = Self::default();
        for r in records {
            match r.status {
                Status::Pass => out.pass += 1,
                Status::Fail => out.fail += 1,
                Status::Warn => out.warn += 1,
                Status::Skipped => out.skipped += 1,
            }
        }
        out
    }

    /// Process exit code: 0 iff nothing failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.fail > 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub curve: CurveInfo,
    pub convention: Convention,
    pub normalization: &'static str,
    pub printed_example: Option<&'static str>,
    pub config: RunConfig,
    pub trimming: Vec<TrimRecord>,
    pub summary: Summary,
    pub records: Vec<VerificationRecord>,
}

/// A record under construction.
#[derive(Clone, Debug)]
struct Draft {
    check: &'static str,
    quantity: String,
    s: Option<f64>,
    v: Option<f64>,
    closed: Option<Value>,
    oracle: Option<Value>,
    paper: Option<PaperValue>,
    tolerance: f64,
    scaled: bool,
    severity: Severity,
    verdict: Option<bool>,
    note: Option<String>,
}

impl Draft {
    fn new(check: &'static str, quantity: impl Into<String>, tolerance: f64) -> Self {
        Self {
            check,
            quantity: quantity.into(),
            s: None,
            v: None,
            closed: None,
            oracle: None,
            paper: None,
            tolerance,
            scaled: false,
            severity: Severity::Gold,
            verdict: None,
            note: None,
        }
    }

    fn at(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    fn at_v(mut self, v: f64) -> Self {
        self.v = Some(v);
        self
    }

    fn closed(mut self, x: impl Into<Value>) -> Self {
        self.closed = Some(x.into());
        self
    }

    fn oracle(mut self, x: impl Into<Value>) -> Self {
        self.oracle = Some(x.into());
        self
    }

    fn oracle_opt(mut self, x: Option<Value>) -> Self {
        self.oracle = x;
        self
    }

    fn paper(mut self, x: impl Into<Value>, source: String) -> Self {
        self.paper = Some(PaperValue {
            value: x.into(),
            source,
        });
        self
    }

    /// Tolerance becomes relative (×10) above magnitude 1.
    fn scaled(mut self) -> Self {
        self.scaled = true;
        self
    }

    fn reference(mut self) -> Self {
        self.severity = Severity::PaperReference;
        self
    }

    fn severity(mut self, severity: Severity) -> Self {
        self.severity = severity;
        self
    }

    fn verdict(mut self, holds: bool) -> Self {
        self.verdict = Some(holds);
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn skipped(self, why: impl Into<String>) -> VerificationRecord {
        let mut r = self.note(why).finish();
        r.status = Status::Skipped;
        r
    }

    fn finish(self) -> VerificationRecord {
        let delta_oracle = match (&self.closed, &self.oracle) {
            (Some(c), Some(o)) => c.distance(o),
            _ => None,
        };
        let reference = self.oracle.as_ref().or(self.closed.as_ref());
        let delta_paper = match (&self.paper, reference) {
            (Some(p), Some(r)) => p.value.distance(r),
            _ => None,
        };
        let magnitude = reference.map_or(0.0, Value::magnitude);
        let tolerance = if self.scaled && magnitude > 1.0 {
            10.0 * self.tolerance * magnitude
        } else {
            self.tolerance
        };
        let deltas: Vec<f64> = [delta_oracle, delta_paper].into_iter().flatten().collect();
        let holds = match self.verdict {
            Some(v) => Some(v),
            None if deltas.is_empty() => self.closed.map(|c| c.magnitude() <= tolerance),
            None => Some(deltas.iter().all(|d| *d <= tolerance)),
        };
        let status = match (holds, self.severity) {
            (None, _) => Status::Skipped,
            (Some(true), _) => Status::Pass,
            (Some(false), Severity::Gold) => Status::Fail,
            (Some(false), Severity::PaperReference) => Status::Warn,
        };
        VerificationRecord {
            check: self.check.into(),
            quantity: self.quantity,
            s: self.s,
            v: self.v,
            closed_form: self.closed,
            oracle: self.oracle,
            paper: self.paper,
            delta_oracle,
            delta_paper,
            tolerance,
            severity: self.severity,
            status,
            note: self.note,
        }
    }
}

/// Splits expected degeneracies (reported as skipped) from real errors.
fn soft<T>(r: cruled::Result<T>) -> CliResult<Result<T, String>> {
    match r {
        Ok(x) => Ok(Ok(x)),
        Err(e) if is_skippable(&e) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

struct Ctx<'a> {
    surface: &'a CSurface,
    config: &'a RunConfig,
    example: Option<PrintedExample>,
    ruled: RuledSurfaceDef,
    vs: Vec<f64>,
}

impl Ctx<'_> {
    fn phi(&self, anchor: f64) -> impl Fn(f64, f64) -> cruled::Result<Vector3<f64>> + '_ {
        move |x, y| self.surface.point_near(x, y, anchor)
    }

    fn oracle_at(&self, s: f64, v: f64) -> CliResult<Result<OracleForms, String>> {
        soft(oracle_forms(&self.phi(s), s, v, self.config.fd_step))
    }

    fn printed(
        &self,
        ex: PrintedExample,
        quantity: &str,
        s: f64,
        paper: impl Into<Value>,
    ) -> Draft {
        Draft::new("printed example value", quantity, self.config.tol)
            .at(s)
            .scaled()
            .severity(ex.severity())
            .paper(paper, ex.source(quantity))
    }
}

fn wrap_angle(x: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let y = x.rem_euclid(tau);
    if y > std::f64::consts::PI {
        y - tau
    } else {
        y
    }
}

fn frame_records(ctx: &Ctx, s: f64, out: &mut Vec<VerificationRecord>) -> CliResult<bool> {
    let cfg = ctx.config;
    let jets = match soft(ctx.surface.frame_jets(s))? {
        Ok(j) => j,
        Err(why) => {
            out.push(
                Draft::new("frame", "alternative frame", cfg.tol)
                    .at(s)
                    .skipped(why),
            );
            return Ok(false);
        }
    };
    let residual = frame_ode_residuals(&jets).into_iter().fold(0.0, f64::max);
    out.push(
        Draft::new(
            "frame ODE",
            "max(|N'-fC|, |C'+fN-gW|, |W'+gC|)",
            cfg.frame_tol,
        )
        .at(s)
        .closed(residual)
        .note("residual, expected 0")
        .finish(),
    );

    let app = apparatus_from_jets(&jets);
    let (t, b) = reconstruct_frenet(&app);
    let rebuilt = (t - jets.tangent.value())
        .norm()
        .max((b - jets.binormal.value()).norm());
    out.push(
        Draft::new(
            "Frenet reconstruction",
            "max(|T - T_rec|, |B - B_rec|)",
            RECONSTRUCTION_TOL,
        )
        .at(s)
        .closed(rebuilt)
        .note("residual, expected 0")
        .finish(),
    );

    let kt = (jets.kappa.value() - app.kappa())
        .abs()
        .max((jets.tau.value() - app.tau()).abs());
    out.push(
        Draft::new(
            "Frenet curvatures",
            "max(|kappa - f cos(theta)|, |tau - f sin(theta)|)",
            IDENTITY_TOL,
        )
        .at(s)
        .closed(kt / app.f.max(1.0))
        .note("residual relative to max(1, f), expected 0")
        .finish(),
    );

    let h = cfg.fd_step;
    let theta = |x: f64| {
        ctx.surface
            .apparatus_near(x, s)
            .map(|a| a.sin_theta.atan2(a.cos_theta))
    };
    let draft = Draft::new("Frenet curvatures", "theta' = g", cfg.tol)
        .at(s)
        .scaled()
        .closed(app.g);
    match soft(theta(s + h).and_then(|up| Ok(wrap_angle(up - theta(s - h)?) / (2.0 * h))))? {
        Ok(rate) => out.push(draft.oracle(rate).finish()),
        Err(why) => out.push(draft.skipped(why)),
    }

    if let Some(ex) = ctx.example {
        let [n, c, w] = ex.frame(s);
        let (f, g) = ex.curvatures();
        for (q, printed, closed) in [("N", n, app.n), ("C", c, app.c), ("W", w, app.w)] {
            out.push(ctx.printed(ex, q, s, printed).closed(closed).finish());
        }
        out.push(ctx.printed(ex, "f", s, f).closed(app.f).finish());
        out.push(ctx.printed(ex, "g", s, g).closed(app.g).finish());
    }
    Ok(true)
}

fn ruling_records(ctx: &Ctx, s: f64, out: &mut Vec<VerificationRecord>) -> CliResult<()> {
    let tol = ctx.config.tol;
    let data = match soft(ctx.surface.ruling_data(s))? {
        Ok(d) => d,
        Err(why) => {
            out.push(Draft::new("ruling", "v*, P", tol).at(s).skipped(why));
            return Ok(());
        }
    };
    let oracle_striction = soft(striction_point(&ctx.ruled, s))?;
    let oracle_p = soft(distribution_parameter(&ctx.ruled, s))?;

    let draft = Draft::new("striction line", "v*", tol)
        .at(s)
        .scaled()
        .closed(data.v_star);
    out.push(match &oracle_striction {
        Ok(sp) => draft.oracle(sp.offset).finish(),
        Err(why) => draft.skipped(why.clone()),
    });
    let draft = Draft::new("distribution parameter", "P", tol)
        .at(s)
        .scaled()
        .closed(data.p);
    out.push(match &oracle_p {
        Ok(p) => draft.oracle(*p).finish(),
        Err(why) => draft.skipped(why.clone()),
    });

    if let Some(ex) = ctx.example {
        let o_offset = oracle_striction
            .as_ref()
            .ok()
            .map(|sp| Value::from(sp.offset));
        let o_point = oracle_striction
            .as_ref()
            .ok()
            .map(|sp| Value::from(sp.point));
        let o_p = oracle_p.as_ref().ok().map(|p| Value::from(*p));
        out.push(
            ctx.printed(ex, "v*", s, ex.v_star(s))
                .closed(data.v_star)
                .oracle_opt(o_offset)
                .finish(),
        );
        out.push(
            ctx.printed(ex, "P", s, ex.distribution(s))
                .closed(data.p)
                .oracle_opt(o_p)
                .finish(),
        );
        let line = ctx.surface.striction_line(s)?;
        out.push(
            ctx.printed(ex, "striction line", s, ex.striction_point(s))
                .closed(line.point)
                .oracle_opt(o_point)
                .finish(),
        );
    }
    Ok(())
}

fn form_records(ctx: &Ctx, s: f64, v: f64, out: &mut Vec<VerificationRecord>) -> CliResult<()> {
    let tol = ctx.config.tol;
    let closed = match soft(ctx.surface.forms_closed(s, v))? {
        Ok(b) => b,
        Err(why) => {
            out.push(
                Draft::new("fundamental forms", "E..H", tol)
                    .at(s)
                    .at_v(v)
                    .skipped(why),
            );
            return Ok(());
        }
    };
    let oracle = match ctx.oracle_at(s, v)? {
        Ok(o) => o.forms,
        Err(why) => {
            out.push(
                Draft::new("fundamental forms", "E..H", tol)
                    .at(s)
                    .at_v(v)
                    .skipped(why),
            );
            return Ok(());
        }
    };
    let (c, o) = (closed.entries(), oracle.entries());
    for (i, name) in FORM_ENTRY_NAMES.iter().enumerate() {
        let check = if i < 6 {
            "fundamental forms"
        } else {
            "curvature"
        };
        out.push(
            Draft::new(check, *name, tol)
                .at(s)
                .at_v(v)
                .scaled()
                .closed(c[i])
                .oracle(o[i])
                .finish(),
        );
    }
    out.push(
        Draft::new("unit normal", "n", tol)
            .at(s)
            .at_v(v)
            .closed(closed.normal)
            .oracle(oracle.normal)
            .finish(),
    );

    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1.0);
    out.push(
        Draft::new(
            "curvature identity",
            "K - (LN - M^2)/(EG - F^2)",
            IDENTITY_TOL,
        )
        .at(s)
        .at_v(v)
        .closed(rel(closed.k, closed.gaussian_from_coefficients()))
        .note("residual relative to max(1, |K|), expected 0")
        .finish(),
    );
    out.push(
        Draft::new(
            "curvature identity",
            "H - (EN - 2FM + GL)/(2(EG - F^2))",
            IDENTITY_TOL,
        )
        .at(s)
        .at_v(v)
        .closed(rel(closed.h, closed.mean_from_coefficients()))
        .note("residual relative to max(1, |H|), expected 0")
        .finish(),
    );

    let printed = ctx.surface.forms_as_printed(s, v)?;
    let note = "printed vfg term lacks a cos(theta) factor";
    for (q, value, o) in [("L", printed.l, oracle.l), ("H", printed.h, oracle.h)] {
        out.push(
            Draft::new("printed closed form", q, tol)
                .at(s)
                .at_v(v)
                .scaled()
                .reference()
                .closed(value)
                .oracle(o)
                .note(note)
                .finish(),
        );
    }

    if let Some(ex) = ctx.example {
        let p = ex.forms(s, v);
        for (i, name) in FORM_ENTRY_NAMES.iter().enumerate() {
            out.push(
                ctx.printed(ex, name, s, p[i])
                    .at_v(v)
                    .closed(c[i])
                    .oracle(o[i])
                    .finish(),
            );
        }
        out.push(
            ctx.printed(ex, "n", s, ex.normal(s, v))
                .at_v(v)
                .closed(closed.normal)
                .oracle(oracle.normal)
                .finish(),
        );
    }
    Ok(())
}

fn base_records(ctx: &Ctx, s: f64, out: &mut Vec<VerificationRecord>) -> CliResult<()> {
    let cfg = ctx.config;
    let phi = ctx.phi(s);
    let oracle = soft(oracle_curve_curvatures(
        &phi,
        &|t| Ok((t, 0.0)),
        s,
        cfg.fd_step,
    ))?;
    let oriented = soft(ctx.surface.base_curvatures_oriented(s))?;
    let draft = Draft::new(
        "base-curve curvatures",
        "(kappa_g, kappa_n, tau_g)",
        cfg.tol,
    )
    .at(s)
    .scaled();
    match (&oriented, &oracle) {
        (Ok(c), Ok(o)) => out.push(draft.closed(*c).oracle(*o).finish()),
        (Err(why), _) | (_, Err(why)) => out.push(draft.skipped(why.clone())),
    }

    let printed = ctx.surface.base_curvatures(s)?;
    let draft = Draft::new(
        "printed closed form",
        "base (kappa_g, kappa_n, tau_g)",
        cfg.tol,
    )
    .at(s)
    .scaled()
    .reference()
    .closed(printed)
    .note("assumes surface normal -N along the base curve");
    out.push(match &oracle {
        Ok(o) => draft.oracle(*o).finish(),
        Err(why) => draft.skipped(why.clone()),
    });

    let draft = Draft::new("printed closed form", "base kappa_n sign", 0.0)
        .at(s)
        .reference()
        .closed(printed.kappa_n.signum());
    let draft = match ctx.example {
        Some(ex) => {
            let p = ex.base_curvatures(s)[1];
            draft.paper(p.signum(), ex.source("base kappa_n sign"))
        }
        None => draft,
    };
    out.push(match &oracle {
        Ok(o) if o.kappa_n.abs() >= SIGN_FLOOR && printed.kappa_n.abs() >= SIGN_FLOOR => {
            let r = draft.oracle(o.kappa_n.signum());
            if (o.kappa_n > 0.0) != (printed.kappa_n > 0.0) {
                r.note("printed normal curvature has the opposite sign of the oracle")
                    .finish()
            } else {
                r.finish()
            }
        }
        Ok(_) => draft.skipped("normal curvature too small to carry a sign"),
        Err(why) => draft.skipped(why.clone()),
    });

    if let Some(ex) = ctx.example {
        let draft = ctx.printed(
            ex,
            "base (kappa_g, kappa_n, tau_g)",
            s,
            ex.base_curvatures(s),
        );
        let draft = match &oriented {
            Ok(c) => draft.closed(*c),
            Err(_) => draft,
        };
        out.push(
            draft
                .oracle_opt(oracle.as_ref().ok().map(|o| Value::from(*o)))
                .finish(),
        );

        let closed_n = soft(ctx.surface.forms_closed(s, 0.0).map(|b| b.normal))?;
        let oracle_n = ctx.oracle_at(s, 0.0)?;
        let mut draft = ctx
            .printed(ex, "base normal", s, ex.base_normal(s))
            .at_v(0.0);
        if let Ok(n) = closed_n {
            draft = draft.closed(n);
        }
        out.push(
            draft
                .oracle_opt(oracle_n.ok().map(|o| Value::from(o.forms.normal)))
                .finish(),
        );
    }
    Ok(())
}

fn striction_records(ctx: &Ctx, s: f64, out: &mut Vec<VerificationRecord>) -> CliResult<()> {
    let cfg = ctx.config;
    let draft = Draft::new(
        "printed closed form",
        "striction (kappa_g, kappa_n, tau_g)",
        cfg.tol,
    )
    .at(s)
    .scaled()
    .reference();
    let printed = match soft(ctx.surface.striction_curvatures(s))? {
        Ok(p) => p,
        Err(why) => {
            out.push(draft.skipped(why));
            return Ok(());
        }
    };
    let phi = ctx.phi(s);
    let domain_curve = |t: f64| Ok((t, ctx.surface.striction_offset_near(t, s)?));
    let oracle = soft(oracle_curve_curvatures(&phi, &domain_curve, s, cfg.fd_step))?;
    let draft = draft.closed(printed);
    out.push(match &oracle {
        Ok(o) => draft.oracle(*o).finish(),
        Err(why) => draft.skipped(why.clone()),
    });

    if let Some(ex) = ctx.example {
        let o = oracle.as_ref().ok().map(|o| Value::from(*o));
        if let Some(p) = ex.striction_curvatures(s) {
            out.push(
                ctx.printed(ex, "striction (kappa_g, kappa_n, tau_g)", s, p)
                    .closed(printed)
                    .oracle_opt(o)
                    .finish(),
            );
        }
        if let Some(p) = ex.striction_normal(s) {
            let app = ctx.surface.apparatus(s)?;
            let v_star = ctx.surface.ruling_data(s)?.v_star;
            let closed_n = soft(CSurface::forms_from_apparatus(&app, s, v_star).map(|b| b.normal))?;
            let oracle_n = ctx.oracle_at(s, v_star)?;
            let mut draft = ctx.printed(ex, "striction normal", s, p).at_v(v_star);
            if let Ok(n) = closed_n {
                draft = draft.closed(n);
            }
            out.push(
                draft
                    .oracle_opt(oracle_n.ok().map(|o| Value::from(o.forms.normal)))
                    .finish(),
            );
        }
    }
    Ok(())
}

fn records_at(ctx: &Ctx, s: f64) -> CliResult<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    if !frame_records(ctx, s, &mut out)? {
        return Ok(out);
    }
    ruling_records(ctx, s, &mut out)?;
    for &v in &ctx.vs {
        form_records(ctx, s, v, &mut out)?;
    }
    base_records(ctx, s, &mut out)?;
    striction_records(ctx, s, &mut out)?;
    Ok(out)
}

fn global_records(ctx: &Ctx) -> CliResult<Vec<VerificationRecord>> {
    let cfg = ctx.config;
    let mut out = Vec::new();
    let d = ctx.surface.domain();
    for s in linspace(d.start, d.end, cfg.s_samples) {
        if let Err(e) = d.check(s) {
            out.push(
                Draft::new("domain", "sample", cfg.tol)
                    .at(s)
                    .skipped(e.to_string()),
            );
        }
    }
    let report = ctx
        .surface
        .corollary_predicates(cfg.class_samples(), cfg.class_tol)?;
    for c in &report.checks {
        out.push(
            Draft::new("corollary", c.name, cfg.class_tol)
                .closed(c.predicate)
                .verdict(c.holds)
                .note(format!(
                    "class {}: predicate {}, class side {}",
                    report.class.kind, c.predicate, c.class_side
                ))
                .finish(),
        );
    }
    if let Some(ex) = ctx.example {
        let (geodesic, asymptotic, principal) = ex.base_flags();
        for (q, printed, closed) in [
            ("base geodesic", geodesic, report.base_geodesic),
            ("base asymptotic", asymptotic, report.base_asymptotic),
            ("base principal", principal, report.base_principal),
        ] {
            out.push(
                Draft::new("printed example value", q, 0.0)
                    .severity(ex.severity())
                    .closed(closed)
                    .paper(printed, ex.source(q))
                    .finish(),
            );
        }
    }
    Ok(out)
}

/// Runs the verification suite without writing anything.
pub fn verify(config: &RunConfig) -> CliResult<Verification> {
    let (curve, surface) = build_surface(config)?;
    let example = PrintedExample::detect(&curve);
    let ctx = Ctx {
        surface: &surface,
        config,
        example,
        ruled: surface.ruled_surface_def(),
        vs: config.v_grid(),
    };
    let mut records = global_records(&ctx)?;
    let per_s = surface
        .valid_samples(config.s_samples)
        .par_iter()
        .map(|&s| records_at(&ctx, s))
        .collect::<CliResult<Vec<_>>>()?;
    records.extend(per_s.into_iter().flatten());
    Ok(Verification {
        curve: CurveInfo::new(&curve, &surface),
        convention: config.convention,
        normalization: NORMALIZATION,
        printed_example: example.map(PrintedExample::label),
        config: config.clone(),
        trimming: surface.trim_log().to_vec(),
        summary: Summary::of(&records),
        records,
    })
}

/// Runs the suite and writes `verification.json`.
pub fn run_verify(config: &RunConfig) -> CliResult<(PathBuf, Verification)> {
    let doc = verify(config)?;
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    let path = write_output(&config.out, "verification.json", &text)?;
    Ok((path, doc))
}
