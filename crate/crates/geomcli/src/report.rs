//! `report.json`: per-s invariants, classification and corollaries.

use std::path::PathBuf;

use cruled::csurface::{CorollaryReport, TrimRecord};
use cruled::frame::CurveClass;
use cruled::{Convention, SurfaceCurveCurvatures};
use serde::Serialize;

use crate::config::{
    build_surface, is_skippable, write_output, CliResult, CurveInfo, RunConfig, NORMALIZATION,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub s: f64,
    pub f: f64,
    pub g: f64,
    pub f_prime: f64,
    pub g_prime: f64,
    pub cos_theta: f64,
    pub sin_theta: f64,
    #[serde(rename = "P")]
    pub p: f64,
    pub v_star: f64,
    /// `(0, −f·cos θ, 0)` with the normal taken as `−N`.
    pub base_curvatures: SurfaceCurveCurvatures,
    /// Same with the actual surface normal; absent where the surface is singular along the base curve.
    pub base_curvatures_oriented: Option<SurfaceCurveCurvatures>,
    pub striction_curvatures: SurfaceCurveCurvatures,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkippedSample {
    pub s: f64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub curve: CurveInfo,
    pub convention: Convention,
    pub normalization: &'static str,
    pub config: RunConfig,
    pub class: CurveClass,
    pub trimming: Vec<TrimRecord>,
    pub table: Vec<ReportRow>,
    pub skipped: Vec<SkippedSample>,
    pub corollaries: CorollaryReport,
}

/// Builds the report without writing it.
pub fn build_report(config: &RunConfig) -> CliResult<Report> {
    let (curve, surface) = build_surface(config)?;
    let d = surface.domain();
    let mut table = Vec::new();
    let mut skipped = Vec::new();
    for s in cruled::curve::linspace(d.start, d.end, config.s_samples) {
        let row = (|| -> cruled::Result<ReportRow> {
            d.check(s)?;
            let r = surface.ruling_data(s)?;
            let oriented = match surface.base_curvatures_oriented(s) {
                Ok(c) => Some(c),
                Err(cruled::Error::SingularPoint { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(ReportRow {
                s,
                f: r.f,
                g: r.g,
                f_prime: r.f_prime,
                g_prime: r.g_prime,
                cos_theta: r.cos_theta,
                sin_theta: r.sin_theta,
                p: r.p,
                v_star: r.v_star,
                base_curvatures: surface.base_curvatures(s)?,
                base_curvatures_oriented: oriented,
                striction_curvatures: surface.striction_curvatures(s)?,
            })
        })();
        match row {
            Ok(row) => table.push(row),
            Err(e) if is_skippable(&e) => skipped.push(SkippedSample {
                s,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report {
        curve: CurveInfo::new(&curve, &surface),
        convention: config.convention,
        normalization: NORMALIZATION,
        config: config.clone(),
        class: surface.classify(config.class_samples(), config.class_tol)?,
        trimming: surface.trim_log().to_vec(),
        table,
        skipped,
        corollaries: surface.corollary_predicates(config.class_samples(), config.class_tol)?,
    })
}

/// Writes `report.json`.
pub fn run_report(config: &RunConfig) -> CliResult<(PathBuf, Report)> {
    let report = build_report(config)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    let path = write_output(&config.out, "report.json", &text)?;
    Ok((path, report))
}
