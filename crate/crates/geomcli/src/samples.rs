//! CSV table of surface samples.

use std::fmt::Write;
use std::path::PathBuf;

use cruled::{CSurface, CurveEval};
use rayon::prelude::*;

use crate::config::{
    build_surface, is_skippable, snapped_grid, write_output, CliResult, RunConfig,
};
use crate::format::{g17, g17_opt};

pub const CSV_HEADER: &str = "s,v,x,y,z,E,F,G,L,M,N,K,H,f,g,P,v_star,kg,kn,tg";

fn soft<T>(r: cruled::Result<T>) -> cruled::Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e) if is_skippable(&e) => Ok(None),
        Err(e) => Err(e),
    }
}

fn rows_at(surface: &CSurface, s: f64, vs: &[f64]) -> cruled::Result<String> {
    let app = surface.apparatus(s)?;
    let ruling = soft(surface.ruling_data(s))?;
    let base = soft(surface.base_curvatures_oriented(s))?;
    let mut per_s = vec![
        Some(app.f),
        Some(app.g),
        ruling.map(|r| r.p),
        ruling.map(|r| r.v_star),
    ];
    per_s.extend((0..3).map(|i| base.map(|b| b.as_array()[i])));
    let per_s: Vec<String> = per_s.into_iter().map(g17_opt).collect();
    let per_s = per_s.join(",");

    let mut out = String::new();
    for &v in vs {
        let p = surface.base().point(s)? + v * app.c;
        let a = app.sin_theta + v * app.g;
        // first fundamental form is defined even where the surface is singular
        let first = [
            v * v * app.f * app.f + app.cos_theta * app.cos_theta + a * a,
            -app.cos_theta,
            1.0,
        ];
        let second =
            soft(CSurface::forms_from_apparatus(&app, s, v))?.map(|b| [b.l, b.m, b.n, b.k, b.h]);
        let mut cells: Vec<String> = [s, v, p.x, p.y, p.z]
            .into_iter()
            .chain(first)
            .map(g17)
            .collect();
        cells.extend((0..5).map(|i| g17_opt(second.map(|x| x[i]))));
        writeln!(out, "{},{per_s}", cells.join(",")).expect("string write");
    }
    Ok(out)
}

/// CSV text ordered by `(s, v)`. Trimmed s samples move to the nearest
/// excision edge; undefined cells are empty.
pub fn samples_csv(surface: &CSurface, s_samples: usize, vs: &[f64]) -> CliResult<String> {
    let grid = snapped_grid(surface, s_samples)?;
    let blocks = grid
        .par_iter()
        .map(|g| rows_at(surface, g.used, vs))
        .collect::<cruled::Result<Vec<_>>>()?;
    let mut out = String::with_capacity(blocks.iter().map(String::len).sum::<usize>() + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for b in blocks {
        out.push_str(&b);
    }
    Ok(out)
}

/// Writes `samples.csv`.
pub fn export_samples(config: &RunConfig) -> CliResult<PathBuf> {
    let (_, surface) = build_surface(config)?;
    let text = samples_csv(&surface, config.s_samples, &config.v_grid())?;
    write_output(&config.out, "samples.csv", &text)
}
