//! OBJ export of the surface grid and the striction polyline.

use std::fmt::Write;
use std::path::PathBuf;

use cruled::CSurface;
use rayon::prelude::*;

use crate::config::{
    build_surface, is_skippable, snapped_grid, write_output, CliResult, RunConfig,
};
use crate::format::g17;

#[derive(Clone, Debug, PartialEq)]
pub struct MeshFiles {
    pub surface: PathBuf,
    pub striction: Option<PathBuf>,
}

fn vertex_line(out: &mut String, p: &nalgebra::Vector3<f64>) {
    writeln!(out, "v {} {} {}", g17(p.x), g17(p.y), g17(p.z)).expect("string write");
}

/// The `Ns × Nv` grid as OBJ text: vertices row-major in s then v, and two
/// triangles per cell. Trimmed s samples are moved to the nearest excision edge.
pub fn surface_obj(surface: &CSurface, s_samples: usize, vs: &[f64]) -> CliResult<String> {
    let grid = snapped_grid(surface, s_samples)?;
    let rows = grid
        .par_iter()
        .map(|g| {
            vs.iter()
                .map(|&v| surface.eval_point(g.used, v))
                .collect::<cruled::Result<Vec<_>>>()
        })
        .collect::<cruled::Result<Vec<_>>>()?;
    let (ns, nv) = (grid.len(), vs.len());
    let mut out = String::new();
    writeln!(
        out,
        "# C-ruled surface of {}, {ns} x {nv} grid",
        surface.base().definition().name()
    )
    .expect("string write");
    let snapped = grid.iter().filter(|g| g.snapped()).count();
    if snapped > 0 {
        writeln!(
            out,
            "# {snapped} s samples moved out of trimmed neighbourhoods"
        )
        .expect("string write");
    }
    for p in rows.iter().flatten() {
        vertex_line(&mut out, p);
    }
    let index = |i: usize, j: usize| i * nv + j + 1;
    for i in 0..ns.saturating_sub(1) {
        for j in 0..nv.saturating_sub(1) {
            let (a, b, c, d) = (
                index(i, j),
                index(i, j + 1),
                index(i + 1, j),
                index(i + 1, j + 1),
            );
            writeln!(out, "f {a} {c} {d}").expect("string write");
            writeln!(out, "f {a} {d} {b}").expect("string write");
        }
    }
    Ok(out)
}

/// The striction line over the untrimmed samples as OBJ polylines, one `l`
/// run per untrimmed piece.
pub fn striction_obj(surface: &CSurface, s_samples: usize) -> CliResult<String> {
    let ss = surface.valid_samples(s_samples);
    let points = ss
        .par_iter()
        .map(|&s| match surface.striction_line(s) {
            Ok(line) => Ok(Some(line.point)),
            Err(e) if is_skippable(&e) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<cruled::Result<Vec<_>>>()?;
    let mut out = String::new();
    writeln!(
        out,
        "# striction line of {}",
        surface.base().definition().name()
    )
    .expect("string write");
    let mut runs: Vec<Vec<usize>> = Vec::new();
    let mut count = 0;
    let mut previous: Option<f64> = None;
    for (&s, p) in ss.iter().zip(&points) {
        let Some(p) = p else {
            previous = None;
            continue;
        };
        vertex_line(&mut out, p);
        count += 1;
        match previous {
            Some(prev) if !surface.domain().separates(prev, s) => {
                runs.last_mut().expect("open run").push(count)
            }
            _ => runs.push(vec![count]),
        }
        previous = Some(s);
    }
    for run in runs.iter().filter(|r| r.len() >= 2) {
        let ids: Vec<String> = run.iter().map(usize::to_string).collect();
        writeln!(out, "l {}", ids.join(" ")).expect("string write");
    }
    Ok(out)
}

/// Writes `surface.obj` and, if requested, `striction.obj`.
pub fn export_mesh(config: &RunConfig) -> CliResult<MeshFiles> {
    let (_, surface) = build_surface(config)?;
    let text = surface_obj(&surface, config.s_samples, &config.v_grid())?;
    let surface_path = write_output(&config.out, "surface.obj", &text)?;
    let striction = if config.striction {
        let text = striction_obj(&surface, config.s_samples)?;
        Some(write_output(&config.out, "striction.obj", &text)?)
    } else {
        None
    };
    Ok(MeshFiles {
        surface: surface_path,
        striction,
    })
}
