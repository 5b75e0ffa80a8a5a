//! Run configuration, curve loading and sample grids.

use std::path::{Path, PathBuf};

use clap::Args;
use cruled::curve::linspace;
use cruled::{builtin_curve, make_c_surface, parse_curve_spec, CSurface, Convention, CurveDef};
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_S_SAMPLES: usize = 32;
pub const DEFAULT_V_MIN: f64 = -1.0;
pub const DEFAULT_V_MAX: f64 = 1.0;
pub const DEFAULT_V_SAMPLES: usize = 5;
pub const DEFAULT_TOL: f64 = 1e-5;
pub const DEFAULT_FRAME_TOL: f64 = 1e-8;
pub const DEFAULT_CLASS_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] cruled::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    /// Built-in curve (example-4.1, example-4.2, circle, helix:a:b) or a curve-spec JSON path.
    #[arg(long)]
    pub curve: String,
    /// Number of equispaced s samples over the curve domain.
    #[arg(long, default_value_t = DEFAULT_S_SAMPLES)]
    pub s_samples: usize,
    #[arg(long, default_value_t = DEFAULT_V_MIN, allow_hyphen_values = true)]
    pub v_min: f64,
    #[arg(long, default_value_t = DEFAULT_V_MAX, allow_hyphen_values = true)]
    pub v_max: f64,
    #[arg(long, default_value_t = DEFAULT_V_SAMPLES)]
    pub v_samples: usize,
    /// Finite-difference step of the oracle.
    #[arg(long, default_value_t = cruled::oracle::DEFAULT_FD_STEP)]
    pub fd_step: f64,
    /// Closed-form versus oracle tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Frame ODE residual tolerance.
    #[arg(long, default_value_t = DEFAULT_FRAME_TOL)]
    pub frame_tol: f64,
    /// Threshold for curve classification and corollary predicates.
    #[arg(long, default_value_t = DEFAULT_CLASS_TOL)]
    pub class_tol: f64,
    #[arg(long, default_value_t = Convention::Smooth)]
    pub convention: Convention,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    #[serde(skip)]
    pub out: PathBuf,
    /// Also write the striction line as an OBJ polyline (mesh only).
    #[arg(long)]
    #[serde(skip)]
    pub striction: bool,
}

impl RunConfig {
    /// Defaults for `curve`, matching the command-line defaults.
    pub fn new(curve: impl Into<String>) -> Self {
        Self {
            curve: curve.into(),
            s_samples: DEFAULT_S_SAMPLES,
            v_min: DEFAULT_V_MIN,
            v_max: DEFAULT_V_MAX,
            v_samples: DEFAULT_V_SAMPLES,
            fd_step: cruled::oracle::DEFAULT_FD_STEP,
            tol: DEFAULT_TOL,
            frame_tol: DEFAULT_FRAME_TOL,
            class_tol: DEFAULT_CLASS_TOL,
            convention: Convention::Smooth,
            out: PathBuf::from("out"),
            striction: false,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.s_samples < 2 || self.v_samples < 2 {
            return bad(format!(
                "sample counts must be at least 2 (s: {}, v: {})",
                self.s_samples, self.v_samples
            ));
        }
        for (name, value) in [
            ("fd-step", self.fd_step),
            ("tol", self.tol),
            ("frame-tol", self.frame_tol),
            ("class-tol", self.class_tol),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return bad(format!("--{name} must be positive and finite, got {value}"));
            }
        }
        if !(self.v_min < self.v_max && self.v_min.is_finite() && self.v_max.is_finite()) {
            return bad(format!("empty v range [{}, {}]", self.v_min, self.v_max));
        }
        Ok(())
    }

    pub fn v_grid(&self) -> Vec<f64> {
        linspace(self.v_min, self.v_max, self.v_samples)
    }

    /// Classification and predicate sample count.
    pub fn class_samples(&self) -> usize {
        self.s_samples.max(64)
    }
}

/// Resolves a built-in name, falling back to a curve-spec file.
pub fn load_curve(source: &str) -> CliResult<CurveDef> {
    match builtin_curve(source) {
        Ok(curve) => Ok(curve),
        Err(builtin_err) => {
            let path = Path::new(source);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                    path: path.to_path_buf(),
                    source: e,
                })?;
                Ok(parse_curve_spec(&text)?)
            } else if source.starts_with("helix:") {
                Err(builtin_err.into())
            } else {
                Err(CliError::Config(format!(
                    "`{source}` is neither a built-in curve nor a readable file"
                )))
            }
        }
    }
}

/// Validates `config` and builds its surface.
pub fn build_surface(config: &RunConfig) -> CliResult<(CurveDef, CSurface)> {
    config.validate()?;
    let curve = load_curve(&config.curve)?;
    let surface = make_c_surface(
        curve.clone(),
        config.convention,
        (config.v_min, config.v_max),
    )?;
    if surface.domain().is_empty() {
        return Err(CliError::Config(format!(
            "curve `{}` is trimmed everywhere",
            curve.name()
        )));
    }
    Ok((curve, surface))
}

/// Description of the input curve for output documents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveInfo {
    pub name: String,
    pub components: Vec<String>,
    pub domain: [f64; 2],
    pub assume_unit_speed: bool,
    pub reparameterized: bool,
}

impl CurveInfo {
    pub fn new(curve: &CurveDef, surface: &CSurface) -> Self {
        let spec = curve.to_spec();
        Self {
            name: spec.name,
            components: spec.components,
            domain: [spec.domain[0], spec.domain[1]],
            assume_unit_speed: spec.assume_unit_speed,
            reparameterized: surface.base().is_reparameterized(),
        }
    }
}

/// How curve-on-surface curvatures are normalized, stated in every document.
pub const NORMALIZATION: &str = "curve-on-surface curvatures use the local unit-speed \
reparameterization of each curve (chain rule on finite differences)";

/// One s sample of a mesh or table row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridS {
    pub requested: f64,
    pub used: f64,
}

impl GridS {
    pub fn snapped(&self) -> bool {
        self.requested != self.used
    }
}

/// `n` equispaced samples of the domain, with trimmed samples moved to the
/// nearest usable excision edge.
pub fn snapped_grid(surface: &CSurface, n: usize) -> CliResult<Vec<GridS>> {
    let d = surface.domain();
    linspace(d.start, d.end, n)
        .into_iter()
        .map(|s| {
            d.nearest_valid(s)
                .map(|used| GridS { requested: s, used })
                .ok_or_else(|| CliError::Config(format!("no usable parameter near {s}")))
        })
        .collect()
}

/// Writes `contents` to `dir/name`, creating `dir`.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |e| CliError::Io { path, source: e }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(io(&path))?;
    Ok(path)
}

/// Errors that mark a sample as skipped rather than failing a run.
pub fn is_skippable(e: &cruled::Error) -> bool {
    use cruled::Error::*;
    matches!(
        e,
        Trimmed { .. }
            | SingularPoint { .. }
            | DegenerateDenominator { .. }
            | DegenerateTangentPlane { .. }
            | CylindricalRuling { .. }
            | FrameUndefined { .. }
            | NonRegularCurve { .. }
    )
}
