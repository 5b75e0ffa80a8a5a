use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown function `{name}` at position {position}")]
    UnknownFunction { name: String, position: usize },

    #[error("expected exactly 3 components, found {found}")]
    MissingComponent { found: usize },

    #[error("empty domain [{s0}, {s1}]")]
    EmptyDomain { s0: f64, s1: f64 },

    #[error("malformed curve spec: {0}")]
    Spec(String),

    #[error("parameter {s} outside domain [{s0}, {s1}]")]
    OutOfDomain { s: f64, s0: f64, s1: f64 },

    #[error("parameter {s} lies in a trimmed neighbourhood [{lo}, {hi}]")]
    Trimmed { s: f64, lo: f64, hi: f64 },

    #[error("evaluation singularity in component {component} at s = {s}")]
    Singularity { s: f64, component: usize },

    #[error("curve is not unit speed: max |‖α′‖ − 1| = {deviation:e}")]
    NotUnitSpeed { deviation: f64 },

    #[error("curve is not regular at {s}: speed {speed:e}")]
    NonRegularCurve { s: f64, speed: f64 },

    #[error("Frenet frame undefined: |κ| = {kappa:e} below threshold")]
    FrameUndefined { kappa: f64 },

    #[error("degenerate base curve (straight line): f = {f:e}")]
    DegenerateBaseCurve { f: f64 },

    #[error("cylindrical ruling at s = {s}: ‖X′‖ = {norm:e}")]
    CylindricalRuling { s: f64, norm: f64 },

    #[error("degenerate tangent plane at ({s}, {v}): ‖φ_s × φ_v‖ = {norm:e}")]
    DegenerateTangentPlane { s: f64, v: f64, norm: f64 },

    #[error("singular surface point ({s}, {v}): EG − F² = {d:e}")]
    SingularPoint { s: f64, v: f64, d: f64 },

    #[error("degenerate denominator f² + g² = {value:e} at s = {s}")]
    DegenerateDenominator { s: f64, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
