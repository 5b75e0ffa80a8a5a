//! C-ruled surfaces of space curves.
//!
//! A curve `α(s)` with alternative moving frame `{N, C, W}` sweeps the ruled
//! surface `φ(s, v) = α(s) + v·C(s)`. This crate evaluates the surface and its
//! invariants in closed form from the alternative curvatures `f` and `g`, and
//! ships an independent finite-difference oracle that recomputes the same
//! quantities from nothing but surface points.
//!
//! ```
//! use cruled::{builtin_curve, make_c_surface, Convention};
//!
//! let curve = builtin_curve("example-4.1").unwrap();
//! let surface = make_c_surface(curve, Convention::Smooth, (-1.0, 1.0)).unwrap();
//! let forms = surface.forms_closed(0.0, 1.0).unwrap();
//! assert!((forms.k + 0.25).abs() < 1e-12);
//! ```
//!
//! Modules, bottom up:
//!
//! * [`jet`]: truncated Taylor jets to order 5.
//! * [`expr`], [`curve`], [`reparam`]: curve definitions, derivative
//!   evaluation and arc-length reparameterization.
//! * [`frame`]: Frenet and alternative frames, curve classification.
//! * [`oracle`]: generic ruled-surface geometry by finite differences.
//! * [`csurface`]: closed forms on C-ruled surfaces.
//! * [`builtin`], [`families`]: named curves and parameterized test families.

// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builtin;
pub mod csurface;
pub mod curve;
pub mod domain;
pub mod error;
pub mod expr;
pub mod families;
pub mod frame;
pub mod jet;
pub mod oracle;
pub mod reparam;

pub use builtin::builtin_curve;
pub use csurface::{make_c_surface, CSurface};
pub use curve::{parse_curve_spec, CurveDef, CurveEval, UnitSpeedCurve};
pub use error::{Error, Result};
pub use frame::{AltApparatus, Convention, CurveKind, FrenetData};
pub use jet::{ScalarJet, VecJet};
pub use oracle::{FormBundle, SurfaceCurveCurvatures};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/frames.md")]
    mod frames {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
