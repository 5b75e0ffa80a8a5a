//! Command-line front end for C-ruled surfaces.
//!
//! Four subcommands share one [`RunConfig`]:
//!
//! * `report` writes `report.json` with the per-s invariants, curve class,
//!   trimming log and corollary predicates.
//! * `mesh` writes `surface.obj` and optionally `striction.obj`.
//! * `samples` writes `samples.csv`.
//! * `verify` writes `verification.json` and exits nonzero iff a gold check fails.

pub mod config;
pub mod format;
pub mod mesh;
pub mod printed;
pub mod report;
pub mod samples;
pub mod verify;

pub use config::{build_surface, load_curve, CliError, CliResult, RunConfig};
pub use mesh::export_mesh;
pub use report::run_report;
pub use samples::export_samples;
pub use verify::{run_verify, verify, Severity, Status, VerificationRecord};
