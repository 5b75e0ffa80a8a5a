//! Named curves available without a spec file.

use std::f64::consts::PI;

use crate::curve::CurveDef;
use crate::error::{Error, Result};
use crate::families;

pub const BUILTIN_NAMES: [&str; 4] = ["example-4.1", "example-4.2", "circle", "helix:a:b"];

/// Resolves `example-4.1`, `example-4.2`, `circle` or `helix:<a>:<b>`.
pub fn builtin_curve(name: &str) -> Result<CurveDef> {
    match name {
        "example-4.1" => CurveDef::new(
            name,
            ["cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)"],
            (0.0, 4.0 * PI),
            true,
        ),
        "example-4.2" => CurveDef::new(
            name,
            [
                "3/sqrt(2)*sin(sqrt(2)*s)*cos(s) - 2*sin(s)*cos(sqrt(2)*s)",
                "3/sqrt(2)*cos(sqrt(2)*s)*cos(s) + 2*sin(s)*sin(sqrt(2)*s)",
                "-1/sqrt(2)*cos(s)",
            ],
            (0.0, 2.0 * PI),
            true,
        ),
        "circle" => CurveDef::new(name, ["cos(s)", "sin(s)", "0"], (0.0, 2.0 * PI), true),
        _ => match name.strip_prefix("helix:").and_then(|r| r.split_once(':')) {
            Some((a, b)) => {
                let parse = |x: &str| {
                    x.parse::<f64>().map_err(|_| {
                        Error::InvalidArgument(format!("bad helix parameter `{x}` in `{name}`"))
                    })
                };
                families::helix(parse(a)?, parse(b)?, (0.0, 4.0 * PI))
            }
            None => Err(Error::InvalidArgument(format!(
                "unknown built-in curve `{name}` (expected one of {})",
                BUILTIN_NAMES.join(", ")
            ))),
        },
    }
}
