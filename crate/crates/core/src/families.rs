//! Parameterized curve families used for property checks.

use crate::curve::CurveDef;
use crate::error::{Error, Result};

fn num(x: f64) -> String {
    format!("({x:?})")
}

/// Unit-speed circular helix of radius `a` and pitch parameter `b`.
pub fn helix(a: f64, b: f64, domain: (f64, f64)) -> Result<CurveDef> {
    let c = (a * a + b * b).sqrt();
    if !(a > 0.0 && c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "helix needs a > 0, got a = {a}, b = {b}"
        )));
    }
    let (a, b, c) = (num(a), num(b), num(c));
    CurveDef::new(
        format!("helix({a},{b})"),
        [
            &format!("{a}*cos(s/{c})"),
            &format!("{a}*sin(s/{c})"),
            &format!("{b}*s/{c}"),
        ],
        domain,
        true,
    )
}

/// Planar epicycle `(A(cos t + e·cos kt), B(sin t + e·sin kt), 0)`.
///
/// Its signed curvature has the sign of `1 + e·k(k+1)·cos((k−1)t) + e²k³`
/// scaled by `AB`, so small `e` keeps it convex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Epicycle {
    pub amp_x: f64,
    pub amp_y: f64,
    pub e: f64,
    pub k: u32,
}

impl Epicycle {
    fn xy(&self) -> [String; 2] {
        let (ax, ay, e, k) = (num(self.amp_x), num(self.amp_y), num(self.e), self.k);
        [
            format!("{ax}*(cos(s) + {e}*cos({k}*s))"),
            format!("{ay}*(sin(s) + {e}*sin({k}*s))"),
        ]
    }

    /// Lower bound of `1 + e·k(k+1)·cos((k−1)t) + e²k³`.
    pub fn convexity_margin(&self) -> f64 {
        let k = self.k as f64;
        1.0 - self.e * k * (k + 1.0) + self.e * self.e * k.powi(3)
    }

    pub fn planar(&self, domain: (f64, f64)) -> Result<CurveDef> {
        let [x, y] = self.xy();
        CurveDef::new("epicycle", [&x, &y, "0"], domain, false)
    }

    /// Lifts the epicycle by `z = b·t + c·t² + d·sin(m·t)`.
    pub fn lifted(&self, [b, c, d]: [f64; 3], m: f64, domain: (f64, f64)) -> Result<CurveDef> {
        let [x, y] = self.xy();
        let z = format!(
            "{}*s + {}*s^2 + {}*sin({}*s)",
            num(b),
            num(c),
            num(d),
            num(m)
        );
        CurveDef::new("lifted-epicycle", [&x, &y, &z], domain, false)
    }
}

/// `(t, a·t², b·t³)`.
pub fn twisted_cubic(a: f64, b: f64, domain: (f64, f64)) -> Result<CurveDef> {
    CurveDef::new(
        "twisted-cubic",
        ["s", &format!("{}*s^2", num(a)), &format!("{}*s^3", num(b))],
        domain,
        false,
    )
}
