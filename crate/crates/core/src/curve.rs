//! Curve definitions, derivative evaluation and the unit-speed guard.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{ScalarJet, VecJet, MAX_ORDER};
use crate::reparam::ArcLengthCurve;

/// Anything that can produce derivative jets of a space curve.
pub trait CurveEval: Send + Sync {
    fn domain(&self) -> (f64, f64);

    /// Position and derivatives up to `order` at parameter `s`.
    fn jet(&self, s: f64, order: usize) -> Result<VecJet>;

    fn point(&self, s: f64) -> Result<Vector3<f64>> {
        Ok(self.jet(s, 0)?.value())
    }

    fn speed(&self, s: f64) -> Result<f64> {
        Ok(self.jet(s, 1)?.derivative(1).norm())
    }

    /// Like [`CurveEval::jet`], but continues the curve past the domain ends
    /// where its definition allows. Finite-difference stencils use this near the
    /// ends of the domain.
    fn jet_extended(&self, s: f64, order: usize) -> Result<VecJet> {
        self.jet(s, order)
    }
}

/// Rejects parameters outside `[s0, s1]`, with a few ulps of slack at the ends.
pub(crate) fn check_domain(s: f64, (s0, s1): (f64, f64)) -> Result<()> {
    let slack = 1e-12 * (1.0 + s0.abs().max(s1.abs()));
    if !s.is_finite() || s < s0 - slack || s > s1 + slack {
        return Err(Error::OutOfDomain { s, s0, s1 });
    }
    Ok(())
}

/// `n` equispaced parameters covering `[a, b]`, with both ends exact.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// On-disk curve description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub components: Vec<String>,
    pub domain: Vec<f64>,
    #[serde(default)]
    pub assume_unit_speed: bool,
}

/// A parsed analytic space curve `s ↦ (x(s), y(s), z(s))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveDef {
    name: String,
    sources: [String; 3],
    components: [Expr; 3],
    domain: (f64, f64),
    assume_unit_speed: bool,
}

impl CurveDef {
    pub fn new(
        name: impl Into<String>,
        components: [&str; 3],
        domain: (f64, f64),
        assume_unit_speed: bool,
    ) -> Result<Self> {
        Self::from_spec(&CurveSpec {
            name: name.into(),
            components: components.iter().map(|c| c.to_string()).collect(),
            domain: vec![domain.0, domain.1],
            assume_unit_speed,
        })
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Self> {
        if spec.components.len() != 3 {
            return Err(Error::MissingComponent {
                found: spec.components.len(),
            });
        }
        let [s0, s1] = match spec.domain.as_slice() {
            [a, b] => [*a, *b],
            _ => {
                return Err(Error::Spec(format!(
                    "domain must have 2 entries, found {}",
                    spec.domain.len()
                )))
            }
        };
        if !(s0.is_finite() && s1.is_finite() && s0 < s1) {
            return Err(Error::EmptyDomain { s0, s1 });
        }
        let parse = |i: usize| Expr::parse(&spec.components[i]);
        let curve = Self {
            name: spec.name.clone(),
            sources: [
                spec.components[0].clone(),
                spec.components[1].clone(),
                spec.components[2].clone(),
            ],
            components: [parse(0)?, parse(1)?, parse(2)?],
            domain: (s0, s1),
            assume_unit_speed: spec.assume_unit_speed,
        };
        for s in linspace(s0, s1, 64) {
            curve.jet(s, 0)?;
        }
        Ok(curve)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sources(&self) -> &[String; 3] {
        &self.sources
    }

    pub fn components(&self) -> &[Expr; 3] {
        &self.components
    }

    pub fn assume_unit_speed(&self) -> bool {
        self.assume_unit_speed
    }

    pub fn to_spec(&self) -> CurveSpec {
        CurveSpec {
            name: self.name.clone(),
            components: self.sources.to_vec(),
            domain: vec![self.domain.0, self.domain.1],
            assume_unit_speed: self.assume_unit_speed,
        }
    }
}

impl CurveEval for CurveDef {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn jet(&self, s: f64, order: usize) -> Result<VecJet> {
        if order > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "derivative order {order} exceeds {MAX_ORDER}"
            )));
        }
        check_domain(s, self.domain)?;
        self.jet_extended(s, order)
    }

    fn jet_extended(&self, s: f64, order: usize) -> Result<VecJet> {
        if order > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "derivative order {order} exceeds {MAX_ORDER}"
            )));
        }
        let var = ScalarJet::variable(s, order);
        let mut out = [ScalarJet::constant(0.0, order); 3];
        for (i, expr) in self.components.iter().enumerate() {
            let jet = expr.eval(&var);
            if !jet.is_finite() {
                return Err(Error::Singularity { s, component: i });
            }
            out[i] = jet;
        }
        Ok(VecJet::new(out[0], out[1], out[2]))
    }
}

/// Parses a curve-spec JSON document.
pub fn parse_curve_spec(document: &str) -> Result<CurveDef> {
    let spec: CurveSpec = serde_json::from_str(document).map_err(|e| Error::Spec(e.to_string()))?;
    CurveDef::from_spec(&spec)
}

pub fn eval_jet(curve: &CurveDef, s: f64, order: usize) -> Result<VecJet> {
    curve.jet(s, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitSpeedReport {
    pub passed: bool,
    pub max_deviation: f64,
}

/// Samples `|‖α′(s)‖ − 1|` at equispaced points.
pub fn unit_speed_check<C: CurveEval + ?Sized>(
    curve: &C,
    samples: usize,
    tol: f64,
) -> Result<UnitSpeedReport> {
    if samples < 2 {
        return Err(Error::InvalidArgument(
            "unit_speed_check needs ≥ 2 samples".into(),
        ));
    }
    let (s0, s1) = curve.domain();
    let mut max_deviation: f64 = 0.0;
    for s in linspace(s0, s1, samples) {
        max_deviation = max_deviation.max((curve.speed(s)? - 1.0).abs());
    }
    Ok(UnitSpeedReport {
        passed: max_deviation <= tol,
        max_deviation,
    })
}

/// Speed tolerance a declared arc-length curve must meet.
pub const UNIT_SPEED_TOL: f64 = 1e-8;

/// A curve known to be parameterized by arc length, either because it was
/// declared and checked so, or because it is wrapped by the reparameterizer.
#[derive(Clone, Debug)]
pub enum UnitSpeedCurve {
    Native(CurveDef),
    Reparameterized(ArcLengthCurve<CurveDef>),
}

impl UnitSpeedCurve {
    /// Curves flagged `assume_unit_speed` are checked on 256 samples; all others
    /// are reparameterized by arc length.
    pub fn new(curve: CurveDef) -> Result<Self> {
        if curve.assume_unit_speed() {
            let report = unit_speed_check(&curve, 256, UNIT_SPEED_TOL)?;
            if !report.passed {
                return Err(Error::NotUnitSpeed {
                    deviation: report.max_deviation,
                });
            }
            Ok(Self::Native(curve))
        } else {
            Ok(Self::Reparameterized(ArcLengthCurve::new(
                curve,
                crate::reparam::DEFAULT_QUADRATURE_TOL,
            )?))
        }
    }

    pub fn definition(&self) -> &CurveDef {
        match self {
            Self::Native(c) => c,
            Self::Reparameterized(c) => c.inner(),
        }
    }

    pub fn is_reparameterized(&self) -> bool {
        matches!(self, Self::Reparameterized(_))
    }
}

impl CurveEval for UnitSpeedCurve {
    fn domain(&self) -> (f64, f64) {
        match self {
            Self::Native(c) => c.domain(),
            Self::Reparameterized(c) => c.domain(),
        }
    }

    fn jet(&self, s: f64, order: usize) -> Result<VecJet> {
        match self {
            Self::Native(c) => c.jet(s, order),
            Self::Reparameterized(c) => c.jet(s, order),
        }
    }

    fn jet_extended(&self, s: f64, order: usize) -> Result<VecJet> {
        match self {
            Self::Native(c) => c.jet_extended(s, order),
            Self::Reparameterized(c) => c.jet_extended(s, order),
        }
    }
}
