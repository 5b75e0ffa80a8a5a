//! Arc-length reparameterization.
//!
//! The speed `‖α′(t)‖` is integrated adaptively into a table of knots with
//! cumulative lengths. Inside a knot segment the partial length is a fixed
//! Gauss–Legendre rule on `[t_k, t]`, which keeps `s ↦ t(s)` smooth to rounding
//! so finite differences of the reparameterized curve stay clean. Derivatives of
//! `β(s) = α(t(s))` come from the inverse-function jet `t′ = 1/‖α′(t)‖`
//! composed with the jet of `α`.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::curve::{check_domain, linspace, CurveEval};
use crate::error::{Error, Result};
use crate::jet::{ScalarJet, VecJet};

pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-10;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Curves slower than this anywhere are not reparameterized.
pub const MIN_SPEED: f64 = 1e-8;

/// Floor on the table refinement target. Jets use the exact speed while
/// positions invert the table, so the table error must also be small in
/// derivative, not only in value.
const TABLE_TOL: f64 = 1e-13;
const RULE_POINTS: usize = 16;
const MIN_SEGMENTS: usize = 16;
const MAX_DEPTH: usize = 40;

/// A curve reparameterized by arc length on `[0, L]`.
#[derive(Clone, Debug)]
pub struct ArcLengthCurve<C> {
    inner: C,
    knots: Vec<f64>,
    cumulative: Vec<f64>,
    rule: GaussLegendre,
    root_tol: f64,
}

impl<C: CurveEval> ArcLengthCurve<C> {
    pub fn new(inner: C, quadrature_tol: f64) -> Result<Self> {
        Self::with_tolerances(inner, quadrature_tol, DEFAULT_ROOT_TOL)
    }

    pub fn with_tolerances(inner: C, quadrature_tol: f64, root_tol: f64) -> Result<Self> {
        if !(quadrature_tol > 0.0 && root_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        let (t0, t1) = inner.domain();
        for t in linspace(t0, t1, 1025) {
            let speed = inner.speed(t)?;
            if speed < MIN_SPEED {
                return Err(Error::NonRegularCurve { s: t, speed });
            }
        }

        let rule = GaussLegendre::new(NonZeroUsize::new(RULE_POINTS).unwrap());
        let mut this = Self {
            inner,
            knots: vec![t0],
            cumulative: vec![0.0],
            rule,
            root_tol,
        };
        let starts = linspace(t0, t1, MIN_SEGMENTS + 1);
        let width = t1 - t0;
        for w in starts.windows(2) {
            let whole = this.segment_length(w[0], w[1])?;
            this.refine(w[0], w[1], whole, quadrature_tol.min(TABLE_TOL) / width, 0)?;
        }
        Ok(this)
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Knot parameters of the inner curve and cumulative lengths at them.
    pub fn table(&self) -> (&[f64], &[f64]) {
        (&self.knots, &self.cumulative)
    }

    fn segment_length(&self, a: f64, b: f64) -> Result<f64> {
        let mut err = None;
        let value = self.rule.integrate(a, b, |t| match self.inner_speed(t) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }

    fn inner_speed(&self, t: f64) -> Result<f64> {
        Ok(self.inner.jet_extended(t, 1)?.derivative(1).norm())
    }

    fn refine(&mut self, a: f64, b: f64, whole: f64, density: f64, depth: usize) -> Result<()> {
        let m = 0.5 * (a + b);
        let left = self.segment_length(a, m)?;
        let right = self.segment_length(m, b)?;
        let converged = (left + right - whole).abs() <= density * (b - a);
        if !converged && depth >= MAX_DEPTH {
            return Err(Error::InvalidArgument(format!(
                "arc-length quadrature did not converge near t = {m}"
            )));
        }
        if converged {
            let base = *self.cumulative.last().unwrap();
            self.knots.push(m);
            self.cumulative.push(base + left);
            self.knots.push(b);
            self.cumulative.push(base + left + right);
            return Ok(());
        }
        self.refine(a, m, left, density, depth + 1)?;
        self.refine(m, b, right, density, depth + 1)
    }

    /// Arc length from the start of the inner domain to `t`.
    pub fn arc_length_at(&self, t: f64) -> Result<f64> {
        check_domain(t, self.inner.domain())?;
        let k = self.segment_of(&self.knots, t);
        Ok(self.cumulative[k] + self.segment_length(self.knots[k], t)?)
    }

    fn segment_of(&self, table: &[f64], x: f64) -> usize {
        table
            .partition_point(|&v| v <= x)
            .saturating_sub(1)
            .min(table.len() - 2)
    }

    /// Inner parameter `t` at arc length `s`.
    pub fn parameter_at(&self, s: f64) -> Result<f64> {
        check_domain(s, self.domain())?;
        let s = s.clamp(0.0, self.length());
        let k = self.segment_of(&self.cumulative, s);
        let (mut lo, mut hi) = (self.knots[k], self.knots[k + 1]);
        let (s_lo, s_hi) = (self.cumulative[k], self.cumulative[k + 1]);
        let mut t = lo + (hi - lo) * (s - s_lo) / (s_hi - s_lo);
        let mut polish = false;
        for _ in 0..100 {
            let residual = s_lo + self.segment_length(self.knots[k], t)? - s;
            if residual == 0.0 {
                break;
            }
            if residual > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = residual / self.inner.speed(t)?;
            let mut next = t - step;
            if !(next >= lo && next <= hi) {
                next = 0.5 * (lo + hi);
            }
            let moved = (next - t).abs();
            t = next;
            if polish {
                break;
            }
            if moved <= self.root_tol * t.abs().max(1.0) {
                // one extra Newton step lands on rounding level
                polish = true;
            }
        }
        Ok(t)
    }

    /// Inner parameter at arc length `s`, continued past `[0, L]` by Newton
    /// steps from the nearest end.
    fn parameter_extended(&self, s: f64) -> Result<f64> {
        let length = self.length();
        if (0.0..=length).contains(&s) {
            return self.parameter_at(s);
        }
        let last = self.knots.len() - 2;
        let k = if s < 0.0 { 0 } else { last };
        let mut t = if s < 0.0 {
            self.knots[0]
        } else {
            self.knots[last + 1]
        };
        for _ in 0..50 {
            let residual = self.cumulative[k] + self.segment_length(self.knots[k], t)? - s;
            let step = residual / self.inner_speed(t)?;
            t -= step;
            if step.abs() <= self.root_tol * t.abs().max(1.0) {
                break;
            }
        }
        Ok(t)
    }

    fn jet_at(&self, t0: f64, order: usize) -> Result<VecJet> {
        let alpha = self.inner.jet_extended(t0, order)?;
        if order == 0 {
            return Ok(alpha);
        }
        // t′(s) = 1/σ(t(s)), solved one order at a time.
        let inv_speed = alpha.differentiate().norm().recip();
        let mut t = ScalarJet::constant(t0, order);
        for n in 0..order {
            let rate = ScalarJet::compose(&inv_speed, &t);
            t.set_derivative(n + 1, rate.derivative(n));
        }
        Ok(alpha.map(|c| ScalarJet::compose(&c, &t)))
    }
}

impl<C: CurveEval> CurveEval for ArcLengthCurve<C> {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.length())
    }

    fn jet(&self, s: f64, order: usize) -> Result<VecJet> {
        self.jet_at(self.parameter_at(s)?, order)
    }

    fn jet_extended(&self, s: f64, order: usize) -> Result<VecJet> {
        self.jet_at(self.parameter_extended(s)?, order)
    }
}

/// Wraps `curve` in its arc-length reparameterization.
pub fn arc_length_reparameterize<C: CurveEval>(curve: C, tol: f64) -> Result<ArcLengthCurve<C>> {
    ArcLengthCurve::new(curve, tol)
}
