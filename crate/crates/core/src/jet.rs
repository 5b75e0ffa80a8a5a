//! Truncated Taylor jets in one variable.
//!
//! A [`ScalarJet`] carries a value together with its first few derivatives
//! with respect to a single parameter. Entry `k` is the k-th derivative itself,
//! not the Taylor coefficient `f^(k)/k!`, so frame formulas can read `α′`, `α″`
//! straight off the jet.
//!
//! Every operation is closed under the jet order: entry `k` of a result only
//! depends on entries `0..=k` of the operands. Binary operations truncate to the
//! smaller order of their operands.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use nalgebra::Vector3;

/// Highest derivative order a jet can carry.
pub const MAX_ORDER: usize = 5;

const LEN: usize = MAX_ORDER + 1;

const BINOMIAL: [[f64; LEN + 1]; LEN + 1] = [
    [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0, 0.0, 0.0],
    [1.0, 5.0, 10.0, 10.0, 5.0, 1.0, 0.0],
    [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0],
];

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

#[inline]
fn binom(n: usize, k: usize) -> f64 {
    BINOMIAL[n][k]
}

/// A scalar value with derivatives up to [`ScalarJet::order`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarJet {
    d: [f64; LEN],
    order: usize,
}

impl ScalarJet {
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut d = [0.0; LEN];
        d[0] = value;
        Self { d, order }
    }

    /// The independent variable itself, `x ↦ x`, at `value`.
    pub fn variable(value: f64, order: usize) -> Self {
        let mut jet = Self::constant(value, order);
        if order >= 1 {
            jet.d[1] = 1.0;
        }
        jet
    }

    /// Builds a jet from plain derivative values; the order is `derivs.len() - 1`.
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        assert!(
            !derivs.is_empty() && derivs.len() <= LEN,
            "a jet needs between 1 and {LEN} entries"
        );
        let mut d = [0.0; LEN];
        d[..derivs.len()].copy_from_slice(derivs);
        Self {
            d,
            order: derivs.len() - 1,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.d[0]
    }

    /// The k-th derivative, or zero beyond the carried order.
    pub fn derivative(&self, k: usize) -> f64 {
        if k <= self.order {
            self.d[k]
        } else {
            0.0
        }
    }

    pub(crate) fn set_derivative(&mut self, k: usize, value: f64) {
        debug_assert!(k <= self.order);
        self.d[k] = value;
    }

    pub fn derivatives(&self) -> &[f64] {
        &self.d[..=self.order]
    }

    pub fn is_finite(&self) -> bool {
        self.derivatives().iter().all(|x| x.is_finite())
    }

    pub fn truncate(mut self, order: usize) -> Self {
        let order = order.min(self.order);
        for k in order + 1..LEN {
            self.d[k] = 0.0;
        }
        self.order = order;
        self
    }

    /// The jet of the first derivative. Loses one order.
    pub fn differentiate(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let mut d = [0.0; LEN];
        d[..self.order].copy_from_slice(&self.d[1..=self.order]);
        Self {
            d,
            order: self.order - 1,
        }
    }

    /// The antiderivative taking `value` at the expansion point. Gains one order,
    /// up to [`MAX_ORDER`].
    pub fn integrate(&self, value: f64) -> Self {
        let order = (self.order + 1).min(MAX_ORDER);
        let mut d = [0.0; LEN];
        d[0] = value;
        d[1..=order].copy_from_slice(&self.d[..order]);
        Self { d, order }
    }

    pub fn recip(&self) -> Self {
        Self::constant(1.0, self.order) / *self
    }

    pub fn sqrt(&self) -> Self {
        // w² = u  ⇒  2 w w^(n) = u^(n) − Σ_{k=1}^{n-1} C(n,k) w^(k) w^(n−k)
        let mut w = Self::constant(self.d[0].sqrt(), self.order);
        for n in 1..=self.order {
            let mut acc = self.d[n];
            for k in 1..n {
                acc -= binom(n, k) * w.d[k] * w.d[n - k];
            }
            w.d[n] = acc / (2.0 * w.d[0]);
        }
        w
    }

    pub fn exp(&self) -> Self {
        // w′ = w u′
        let mut w = Self::constant(self.d[0].exp(), self.order);
        for n in 0..self.order {
            let mut acc = 0.0;
            for k in 0..=n {
                acc += binom(n, k) * w.d[k] * self.d[n - k + 1];
            }
            w.d[n + 1] = acc;
        }
        w
    }

    pub fn ln(&self) -> Self {
        if self.order == 0 {
            return Self::constant(self.d[0].ln(), 0);
        }
        (self.differentiate() / self.truncate(self.order - 1)).integrate(self.d[0].ln())
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let (s0, c0) = self.d[0].sin_cos();
        let mut s = Self::constant(s0, self.order);
        let mut c = Self::constant(c0, self.order);
        for n in 0..self.order {
            let (mut ds, mut dc) = (0.0, 0.0);
            for k in 0..=n {
                let b = binom(n, k) * self.d[n - k + 1];
                ds += b * c.d[k];
                dc -= b * s.d[k];
            }
            s.d[n + 1] = ds;
            c.d[n + 1] = dc;
        }
        (s, c)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Self {
        // w′ = (1 + w²) u′, where p = 1 + w² only needs w up to the current entry.
        let mut w = Self::constant(self.d[0].tan(), self.order);
        let mut p = [0.0; LEN];
        for n in 0..self.order {
            let mut pn = if n == 0 { 1.0 } else { 0.0 };
            for j in 0..=n {
                pn += binom(n, j) * w.d[j] * w.d[n - j];
            }
            p[n] = pn;
            w.d[n + 1] = p[..=n]
                .iter()
                .enumerate()
                .map(|(k, pk)| binom(n, k) * pk * self.d[n - k + 1])
                .sum();
        }
        w
    }

    pub fn atan(&self) -> Self {
        if self.order == 0 {
            return Self::constant(self.d[0].atan(), 0);
        }
        let u = self.truncate(self.order - 1);
        (self.differentiate() / (u * u + 1.0)).integrate(self.d[0].atan())
    }

    pub fn powi(&self, exponent: u32) -> Self {
        let mut result = Self::constant(1.0, self.order);
        let mut base = *self;
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        result
    }

    /// Evaluates `outer ∘ inner`, where `outer` holds derivatives with respect to
    /// its own argument at `inner.value()`.
    pub fn compose(outer: &Self, inner: &Self) -> Self {
        let order = outer.order.min(inner.order);
        let mut delta = inner.truncate(order);
        delta.d[0] = 0.0;
        let mut power = Self::constant(1.0, order);
        let mut out = Self::constant(outer.d[0], order);
        for (k, fact) in FACTORIAL.iter().enumerate().take(order + 1).skip(1) {
            power = power * delta;
            let c = outer.d[k] / fact;
            for n in 0..=order {
                out.d[n] += c * power.d[n];
            }
        }
        out
    }
}

impl Add for ScalarJet {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::constant(0.0, order);
        for k in 0..=order {
            out.d[k] = self.d[k] + rhs.d[k];
        }
        out
    }
}

impl AddAssign for ScalarJet {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for ScalarJet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ScalarJet {
    type Output = Self;
    fn neg(mut self) -> Self {
        for x in self.d.iter_mut() {
            *x = -*x;
        }
        self
    }
}

impl Mul for ScalarJet {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::constant(0.0, order);
        for n in 0..=order {
            let mut acc = 0.0;
            for k in 0..=n {
                acc += binom(n, k) * self.d[k] * rhs.d[n - k];
            }
            out.d[n] = acc;
        }
        out
    }
}

impl Div for ScalarJet {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // u = q v  ⇒  q^(n) = (u^(n) − Σ_{k<n} C(n,k) q^(k) v^(n−k)) / v
        let order = self.order.min(rhs.order);
        let mut q = Self::constant(0.0, order);
        for n in 0..=order {
            let mut acc = self.d[n];
            for k in 0..n {
                acc -= binom(n, k) * q.d[k] * rhs.d[n - k];
            }
            q.d[n] = acc / rhs.d[0];
        }
        q
    }
}

impl Add<f64> for ScalarJet {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.d[0] += rhs;
        self
    }
}

impl Sub<f64> for ScalarJet {
    type Output = Self;
    fn sub(mut self, rhs: f64) -> Self {
        self.d[0] -= rhs;
        self
    }
}

impl Mul<f64> for ScalarJet {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        for k in 0..=self.order {
            self.d[k] *= rhs;
        }
        self
    }
}

impl Div<f64> for ScalarJet {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: f64) -> Self {
        self * rhs.recip()
    }
}

/// A 3-vector of scalar jets sharing one order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VecJet {
    pub x: ScalarJet,
    pub y: ScalarJet,
    pub z: ScalarJet,
}

impl VecJet {
    /// Panics if the components disagree in order.
    pub fn new(x: ScalarJet, y: ScalarJet, z: ScalarJet) -> Self {
        assert!(
            x.order == y.order && y.order == z.order,
            "vector jet components must share one order"
        );
        Self { x, y, z }
    }

    pub fn constant(v: &Vector3<f64>, order: usize) -> Self {
        Self::new(
            ScalarJet::constant(v.x, order),
            ScalarJet::constant(v.y, order),
            ScalarJet::constant(v.z, order),
        )
    }

    pub fn order(&self) -> usize {
        self.x.order
    }

    pub fn value(&self) -> Vector3<f64> {
        self.derivative(0)
    }

    pub fn derivative(&self, k: usize) -> Vector3<f64> {
        Vector3::new(
            self.x.derivative(k),
            self.y.derivative(k),
            self.z.derivative(k),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.x.truncate(order),
            self.y.truncate(order),
            self.z.truncate(order),
        )
    }

    pub fn differentiate(&self) -> Self {
        Self::new(
            self.x.differentiate(),
            self.y.differentiate(),
            self.z.differentiate(),
        )
    }

    pub fn dot(&self, rhs: &Self) -> ScalarJet {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(&self, rhs: &Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm(&self) -> ScalarJet {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, k: ScalarJet) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn map(&self, f: impl Fn(ScalarJet) -> ScalarJet) -> Self {
        Self::new(f(self.x), f(self.y), f(self.z))
    }
}

impl Add for VecJet {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for VecJet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for VecJet {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}
