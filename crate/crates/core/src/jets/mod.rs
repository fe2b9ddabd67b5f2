//! Truncated Taylor series ("jets") at a single anchor point.
//!
//! A [`Jet`] of order `K` holds `c₀..c_K` with `f(anchor + h) = Σ c_k h^k + O(h^{K+1})`.
//! Binary operations truncate to the smaller order. Coefficient recursions
//! throughout the crate (integration by parts, Bleistein splits, reversion)
//! are written in terms of these operations.

mod expr;
mod split;

pub use expr::Expr;
pub use split::{NEAR_SPLIT, TwoPointSplit, two_point_split};

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{C64, Error, Result, c64};

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    anchor: C64,
    coeffs: Vec<C64>,
}

impl Jet {
    /// Jet from explicit Taylor coefficients. Panics on an empty vector.
    pub fn new(anchor: C64, coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { anchor, coeffs }
    }

    pub fn from_real(anchor: f64, coeffs: &[f64]) -> Self {
        Jet::new(c64(anchor, 0.0), coeffs.iter().map(|&c| c64(c, 0.0)).collect())
    }

    pub fn constant(anchor: C64, value: C64, order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = value;
        Jet { anchor, coeffs }
    }

    pub fn zero(anchor: C64, order: usize) -> Self {
        Jet::constant(anchor, ZERO, order)
    }

    /// The independent variable `t` expanded at `anchor`.
    pub fn variable(anchor: C64, order: usize) -> Self {
        let mut j = Jet::constant(anchor, anchor, order);
        if order >= 1 {
            j.coeffs[1] = c64(1.0, 0.0);
        }
        j
    }

    pub fn anchor(&self) -> C64 {
        self.anchor
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient `k`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn value(&self) -> C64 {
        self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = (order + 1).min(self.coeffs.len());
        Jet { anchor: self.anchor, coeffs: self.coeffs[..n].to_vec() }
    }

    fn check_anchor(&self, other: &Jet) {
        assert!(
            self.anchor == other.anchor,
            "jets anchored at {} and {} cannot be combined",
            self.anchor,
            other.anchor
        );
    }

    fn common_order(&self, other: &Jet) -> usize {
        self.check_anchor(other);
        self.order().min(other.order())
    }

    pub fn scale(&self, c: C64) -> Jet {
        Jet { anchor: self.anchor, coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    pub fn add_scalar(&self, c: C64) -> Jet {
        let mut j = self.clone();
        j.coeffs[0] += c;
        j
    }

    fn product(&self, other: &Jet) -> Jet {
        let k = self.common_order(other);
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=k).map(|n| (0..=n).map(|j| a[j] * b[n - j]).sum()).collect();
        Jet { anchor: self.anchor, coeffs }
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        let k = self.common_order(other);
        let b = &other.coeffs;
        if b[0] == ZERO {
            return Err(Error::ZeroConstantTerm { op: "div" });
        }
        let mut q: Vec<C64> = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let s: C64 = (1..=n).map(|j| b[j] * q[n - j]).sum();
            q.push((self.coeffs[n] - s) / b[0]);
        }
        Ok(Jet { anchor: self.anchor, coeffs: q })
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(self.anchor, c64(1.0, 0.0), self.order()).div(self).map_err(|_| Error::ZeroConstantTerm { op: "recip" })
    }

    pub fn exp(&self) -> Jet {
        let a = &self.coeffs;
        let mut b = Vec::with_capacity(a.len());
        b.push(a[0].exp());
        for k in 1..a.len() {
            let s: C64 = (1..=k).map(|j| a[j] * b[k - j] * j as f64).sum();
            b.push(s / k as f64);
        }
        Jet { anchor: self.anchor, coeffs: b }
    }

    /// Principal-branch logarithm.
    pub fn ln(&self) -> Result<Jet> {
        let a = &self.coeffs;
        if a[0] == ZERO {
            return Err(Error::ZeroConstantTerm { op: "log" });
        }
        let mut b = Vec::with_capacity(a.len());
        b.push(a[0].ln());
        for k in 1..a.len() {
            let s: C64 = (1..k).map(|j| b[j] * a[k - j] * j as f64).sum();
            b.push((a[k] * k as f64 - s) / (a[0] * k as f64));
        }
        Ok(Jet { anchor: self.anchor, coeffs: b })
    }

    /// Principal-branch power `f^p`.
    pub fn powc(&self, p: C64) -> Result<Jet> {
        let a = &self.coeffs;
        if a[0] == ZERO {
            return Err(Error::ZeroConstantTerm { op: "pow" });
        }
        let mut b = Vec::with_capacity(a.len());
        b.push(a[0].powc(p));
        for k in 1..a.len() {
            let s: C64 = (1..=k).map(|j| (p * j as f64 - (k - j) as f64) * a[j] * b[k - j]).sum();
            b.push(s / (a[0] * k as f64));
        }
        Ok(Jet { anchor: self.anchor, coeffs: b })
    }

    /// Principal-branch square root.
    pub fn sqrt(&self) -> Result<Jet> {
        self.powc(c64(0.5, 0.0)).map_err(|_| Error::ZeroConstantTerm { op: "sqrt" })
    }

    /// Integer power by repeated multiplication; negative powers divide.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        let mut acc = Jet::constant(self.anchor, c64(1.0, 0.0), self.order());
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if n < 0 { acc.recip() } else { Ok(acc) }
    }

    fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.coeffs;
        let mut s = Vec::with_capacity(a.len());
        let mut c = Vec::with_capacity(a.len());
        s.push(a[0].sin());
        c.push(a[0].cos());
        for k in 1..a.len() {
            let ss: C64 = (1..=k).map(|j| a[j] * c[k - j] * j as f64).sum();
            let cc: C64 = (1..=k).map(|j| a[j] * s[k - j] * j as f64).sum();
            s.push(ss / k as f64);
            c.push(-cc / k as f64);
        }
        (Jet { anchor: self.anchor, coeffs: s }, Jet { anchor: self.anchor, coeffs: c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    /// `self ∘ inner`, where `self` is anchored at `inner.value()`.
    /// The result is anchored at `inner.anchor()`.
    pub fn compose(&self, inner: &Jet) -> Result<Jet> {
        if self.anchor != inner.value() {
            return Err(Error::Domain(alloc::format!(
                "outer jet anchored at {} but inner value is {}",
                self.anchor,
                inner.value()
            )));
        }
        let k = inner.order();
        let mut h = inner.clone();
        h.coeffs[0] = ZERO;
        // Horner in h = inner - inner(anchor)
        let top = self.order().min(k);
        let mut acc = Jet::constant(inner.anchor, self.coeffs[top], k);
        for j in (0..top).rev() {
            acc = (&acc * &h).add_scalar(self.coeffs[j]);
        }
        Ok(acc)
    }

    pub fn differentiate(&self) -> Result<Jet> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted { op: "differentiate", order: 0, needed: 1 });
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
        Ok(Jet { anchor: self.anchor, coeffs })
    }

    /// Antiderivative with the given constant term; the order grows by one.
    pub fn integrate(&self, constant: C64) -> Jet {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64));
        Jet { anchor: self.anchor, coeffs }
    }

    /// `(f(t) - f0) / (t - anchor)`: drops the constant term and shifts.
    /// The order falls by one; `f0` is taken to be `f(anchor)`.
    pub fn remove_zero(&self, f0: C64) -> Jet {
        debug_assert!((self.coeffs[0] - f0).norm() <= 1e-8 * (1.0 + f0.norm()));
        if self.order() == 0 {
            return Jet::zero(self.anchor, 0);
        }
        Jet { anchor: self.anchor, coeffs: self.coeffs[1..].to_vec() }
    }

    /// Compositional inverse. The input maps `anchor ↦ c₀`; the result is
    /// anchored at `c₀` and maps back to `anchor`. Needs `c₁ ≠ 0`.
    pub fn reversion(&self) -> Result<Jet> {
        let k = self.order();
        if k == 0 {
            return Err(Error::OrderExhausted { op: "reversion", order: 0, needed: 1 });
        }
        let c1 = self.coeffs[1];
        if c1 == ZERO {
            return Err(Error::NotInvertible);
        }
        // f(anchor + h) = c0 + Σ c_k h^k; find h(w) = Σ d_k w^k with f - c0 = w
        let mut h = Jet::zero(ZERO, k);
        h.coeffs[1] = 1.0 / c1;
        let mut f0 = self.clone();
        f0.anchor = ZERO;
        f0.coeffs[0] = ZERO;
        for n in 2..=k {
            let e = f0.compose(&h)?.coeffs[n];
            h.coeffs[n] = -e / c1;
        }
        h.coeffs[0] = self.anchor;
        h.anchor = self.coeffs[0];
        Ok(h)
    }

    /// Taylor polynomial evaluated at `t`.
    pub fn eval_at(&self, t: C64) -> C64 {
        let h = t - self.anchor;
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * h + c)
    }

    /// Re-expand the Taylor polynomial about a new anchor (same order).
    pub fn recenter(&self, anchor: C64) -> Jet {
        let h = anchor - self.anchor;
        let mut c = self.coeffs.clone();
        let k = c.len();
        // repeated synthetic division
        for i in 0..k {
            for j in (i..k - 1).rev() {
                let next = c[j + 1];
                c[j] += h * next;
            }
        }
        Jet { anchor, coeffs: c }
    }

    /// Largest coefficient magnitude, used for relative tolerances.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, other: &Jet) -> Jet {
        let k = self.common_order(other);
        Jet { anchor: self.anchor, coeffs: (0..=k).map(|i| self.coeffs[i] + other.coeffs[i]).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, other: &Jet) -> Jet {
        let k = self.common_order(other);
        Jet { anchor: self.anchor, coeffs: (0..=k).map(|i| self.coeffs[i] - other.coeffs[i]).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, other: &Jet) -> Jet {
        self.product(other)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(c64(-1.0, 0.0))
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, other: Jet) -> Jet {
                (&self).$m(&other)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, other: &Jet) -> Jet {
                (&self).$m(other)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

impl Mul<C64> for &Jet {
    type Output = Jet;
    fn mul(self, c: C64) -> Jet {
        self.scale(c)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        self.scale(c64(c, 0.0))
    }
}

impl Add<C64> for &Jet {
    type Output = Jet;
    fn add(self, c: C64) -> Jet {
        self.add_scalar(c)
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        self.add_scalar(c64(c, 0.0))
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        self.add_scalar(c64(c, 0.0))
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        self.scale(c64(c, 0.0))
    }
}

/// A function given as a program over jet arithmetic.
///
/// Closures `Fn(&Jet) -> Result<Jet>` implement this trait, as does the
/// parsed [`Expr`].
pub trait JetProgram {
    /// Apply the program to the variable jet `t`.
    fn apply(&self, t: &Jet) -> Result<Jet>;

    fn jet(&self, anchor: C64, order: usize) -> Result<Jet> {
        self.apply(&Jet::variable(anchor, order))
    }

    fn eval(&self, t: C64) -> Result<C64> {
        Ok(self.jet(t, 0)?.value())
    }
}

impl<F> JetProgram for F
where
    F: Fn(&Jet) -> Result<Jet>,
{
    fn apply(&self, t: &Jet) -> Result<Jet> {
        self(t)
    }
}
