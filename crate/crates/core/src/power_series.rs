//! Truncated formal power series over exact rationals.
//!
//! A [`Series`] of order `N` holds the ordinary coefficients of `t^0 ..= t^N`;
//! every operation is exact modulo `t^{N+1}`. Binary operations truncate to the
//! smaller of the two orders, so precision is never silently inflated.
//! Exponential-generating-function semantics live only in [`Series::egf_coeff`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial_q, int, ratio, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Series { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The identity series `t`. Panics if `order == 0`.
    pub fn t(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// `c * t^power`, truncated (to zero when `power > order`).
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        assert!(order >= 1 || power == 0, "t needs order >= 1");
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(Error::OrderTooSmall {
            index: n,
            order: self.order(),
        })
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Restricts to a lower order. Orders above the current one are clamped.
    pub fn truncate(&self, order: usize) -> Series {
        let len = (order + 1).min(self.coeffs.len());
        Series {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    /// `n! * [t^n]`: the coefficient read as an exponential generating function.
    pub fn egf_coeff(&self, n: usize) -> Result<Rational> {
        Ok(self.coeff(n)? * factorial_q(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// Non-negative integer power by repeated squaring.
    pub fn powi(&self, mut e: usize) -> Series {
        let mut acc = Series::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal derivative. The result keeps order `N - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * int(i as i64 + 1))
                .collect(),
        }
    }

    /// Formal antiderivative with zero constant term, at the given order.
    fn integral(&self, order: usize) -> Series {
        let mut out = Series::zero(order);
        for i in 1..=order {
            if let Some(c) = self.coeffs.get(i - 1) {
                out.coeffs[i] = c * ratio(1, i as i64);
            }
        }
        out
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for n in 1..=order {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &b[n - k];
            }
            b.push(-s * &inv0);
        }
        Ok(Series { coeffs: b })
    }

    /// `exp(a)` for `a` with zero constant term, via `b' = a' b`.
    pub fn exp(&self) -> Result<Series> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let order = self.order();
        let mut b = Vec::with_capacity(order + 1);
        b.push(Rational::one());
        for n in 1..=order {
            let mut s = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    s += a * int(k as i64) * &b[n - k];
                }
            }
            b.push(s * ratio(1, n as i64));
        }
        Ok(Series { coeffs: b })
    }

    /// `log(a)` for `a` with constant term 1, as the antiderivative of `a'/a`.
    pub fn log(&self) -> Result<Series> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantNotOne);
        }
        let order = self.order();
        if order == 0 {
            return Ok(Series::zero(0));
        }
        let quotient = self.derivative().mul(&self.inverse()?.truncate(order - 1));
        Ok(quotient.integral(order))
    }

    /// Square root with constant term 1 of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantNotOne);
        }
        let order = self.order();
        let half = ratio(1, 2);
        let mut s: Vec<Rational> = Vec::with_capacity(order + 1);
        s.push(Rational::one());
        for n in 1..=order {
            let mut cross = Rational::zero();
            for k in 1..n {
                cross += &s[k] * &s[n - k];
            }
            s.push((&self.coeffs[n] - cross) * &half);
        }
        Ok(Series { coeffs: s })
    }

    /// `a^q = exp(q log a)` for rational `q` and constant term 1.
    pub fn pow_rational(&self, q: &Rational) -> Result<Series> {
        self.log()?.scale(q).exp()
    }

    /// `outer(inner(t))` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.constant_term().is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::one())
    }
}

/// Generating series shared by the number families.
pub mod named {
    use super::*;

    /// `e^{c t}`.
    pub fn exp_linear(c: &Rational, order: usize) -> Series {
        Series::t(order.max(1))
            .truncate(order)
            .scale(c)
            .exp()
            .expect("zero constant term")
    }

    /// `e^{t/2} - e^{-t/2}`.
    pub fn central_difference_kernel(order: usize) -> Series {
        let half = ratio(1, 2);
        exp_linear(&half, order).sub(&exp_linear(&-half, order))
    }

    /// `t/2 + sqrt(1 + t^2/4)`.
    pub fn central_root(order: usize) -> Series {
        let mut quad = Series::one(order);
        if order >= 2 {
            quad.coeffs[2] = ratio(1, 4);
        }
        let mut s = quad.sqrt().expect("constant term 1");
        if order >= 1 {
            s.coeffs[1] += ratio(1, 2);
        }
        s
    }

    /// `2 log(t/2 + sqrt(1 + t^2/4))`, the compositional inverse of
    /// [`central_difference_kernel`].
    pub fn central_log(order: usize) -> Series {
        central_root(order)
            .log()
            .expect("constant term 1")
            .scale(&int(2))
    }

    /// `e^t - 1`.
    pub fn exp_minus_one(order: usize) -> Series {
        let mut s = exp_linear(&Rational::one(), order);
        s.coeffs[0] = Rational::zero();
        s
    }

    /// `1 + t`.
    pub fn one_plus_t(order: usize) -> Series {
        let mut s = Series::one(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// `log(1 + t)`.
    pub fn log_one_plus_t(order: usize) -> Series {
        one_plus_t(order).log().expect("constant term 1")
    }
}
