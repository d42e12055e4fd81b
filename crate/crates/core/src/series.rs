//! Truncated formal power series over an exact scalar ring.
//!
//! A series carries its truncation order explicitly: `order: Some(n)` means
//! the coefficients of z⁰…zⁿ are known and everything above is unknown, and
//! the coefficient vector has length exactly n+1. Binary operations keep the
//! minimum of the operand orders, so precision bookkeeping is automatic.
//!
//! `order: None` marks an *exact* series — a polynomial embedded in the series
//! ring, all higher coefficients genuinely zero. Generic kernels use it for
//! ring constants (`zero`, `one`, embedded rationals) so that no artificial
//! truncation order has to be invented for them; it behaves as infinite
//! precision under the minimum rule. Analytic operations (inverse, exp, log)
//! on a nonconstant exact series have no finite representation and are
//! rejected.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::scalar::{Parity, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("exponential requires a zero constant term")]
    ConstantTermNotZero,
    #[error("logarithm requires constant term one")]
    ConstantTermNotOne,
    #[error("operation needs a finite truncation order")]
    NeedsTruncation,
}

#[derive(Clone, PartialEq)]
pub struct Series<R> {
    /// Length `order + 1` when the order is finite; trailing zeros trimmed
    /// when the series is exact.
    coeffs: Vec<R>,
    order: Option<usize>,
}

impl<R: Scalar> Series<R> {
    /// A truncated series from explicit coefficients `z⁰ … zᴺ`.
    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Series<R> {
        coeffs.resize(order + 1, R::zero());
        Series {
            coeffs,
            order: Some(order),
        }
    }

    /// An exact series (embedded polynomial).
    pub fn exact(mut coeffs: Vec<R>) -> Series<R> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Series {
            coeffs,
            order: None,
        }
    }

    pub fn constant(c: R) -> Series<R> {
        Series::exact(vec![c])
    }

    /// The variable z as an exact series.
    pub fn z() -> Series<R> {
        Series::exact(vec![R::zero(), R::one()])
    }

    /// Truncation order; `None` for an exact series.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn coefficient(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Known coefficients, z⁰ first. For a finite order the slice has length
    /// order+1 exactly.
    pub fn coefficients(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series<R> {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        Series::from_coeffs(coeffs, order)
    }

    fn combined_order(&self, rhs: &Series<R>) -> Option<usize> {
        match (self.order, rhs.order) {
            (None, o) | (o, None) => o,
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    fn with_order(mut coeffs: Vec<R>, order: Option<usize>) -> Series<R> {
        match order {
            Some(n) => {
                coeffs.truncate(n + 1);
                Series::from_coeffs(coeffs, n)
            }
            None => Series::exact(coeffs),
        }
    }

    pub fn scale(&self, s: &R) -> Series<R> {
        Series::with_order(
            self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
            self.order,
        )
    }

    /// Substitute z ↦ a·z: the kth coefficient picks up a factor aᵏ.
    pub fn substitute_scaled(&self, a: &R) -> Series<R> {
        let mut power = R::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power * a.clone();
            }
            coeffs.push(c.clone() * power.clone());
        }
        Series::with_order(coeffs, self.order)
    }

    /// Multiplicative inverse. The constant term must be invertible, and a
    /// nonconstant exact series is rejected (its inverse is not a
    /// polynomial).
    pub fn inverse(&self) -> Result<Series<R>, SeriesError> {
        let c0_inv = self
            .coefficient(0)
            .inverse()
            .ok_or(SeriesError::NonInvertibleConstantTerm)?;
        let order = match self.order {
            Some(n) => n,
            None => {
                if self.coeffs.len() <= 1 {
                    return Ok(Series::constant(c0_inv));
                }
                return Err(SeriesError::NeedsTruncation);
            }
        };
        let mut inv = vec![c0_inv.clone()];
        for n in 1..=order {
            let mut acc = R::zero();
            for k in 1..=n {
                let a_k = self.coefficient(k);
                if a_k.is_zero() {
                    continue;
                }
                acc = acc + a_k * inv[n - k].clone();
            }
            inv.push(-(c0_inv.clone() * acc));
        }
        Ok(Series::from_coeffs(inv, order))
    }

    /// exp of a series with zero constant term, by the derivative recurrence
    /// n·Eₙ = Σ_{j=1..n} j·aⱼ·E_{n−j}.
    pub fn exp(&self) -> Result<Series<R>, SeriesError> {
        if !self.coefficient(0).is_zero() {
            return Err(SeriesError::ConstantTermNotZero);
        }
        let order = match self.order {
            Some(n) => n,
            None => {
                if self.coeffs.is_empty() {
                    return Ok(Series::constant(R::one()));
                }
                return Err(SeriesError::NeedsTruncation);
            }
        };
        let mut e = vec![R::one()];
        for n in 1..=order {
            let mut acc = R::zero();
            for j in 1..=n {
                let a_j = self.coefficient(j);
                if a_j.is_zero() {
                    continue;
                }
                let weighted = a_j * R::from_integer(j as i64);
                acc = acc + weighted * e[n - j].clone();
            }
            let n_inv = Rational::new(1, n as i64);
            e.push(acc * R::from_rational(&n_inv));
        }
        Ok(Series::from_coeffs(e, order))
    }

    /// log of a series with constant term one, by the inverse recurrence
    /// Lₙ = aₙ − (1/n) Σ_{k=1..n−1} k·Lₖ·a_{n−k}.
    pub fn log(&self) -> Result<Series<R>, SeriesError> {
        if !self.coefficient(0).is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let order = match self.order {
            Some(n) => n,
            None => {
                if self.coeffs.len() <= 1 {
                    return Ok(Series::exact(vec![]));
                }
                return Err(SeriesError::NeedsTruncation);
            }
        };
        let mut l: Vec<R> = vec![R::zero()];
        for n in 1..=order {
            let mut acc = R::zero();
            for k in 1..n {
                let a = self.coefficient(n - k);
                if a.is_zero() || l[k].is_zero() {
                    continue;
                }
                let weighted = l[k].clone() * R::from_integer(k as i64);
                acc = acc + weighted * a;
            }
            let n_inv = Rational::new(1, n as i64);
            l.push(self.coefficient(n) - acc * R::from_rational(&n_inv));
        }
        Ok(Series::from_coeffs(l, order))
    }

    /// All known coefficients are zero.
    pub fn is_zero_series(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<R: Scalar> Add for Series<R> {
    type Output = Series<R>;
    fn add(self, rhs: Series<R>) -> Series<R> {
        let order = self.combined_order(&rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coefficient(k) + rhs.coefficient(k))
            .collect();
        Series::with_order(coeffs, order)
    }
}

impl<R: Scalar> Sub for Series<R> {
    type Output = Series<R>;
    fn sub(self, rhs: Series<R>) -> Series<R> {
        self + (-rhs)
    }
}

impl<R: Scalar> Neg for Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        Series {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl<R: Scalar> Mul for Series<R> {
    type Output = Series<R>;
    fn mul(self, rhs: Series<R>) -> Series<R> {
        let order = self.combined_order(&rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series::with_order(Vec::new(), order);
        }
        let len = match order {
            Some(n) => n + 1,
            None => self.coeffs.len() + rhs.coeffs.len() - 1,
        };
        let mut coeffs = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let t = a.clone() * b.clone();
                coeffs[i + j] = coeffs[i + j].clone() + t;
            }
        }
        Series::with_order(coeffs, order)
    }
}

impl<R: Scalar> Zero for Series<R> {
    fn zero() -> Series<R> {
        Series::exact(Vec::new())
    }
    fn is_zero(&self) -> bool {
        // Every known coefficient vanishes. A truncated series lives in the
        // quotient ring mod z^{order+1}, and there this is the zero element;
        // the truncation order is kept as metadata, not as part of the value.
        self.is_zero_series()
    }
}

impl<R: Scalar> One for Series<R> {
    fn one() -> Series<R> {
        Series::constant(R::one())
    }
    fn is_one(&self) -> bool {
        !self.coeffs.is_empty()
            && self.coeffs[0].is_one()
            && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl<R: Scalar> Scalar for Series<R> {
    const INTEGRAL_DOMAIN: bool = false;
    const FRACTION_FREE: bool = false;

    fn from_rational(q: &Rational) -> Series<R> {
        Series::constant(R::from_rational(q))
    }

    fn inverse(&self) -> Option<Series<R>> {
        Series::inverse(self).ok()
    }

    fn parity(&self) -> Parity {
        let mut parity: Option<Parity> = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let p = c.parity();
            parity = Some(match parity {
                None => p,
                Some(q) => q.join(p),
            });
        }
        parity.unwrap_or(Parity::Even)
    }
}

impl<R: Scalar> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        match self.order {
            Some(n) => write!(f, " + O(z^{})", n + 1),
            None => Ok(()),
        }
    }
}

impl<R: Scalar> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type QSeries = Series<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn series(coeffs: &[(i64, i64)], order: usize) -> QSeries {
        Series::from_coeffs(coeffs.iter().map(|&(n, d)| q(n, d)).collect(), order)
    }

    /// Independent oracle: plain double-loop long multiplication.
    fn mul_oracle(a: &QSeries, b: &QSeries, order: usize) -> QSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                coeffs[i + j] += a.coefficient(i) * b.coefficient(j);
            }
        }
        Series::from_coeffs(coeffs, order)
    }

    #[test]
    fn log_of_one_plus_z() {
        let s = series(&[(1, 1), (1, 1)], 4);
        let l = s.log().unwrap();
        assert_eq!(
            l.coefficients(),
            &[q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)]
        );
    }

    #[test]
    fn exp_log_round_trip() {
        let s = series(&[(1, 1), (1, 1)], 5);
        let back = s.log().unwrap().exp().unwrap();
        assert_eq!(back, s.truncate(5));
    }

    #[test]
    fn multiplication_matches_long_multiplication() {
        let a = series(&[(1, 1), (1, 1)], 3);
        let b = series(&[(1, 1), (-1, 1), (1, 1), (-1, 1)], 3);
        let prod = a.clone() * b.clone();
        assert_eq!(prod, mul_oracle(&a, &b, 3));
        // (1+z)(1−z+z²−z³) = 1 − z⁴ → 1 at order 3
        assert_eq!(
            prod.coefficients(),
            &[q(1, 1), q(0, 1), q(0, 1), q(0, 1)]
        );
    }

    #[test]
    fn orders_take_the_minimum() {
        let a = series(&[(1, 1), (2, 1)], 5);
        let b = series(&[(3, 1)], 2);
        assert_eq!((a.clone() + b.clone()).order(), Some(2));
        assert_eq!((a.clone() * b).order(), Some(2));
        assert_eq!((a * QSeries::one()).order(), Some(5));
    }

    #[test]
    fn inverse_of_one_plus_two_z() {
        let s = series(&[(1, 1), (2, 1)], 3);
        let inv = s.inverse().unwrap();
        assert_eq!(
            inv.coefficients(),
            &[q(1, 1), q(-2, 1), q(4, 1), q(-8, 1)]
        );
        assert!((s * inv - QSeries::one()).is_zero_series());
    }

    #[test]
    fn substitution_scales_coefficients_geometrically() {
        let s = series(&[(0, 1), (1, 1), (-1, 2), (1, 3)], 3);
        let scaled = s.substitute_scaled(&q(2, 1));
        assert_eq!(
            scaled.coefficients(),
            &[q(0, 1), q(2, 1), q(-2, 1), q(8, 3)]
        );
    }

    #[test]
    fn analytic_operations_reject_bad_constant_terms() {
        assert_eq!(
            series(&[(0, 1), (1, 1)], 2).inverse().unwrap_err(),
            SeriesError::NonInvertibleConstantTerm
        );
        assert_eq!(
            series(&[(1, 1)], 2).exp().unwrap_err(),
            SeriesError::ConstantTermNotZero
        );
        assert_eq!(
            series(&[(2, 1)], 2).log().unwrap_err(),
            SeriesError::ConstantTermNotOne
        );
    }

    #[test]
    fn exact_series_need_truncation_for_analytic_operations() {
        let exact = QSeries::exact(vec![q(0, 1), q(1, 1)]);
        assert_eq!(exact.exp().unwrap_err(), SeriesError::NeedsTruncation);
        assert_eq!(
            QSeries::exact(vec![q(1, 1), q(1, 1)]).inverse().unwrap_err(),
            SeriesError::NeedsTruncation
        );
        // but constants are fine
        assert!(QSeries::constant(q(2, 1))
            .inverse()
            .unwrap()
            .coefficients()
            .starts_with(&[q(1, 2)]));
    }

    #[test]
    fn exact_times_truncated_keeps_the_finite_order() {
        let exact = QSeries::exact(vec![q(1, 1), q(1, 1)]);
        let trunc = series(&[(1, 1), (-1, 1), (1, 1)], 2);
        let prod = exact * trunc;
        assert_eq!(prod.order(), Some(2));
        assert_eq!(prod.coefficients(), &[q(1, 1), q(0, 1), q(0, 1)]);
    }
}
