//! Rational functions N(z)/D(z) over a field, normalized for series work.
//!
//! Invariants: numerator and denominator share no common polynomial factor,
//! and the denominator has constant term one — the normalization under which
//! a rational function with R(0) defined expands uniquely as a power series.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::series::Series;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("denominator vanishes at zero after reduction")]
    DenominatorVanishesAtZero,
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Clone, PartialEq)]
pub struct RationalFunction<F> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Reduce to lowest terms and normalize the denominator's constant term
    /// to one.
    pub fn new(
        num: Polynomial<F>,
        den: Polynomial<F>,
    ) -> Result<RationalFunction<F>, RatFuncError> {
        if den.is_zero_poly() {
            return Err(RatFuncError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().is_some_and(|d| d > 0) {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let c0 = den.coefficient(0);
        let c0_inv = c0
            .inverse()
            .ok_or(RatFuncError::DenominatorVanishesAtZero)?;
        Ok(RationalFunction {
            num: num.scale(&c0_inv),
            den: den.scale(&c0_inv),
        })
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    /// (deg N, deg D); the zero numerator counts as degree 0.
    pub fn type_degrees(&self) -> (usize, usize) {
        (
            self.num.degree().unwrap_or(0),
            self.den.degree().unwrap_or(0),
        )
    }

    /// Power-series expansion around z = 0 to the given order.
    pub fn series_expansion(&self, order: usize) -> Series<F> {
        let num = Series::from_coeffs(self.num.coeffs().to_vec(), order);
        let den = Series::from_coeffs(self.den.coeffs().to_vec(), order);
        let inv = den
            .inverse()
            .expect("denominator constant term is one by the invariant");
        num * inv
    }
}

impl<F: Field> Mul for RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn mul(self, rhs: RationalFunction<F>) -> RationalFunction<F> {
        RationalFunction::new(self.num * rhs.num, self.den * rhs.den)
            .expect("product of normalized rational functions stays normalized")
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coefficient(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
