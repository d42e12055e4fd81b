//! Dense univariate polynomials over an exact scalar ring.
//!
//! Coefficients are stored in ascending degree. Invariant: the coefficient
//! vector is either empty (the zero polynomial) or ends in a nonzero
//! coefficient; every constructor and operation restores it. Division with
//! remainder and greatest common divisors require a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::Zero;

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Scalar> Polynomial<R> {
    pub fn zero() -> Polynomial<R> {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Polynomial<R> {
        Polynomial::constant(R::one())
    }

    pub fn constant(c: R) -> Polynomial<R> {
        Polynomial::from_coeffs(vec![c])
    }

    pub fn x() -> Polynomial<R> {
        Polynomial::from_coeffs(vec![R::zero(), R::one()])
    }

    /// `c · zᵏ`.
    pub fn monomial(c: R, k: usize) -> Polynomial<R> {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<R>) -> Polynomial<R> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, s: &R) -> Polynomial<R> {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, k: usize) -> Polynomial<R> {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Coefficients reversed up to degree `n`: `zⁿ · p(1/z)`, used for
    /// expansions at infinity. Requires `n ≥ deg p`.
    pub fn reverse(&self, n: usize) -> Polynomial<R> {
        assert!(
            self.degree().map_or(true, |d| d <= n),
            "reversal degree below the polynomial degree"
        );
        let mut coeffs = vec![R::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.clone();
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<F: Field> Polynomial<F> {
    /// Division with remainder over a field.
    pub fn div_rem(&self, divisor: &Polynomial<F>) -> (Polynomial<F>, Polynomial<F>) {
        let d = divisor
            .degree()
            .expect("polynomial division by zero");
        let lead_inv = divisor
            .leading_coefficient()
            .unwrap()
            .inverse()
            .expect("nonzero leading coefficient over a field");
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<F> = Vec::new();
        while rem.len() >= d + 1 && !rem.is_empty() {
            let k = rem.len() - 1 - d;
            let factor = rem.last().unwrap().clone() * lead_inv.clone();
            for i in 0..=d {
                let t = divisor.coeffs[i].clone() * factor.clone();
                rem[k + i] = rem[k + i].clone() - t;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if quot.len() < k + 1 {
                quot.resize(k + 1, F::zero());
            }
            quot[k] = factor;
            if rem.len() < d + 1 {
                break;
            }
        }
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Polynomial<F>) -> Polynomial<F> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero_poly() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coefficient() {
            None => a,
            Some(lead) => {
                let inv = lead.inverse().expect("nonzero leading coefficient");
                a.scale(&inv)
            }
        }
    }
}

impl<R: Scalar> Add for Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coefficient(k) + rhs.coefficient(k));
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<R: Scalar> Sub for Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Polynomial<R>) -> Polynomial<R> {
        self + (-rhs)
    }
}

impl<R: Scalar> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Scalar> Mul for Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Polynomial<R>) -> Polynomial<R> {
        if self.is_zero_poly() || rhs.is_zero_poly() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a.clone() * b.clone();
                coeffs[i + j] = coeffs[i + j].clone() + t;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl<R: Scalar> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
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
        Ok(())
    }
}

impl<R: Scalar> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
