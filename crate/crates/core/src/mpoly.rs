//! Sparse multivariate polynomials over ℚ.
//!
//! Used as the coefficient ring for symbolic identity certificates: a "for all
//! a" statement about a functional becomes a polynomial identity in the
//! coordinates of a, and checking that a computed `MPoly` is literally zero
//! decides it exactly. Terms are kept in a sorted map from exponent vectors to
//! nonzero rational coefficients; exponent vectors are trimmed of trailing
//! zeros, so the ring is effectively ℚ[a₁, a₂, …] with only finitely many
//! variables appearing in any element, and ring constants need no variable
//! count for context.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

use crate::rational::Rational;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Default)]
pub struct MPoly {
    /// Trimmed exponent vector → nonzero coefficient.
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut exps: Vec<u32>) -> Vec<u32> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

impl MPoly {
    pub fn constant(q: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        MPoly { terms }
    }

    /// The variable a_index (0-based).
    pub fn var(index: usize) -> MPoly {
        let mut exps = vec![0u32; index + 1];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Rational::one());
        MPoly { terms }
    }

    pub fn term(exps: Vec<u32>, coeff: Rational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exps), coeff);
        }
        MPoly { terms }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    pub fn scale(&self, s: &Rational) -> MPoly {
        if s.is_zero() {
            return MPoly::default();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Exact evaluation; `values` must cover every variable that appears.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut t = coeff.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    assert!(i < values.len(), "missing value for variable {i}");
                    t *= values[i].pow(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Iterate (exponents, coefficient) pairs in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        let mut terms = self.terms;
        for (e, c) in rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        MPoly { terms }
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = vec![0u32; ea.len().max(eb.len())];
                for (i, &x) in ea.iter().enumerate() {
                    e[i] += x;
                }
                for (i, &x) in eb.iter().enumerate() {
                    e[i] += x;
                }
                let c = ca * cb;
                let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        MPoly { terms }
    }
}

impl Zero for MPoly {
    fn zero() -> MPoly {
        MPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> MPoly {
        MPoly::constant(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Vec::new())
                .is_some_and(|c| c.is_one())
    }
}

impl Scalar for MPoly {
    const INTEGRAL_DOMAIN: bool = true;
    // no exact multivariate division implemented; determinants over this ring
    // go through the division-free expansion
    const FRACTION_FREE: bool = false;

    fn from_rational(q: &Rational) -> MPoly {
        MPoly::constant(q.clone())
    }

    fn inverse(&self) -> Option<MPoly> {
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Vec::new()) {
                return c.recip().map(MPoly::constant);
            }
        }
        None
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{coeff}")?;
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*a{}", i + 1)?,
                    _ => write!(f, "*a{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_identities() {
        let a = MPoly::var(0);
        let b = MPoly::var(1);
        let lhs = (a.clone() + b.clone()).pow(2);
        let rhs = a.clone().pow(2)
            + a.clone() * b.clone().scale(&Rational::from_integer(2))
            + b.clone().pow(2);
        assert_eq!(lhs, rhs);
        assert!((lhs.clone() - rhs).is_zero());
    }

    #[test]
    fn exponent_trimming_makes_variables_compatible() {
        // a1 built in isolation equals a1 appearing in a product with a3
        let a1 = MPoly::var(0);
        let a3 = MPoly::var(2);
        let p = a1.clone() * a3.clone();
        let q = a3 * a1.clone();
        assert_eq!(p, q);
        assert_eq!(a1.clone() - a1, MPoly::zero());
    }

    #[test]
    fn evaluation() {
        // 2·a1²·a2 − 3 at (2, 5)
        let p = MPoly::var(0).pow(2) * MPoly::var(1).scale(&Rational::from_integer(2))
            - MPoly::constant(Rational::from_integer(3));
        assert_eq!(
            p.eval(&[Rational::from_integer(2), Rational::from_integer(5)]),
            Rational::from_integer(37)
        );
    }

    #[test]
    fn degree_and_inverse() {
        let p = MPoly::var(0) * MPoly::var(1) + MPoly::var(2);
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.inverse().is_none());
        assert_eq!(
            MPoly::constant(Rational::from_integer(4)).inverse(),
            Some(MPoly::constant(Rational::new(1, 4)))
        );
    }
}
