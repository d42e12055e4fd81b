//! The Grassmann algebra on anticommuting generators ξ₁, …, ξ_N over ℚ.
//!
//! Elements are stored as a sorted map from generator subsets (bitmasks) to
//! rational coefficients; only nonzero coefficients are kept. The product is
//! the supercommutative one: ξᵢξⱼ = −ξⱼξᵢ and ξᵢ² = 0, so a basis monomial is
//! an ascending product over a subset and products of monomials pick up the
//! sign of the interleaving permutation. N is capped at 16, which keeps masks
//! in a `u32` and is far beyond desk scale.
//!
//! Elements created by generic kernel code (`zero`, `one`, ground-field
//! embeddings) carry no declared generator count and combine with any ring;
//! elements constructed against an explicit Grassmann(N) remember N, and
//! mixing two different declared counts is an error. The checked entry points
//! return that error; the operator impls panic with the same message, which
//! generic code never triggers because it only injects undeclared scalars.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;
use crate::scalar::{Parity, Scalar};

/// Hard cap on the number of generators.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("mismatched generator counts: {0} vs {1}")]
    MismatchedGenerators(u8, u8),
    #[error("generator index {index} outside 1..={count}")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("generator count {0} exceeds the cap of {MAX_GENERATORS}")]
    TooManyGenerators(usize),
    #[error("element has no body; it is not invertible")]
    NotInvertible,
}

/// An element of the Grassmann algebra over ℚ.
#[derive(Clone, Default)]
pub struct Grassmann {
    /// Declared generator count; `None` for ring-agnostic scalars.
    gens: Option<u8>,
    /// Subset mask → nonzero coefficient.
    terms: BTreeMap<u32, Rational>,
}

/// Equality compares the terms only. The generator count is bookkeeping about
/// which algebra the element was written in, and the algebras on fewer
/// generators all sit inside the ones on more; in particular every zero is
/// the same zero, whatever count it carries.
impl PartialEq for Grassmann {
    fn eq(&self, other: &Grassmann) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Grassmann {}

/// Sign of moving an ascending monomial over subset `t` past one over `s`:
/// (−1) to the number of pairs (i ∈ s, j ∈ t) with i > j.
fn interleave_sign(s: u32, t: u32) -> i32 {
    let mut inversions = 0u32;
    let mut rest = s;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        // generators of t strictly below this generator of s
        inversions += (t & ((1u32 << bit) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn join_gens(a: Option<u8>, b: Option<u8>) -> Result<Option<u8>, GrassmannError> {
    match (a, b) {
        (None, x) | (x, None) => Ok(x),
        (Some(x), Some(y)) if x == y => Ok(Some(x)),
        (Some(x), Some(y)) => Err(GrassmannError::MismatchedGenerators(x, y)),
    }
}

impl Grassmann {
    /// The scalar `q`, compatible with any generator count.
    pub fn constant(q: Rational) -> Grassmann {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0u32, q);
        }
        Grassmann { gens: None, terms }
    }

    /// The zero element of a declared Grassmann(N).
    pub fn zero_in(count: usize) -> Result<Grassmann, GrassmannError> {
        if count > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(count));
        }
        Ok(Grassmann {
            gens: Some(count as u8),
            terms: BTreeMap::new(),
        })
    }

    /// The generator ξ_index (1-based) of Grassmann(count).
    pub fn generator(index: usize, count: usize) -> Result<Grassmann, GrassmannError> {
        if count > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(count));
        }
        if index == 0 || index > count {
            return Err(GrassmannError::GeneratorOutOfRange { index, count });
        }
        let mut terms = BTreeMap::new();
        terms.insert(1u32 << (index - 1), Rational::one());
        Ok(Grassmann {
            gens: Some(count as u8),
            terms,
        })
    }

    /// `coeff · ξ_{i₁}···ξ_{i_k}` for ascending distinct 1-based indices.
    pub fn monomial(
        indices: &[usize],
        coeff: Rational,
        count: usize,
    ) -> Result<Grassmann, GrassmannError> {
        if count > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(count));
        }
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > count {
                return Err(GrassmannError::GeneratorOutOfRange { index: i, count });
            }
            let bit = 1u32 << (i - 1);
            if mask & bit != 0 {
                // repeated generator squares to zero
                return Grassmann::zero_in(count);
            }
            mask |= bit;
        }
        // Normalizing to ascending order: the caller passes a set; sign
        // conventions for unsorted input are not part of the contract, so we
        // sort implicitly via the mask, i.e. indices are read as a subset.
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Ok(Grassmann {
            gens: Some(count as u8),
            terms,
        })
    }

    pub fn generator_count(&self) -> Option<usize> {
        self.gens.map(|g| g as usize)
    }

    /// Iterate (mask, coefficient) pairs in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// The scalar part (coefficient of the empty monomial).
    pub fn body(&self) -> Rational {
        self.terms.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    /// Everything except the body; nilpotent.
    pub fn soul(&self) -> Grassmann {
        Grassmann {
            gens: self.gens,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| **m != 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Grassmann {
        if q.is_zero() {
            return Grassmann {
                gens: self.gens,
                terms: BTreeMap::new(),
            };
        }
        Grassmann {
            gens: self.gens,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c * q))
                .collect(),
        }
    }

    pub fn try_add(&self, rhs: &Grassmann) -> Result<Grassmann, GrassmannError> {
        let gens = join_gens(self.gens, rhs.gens)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_insert_with(Rational::zero);
            *entry += c.clone();
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Grassmann { gens, terms })
    }

    pub fn try_mul(&self, rhs: &Grassmann) -> Result<Grassmann, GrassmannError> {
        let gens = join_gens(self.gens, rhs.gens)?;
        let mut terms: BTreeMap<u32, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue; // a repeated generator kills the term
                }
                let mut c = ca * cb;
                if interleave_sign(*ma, *mb) < 0 {
                    c = -c;
                }
                let entry = terms.entry(ma | mb).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    terms.remove(&(ma | mb));
                }
            }
        }
        Ok(Grassmann { gens, terms })
    }

    /// Inverse by the geometric series around the body: with x = b + s,
    /// x⁻¹ = b⁻¹ Σ_k (−s/b)^k, which terminates because the soul is nilpotent.
    pub fn try_inverse(&self) -> Result<Grassmann, GrassmannError> {
        let b = self.body();
        let b_inv = b.recip().ok_or(GrassmannError::NotInvertible)?;
        let neg_s_over_b = self.soul().scale(&-b_inv.clone());
        let mut acc = Grassmann::constant(Rational::one());
        let mut power = Grassmann::constant(Rational::one());
        for _ in 0..=MAX_GENERATORS {
            power = power.try_mul(&neg_s_over_b)?;
            if power.terms.is_empty() {
                break;
            }
            acc = acc.try_add(&power)?;
        }
        debug_assert!(power.terms.is_empty(), "soul power failed to vanish");
        Ok(Grassmann {
            gens: join_gens(self.gens, acc.gens)?,
            terms: acc.scale(&b_inv).terms,
        })
    }

    /// Parity of the grading: `Even`/`Odd` when homogeneous (zero counts as
    /// even), `Mixed` otherwise.
    pub fn grading(&self) -> Parity {
        let mut parity: Option<Parity> = None;
        for mask in self.terms.keys() {
            let p = if mask.count_ones() % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            parity = Some(match parity {
                None => p,
                Some(q) => q.join(p),
            });
        }
        parity.unwrap_or(Parity::Even)
    }

    /// Re-declare the generator count, checking that all terms fit.
    pub fn with_generator_count(&self, count: usize) -> Result<Grassmann, GrassmannError> {
        if count > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(count));
        }
        let limit = (1u32 << count) - 1; // count ≤ 16, so the shift is in range
        for mask in self.terms.keys() {
            if mask & !limit != 0 {
                return Err(GrassmannError::GeneratorOutOfRange {
                    index: (31 - mask.leading_zeros() + 1) as usize,
                    count,
                });
            }
        }
        Ok(Grassmann {
            gens: Some(count as u8),
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, coeff) in &self.terms {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed_coeff = false;
            if *mask == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
                printed_coeff = true;
            }
            let mut rest = *mask;
            let mut first_gen = true;
            while rest != 0 {
                let bit = rest.trailing_zeros();
                if printed_coeff || !first_gen {
                    write!(f, "*")?;
                }
                write!(f, "x{}", bit + 1)?;
                printed_coeff = true;
                first_gen = false;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Grassmann {
    type Output = Grassmann;
    fn add(self, rhs: Grassmann) -> Grassmann {
        self.try_add(&rhs).expect("mismatched generator counts")
    }
}

impl Sub for Grassmann {
    type Output = Grassmann;
    fn sub(self, rhs: Grassmann) -> Grassmann {
        self.try_add(&-rhs).expect("mismatched generator counts")
    }
}

impl Mul for Grassmann {
    type Output = Grassmann;
    fn mul(self, rhs: Grassmann) -> Grassmann {
        self.try_mul(&rhs).expect("mismatched generator counts")
    }
}

impl Neg for Grassmann {
    type Output = Grassmann;
    fn neg(self) -> Grassmann {
        self.scale(&-Rational::one())
    }
}

impl Zero for Grassmann {
    fn zero() -> Grassmann {
        Grassmann::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Grassmann {
    fn one() -> Grassmann {
        Grassmann::constant(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.body().is_one()
    }
}

impl Scalar for Grassmann {
    const INTEGRAL_DOMAIN: bool = false;
    const FRACTION_FREE: bool = false;

    fn from_rational(q: &Rational) -> Grassmann {
        Grassmann::constant(q.clone())
    }

    fn inverse(&self) -> Option<Grassmann> {
        self.try_inverse().ok()
    }

    fn parity(&self) -> Parity {
        self.grading()
    }
}

/// One term of the serialized form: ascending 1-based generator indices and a
/// rational coefficient.
#[derive(Serialize, Deserialize)]
struct Term {
    generators: Vec<usize>,
    coeff: Rational,
}

impl Serialize for Grassmann {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(mask, coeff)| {
                let mut generators = Vec::new();
                let mut rest = *mask;
                while rest != 0 {
                    generators.push(rest.trailing_zeros() as usize + 1);
                    rest &= rest - 1;
                }
                Term {
                    generators,
                    coeff: coeff.clone(),
                }
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Grassmann {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Grassmann, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        let mut acc = Grassmann::zero();
        for term in terms {
            let one = Grassmann::monomial(&term.generators, term.coeff, MAX_GENERATORS)
                .map_err(serde::de::Error::custom)?;
            acc = acc.try_add(&one).map_err(serde::de::Error::custom)?;
        }
        // serialized elements are ring-agnostic until a container declares N
        acc.gens = None;
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(i: usize) -> Grassmann {
        Grassmann::generator(i, 4).unwrap()
    }

    #[test]
    fn generators_anticommute() {
        let a = xi(1).try_mul(&xi(2)).unwrap();
        let b = xi(2).try_mul(&xi(1)).unwrap();
        assert_eq!(a, -b);
        assert_eq!(a.to_string(), "x1*x2");
    }

    #[test]
    fn squares_vanish() {
        assert!(xi(1).try_mul(&xi(1)).unwrap().is_zero());
        let odd = xi(1).try_add(&xi(2)).unwrap();
        assert!(odd.try_mul(&odd).unwrap().is_zero());
    }

    #[test]
    fn unit_times_soul() {
        let u = Grassmann::one()
            .try_add(&xi(1).try_mul(&xi(2)).unwrap())
            .unwrap();
        let v = Grassmann::one()
            .try_add(&-(xi(1).try_mul(&xi(2)).unwrap()))
            .unwrap();
        assert!(u.try_mul(&v).unwrap().is_one());
    }

    #[test]
    fn inverse_of_one_plus_top() {
        let u = Grassmann::one()
            .try_add(&xi(1).try_mul(&xi(2)).unwrap())
            .unwrap();
        let inv = u.try_inverse().unwrap();
        let expected = Grassmann::one()
            .try_add(&-(xi(1).try_mul(&xi(2)).unwrap()))
            .unwrap();
        assert_eq!(inv, expected);
        assert!(u.try_mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inverse_needs_a_body() {
        assert_eq!(
            xi(1).try_inverse().unwrap_err(),
            GrassmannError::NotInvertible
        );
    }

    #[test]
    fn inverse_with_general_soul() {
        // (2 + x1 + x1*x2*x3) — soul nilpotent of index > 2
        let x = Grassmann::constant(Rational::from_integer(2))
            .try_add(&xi(1))
            .unwrap()
            .try_add(&Grassmann::monomial(&[1, 2, 3], Rational::one(), 4).unwrap())
            .unwrap();
        let inv = x.try_inverse().unwrap();
        assert!(x.try_mul(&inv).unwrap().is_one());
        assert!(inv.try_mul(&x).unwrap().is_one());
    }

    #[test]
    fn mismatched_generator_counts_error() {
        let a = Grassmann::generator(1, 2).unwrap();
        let b = Grassmann::generator(1, 3).unwrap();
        assert_eq!(
            a.try_mul(&b).unwrap_err(),
            GrassmannError::MismatchedGenerators(2, 3)
        );
    }

    #[test]
    fn scalars_combine_with_any_count() {
        let a = Grassmann::generator(1, 2).unwrap();
        let s = Grassmann::constant(Rational::from_integer(3));
        let prod = a.try_mul(&s).unwrap();
        assert_eq!(prod.generator_count(), Some(2));
        assert_eq!(prod.to_string(), "3*x1");
    }

    #[test]
    fn generator_cap_enforced() {
        assert_eq!(
            Grassmann::generator(1, 17).unwrap_err(),
            GrassmannError::TooManyGenerators(17)
        );
        assert!(Grassmann::generator(5, 4).is_err());
    }

    #[test]
    fn grading_classifies() {
        assert_eq!(xi(1).grading(), Parity::Odd);
        assert_eq!(xi(1).try_mul(&xi(2)).unwrap().grading(), Parity::Even);
        assert_eq!(Grassmann::zero().grading(), Parity::Even);
        assert_eq!(xi(1).try_add(&Grassmann::one()).unwrap().grading(), Parity::Mixed);
    }

    #[test]
    fn serde_round_trip() {
        let x = Grassmann::constant(Rational::new(1, 2))
            .try_add(&Grassmann::monomial(&[1, 3], Rational::from_integer(-2), 4).unwrap())
            .unwrap();
        let json = serde_json::to_string(&x).unwrap();
        let back: Grassmann = serde_json::from_str(&json).unwrap();
        assert_eq!(back.with_generator_count(4).unwrap(), x.with_generator_count(4).unwrap());
    }

    #[test]
    fn associativity_spot_check() {
        let a = xi(1).try_add(&Grassmann::one()).unwrap();
        let b = xi(2).try_add(&xi(3)).unwrap();
        let c = xi(1).try_mul(&xi(4)).unwrap().try_add(&Grassmann::constant(Rational::new(1, 3))).unwrap();
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
    }
}
