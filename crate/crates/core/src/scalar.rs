//! The coefficient-ring abstraction shared by every exact kernel.
//!
//! All determinant, series, and supermatrix code in this crate is written once,
//! generically over [`Scalar`], and instantiated at the rings the library
//! actually computes in: rationals, Grassmann algebras, truncated series over
//! either, and sparse multivariate polynomials (used for symbolic identity
//! certificates). A `Scalar` is an exact commutative ring with optional
//! division; there is deliberately no floating-point instantiation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

/// Homogeneity of an element under the even/odd grading.
///
/// Purely even rings (rationals, polynomials) report `Even` for everything;
/// the Grassmann ring computes the grading from its terms, and series combine
/// the parities of their coefficients. `Mixed` marks an element that is
/// neither homogeneous even nor homogeneous odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// Parity of a sum of two homogeneous components; zero is compatible with
    /// either side, which callers encode by skipping zero summands.
    pub fn join(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }
}

/// An exact commutative ring.
///
/// `Zero`/`One` come from num-traits and supply the additive and
/// multiplicative identities that generic kernels need without extra context.
/// Supercommutative rings (Grassmann) also implement this trait; their
/// multiplication is the graded product, and the determinant kernels are only
/// ever applied to matrices whose entries are even (hence central), which the
/// supermatrix layer enforces.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Whether the ring has no zero divisors. Truncated series and Grassmann
    /// rings set this to `false`.
    const INTEGRAL_DOMAIN: bool;

    /// Whether fraction-free elimination may be used for determinants: the
    /// ring is an integral domain and `exact_div` is total on exact quotients.
    const FRACTION_FREE: bool;

    /// Embedding of the ground field. Every ring here is a ℚ-algebra, which is
    /// what lets the series kernels divide by integer factorials.
    fn from_rational(q: &crate::rational::Rational) -> Self;

    /// Multiplicative inverse, when this element has one.
    fn inverse(&self) -> Option<Self>;

    /// Exact quotient `self / rhs`, defined when `rhs` divides `self` within
    /// the ring. The default route goes through `inverse`, which is correct
    /// for fields; rings that support exact division without inverses
    /// (integers inside ℚ-style situations do not arise here) override it.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.inverse_div(rhs)
    }

    /// Helper: `self * rhs⁻¹` when the inverse exists.
    fn inverse_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.clone() * inv)
    }

    /// Even/odd homogeneity. Defaults to `Even`, the correct answer for every
    /// ungraded ring.
    fn parity(&self) -> Parity {
        let _ = self;
        Parity::Even
    }

    /// Convenience embedding of an integer.
    fn from_integer(n: i64) -> Self {
        Self::from_rational(&crate::rational::Rational::from_integer(n))
    }
}

/// Marker for scalars whose nonzero elements are all invertible. Exact linear
/// solving (echelon form, kernels, Padé systems) requires this.
pub trait Field: Scalar {}
