//! Exact arithmetic for Frobenius n-homomorphisms and p|q-homomorphisms of
//! commutative algebras, characteristic series and their rational
//! reconstruction, symmetric and p|q-symmetric power algebras, and supertrace
//! and Berezinian identities of block matrices — all over ℚ, Grassmann
//! algebras, or truncated power series, with no floating point anywhere.
//!
//! The crate is organized in four layers:
//!
//! * coefficient arithmetic — [`rational`], [`grassmann`], [`poly`],
//!   [`series`], [`ratfunc`], [`mpoly`], with the shared [`scalar::Scalar`]
//!   trait, plus dense matrices and Padé reconstruction in [`matrix`] and
//!   [`pade`];
//! * finite-dimensional commutative algebras, their elements, linear maps,
//!   point configurations, and (p|q-)symmetric powers in [`algebra`];
//! * the Frobenius recursion and everything derived from it — n- and
//!   p|q-homomorphism tests, classification, characteristic functions,
//!   f-Berezinian values, symmetric-power lifts, representation supertraces —
//!   in [`frobenius`];
//! * supertraces, Berezinians, trace sequences and their Hankel recurrences
//!   for block matrices in [`superlinalg`].

pub mod algebra;
pub mod frobenius;
pub mod grassmann;
pub mod io;
pub mod matrix;
pub mod mpoly;
pub mod pade;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod sampling;
pub mod scalar;
pub mod series;
pub mod superlinalg;

pub use algebra::{
    enumerate_homomorphisms, multisets, pq_symmetric_power, symmetric_power, AlgebraError,
    CommutativeAlgebra, Configuration, Element, FiniteSpace, LinearMap, PqSymmetricPower,
    SymmetricPower,
};
pub use frobenius::{
    br_lift, char_series, characteristic_function, classify, diagonal_phi_identity_check,
    diagonal_representation, f_berezinian, frobenius_phi, functional_from_representation,
    is_n_homomorphism, is_pq_homomorphism, moments, n_hom_from_sym_hom, newton_psi,
    pq_hom_from_sym_hom, psi_star, recover_configuration, representation_image,
    CharacteristicFunction, FrobeniusError, FrobeniusEvaluator, HomType, HomWitness,
    MomentSequence,
};
pub use grassmann::Grassmann;
pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use pade::{minimal_rational_type, pade_reconstruct, PadeError, PadeFit};
pub use poly::Polynomial;
pub use ratfunc::{RatFuncError, RationalFunction};
pub use rational::Rational;
pub use scalar::{Field, Parity, Scalar};
pub use series::{Series, SeriesError};
pub use superlinalg::{
    ber_via_hankel, berezinian_block, char_function_series, diagonal_oracle, diagonal_supermatrix,
    hankel_recurrence_check, liouville_check, supertrace, SuperDims, SuperError, SuperMatrix,
    TraceSequence,
};

/// Shorthand for the ground field.
pub type Q = Rational;
/// Truncated power series over ℚ.
pub type QSeries = Series<Rational>;
/// Polynomials over ℚ.
pub type QPoly = Polynomial<Rational>;
/// Dense matrices over ℚ.
pub type QMatrix = Matrix<Rational>;
/// Reduced rational functions over ℚ.
pub type QRatFunc = RationalFunction<Rational>;
/// Truncated power series with Grassmann coefficients.
pub type GSeries = Series<Grassmann>;
/// Block matrices over ℚ (even entries only, by the grading check).
pub type QSuperMatrix = SuperMatrix<Rational>;
/// Block matrices with Grassmann entries.
pub type GSuperMatrix = SuperMatrix<Grassmann>;
