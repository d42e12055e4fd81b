//! The Frobenius recursion and everything built on top of it: deciding whether
//! a linear map is an n-homomorphism, whether a functional is a
//! p|q-homomorphism, characteristic series and their rational reconstruction,
//! Berezinian-type values, the lift of an n-homomorphism to the symmetric
//! power, and supertrace functionals of matrix representations.
//!
//! The recursion defines a symmetric multilinear sequence Φ_k attached to a
//! linear map f: A → B between commutative algebras:
//!
//! ```text
//! Φ₁(a) = f(a)
//! Φ_{k+1}(a, b₁, …, b_k) = f(a)·Φ_k(b₁, …, b_k) − Σ_j Φ_k(b₁, …, a·b_j, …, b_k)
//! ```
//!
//! Vanishing of Φ_{n+1} together with f(1) = n·1 characterizes n-homomorphisms.
//! On the diagonal, Φ_k(a, …, a) = k!·ψ_k(f, a), where the ψ_k are the
//! coefficients of the characteristic series of f at a; the ψ_k can be computed
//! independently from the moments f(a), f(a²), … either by a Newton-type
//! determinant or through an exponential of the alternating moment sum, and the
//! agreement of all three routes is checked at many points in this module and
//! its tests.

use std::collections::HashMap;
use std::fmt;

use num::traits::Zero;
use thiserror::Error;

use crate::algebra::{
    kronecker, multisets, CommutativeAlgebra, Configuration, Element, FiniteSpace, LinearMap,
    PqSymmetricPower, SymmetricPower,
};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::pade::{minimal_rational_type, pade_reconstruct};
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::series::Series;
use crate::superlinalg::{hankel_det_padded, supertrace, SuperDims, SuperMatrix, TraceSequence};

/// Cap on the number of basis multisets enumerated by the n-homomorphism test.
pub const MAX_FROBENIUS_TUPLES: usize = 100_000;

/// Cap on the monomial count a generic-coordinate p|q certificate may touch.
pub const SYMBOLIC_TERM_CAP: usize = 20_000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FrobeniusError {
    #[error("the test needs {needed} cases, over the cap of {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("ψ_{need} needs {need} moments, only {have} are recorded")]
    InsufficientMoments { have: usize, need: usize },
    #[error("the element is not invertible")]
    NonInvertibleElement,
    #[error("the map is not an {n}-homomorphism")]
    NotAnNHomomorphism { n: usize },
    #[error("the map is not an algebra homomorphism")]
    NotAHomomorphism,
    #[error("the lifted map fails the homomorphism property")]
    LiftPostconditionFailed,
    #[error("π applied to basis element {basis} leaves the p|q subalgebra")]
    OutsideSubalgebra { basis: usize },
    #[error("the functional has no identifiable type inside the search box")]
    UnclassifiedFunctional,
    #[error("ψ*_{k} is undefined: the star index must not exceed χ = {chi}")]
    StarIndexOutOfRange { chi: i64, k: usize },
    #[error("the characteristic series has no consistent rational form at the classified type")]
    ReconstructionFailed,
    #[error("the images of basis pair ({i}, {j}) do not respect the multiplication table")]
    NotARepresentation { i: usize, j: usize },
    #[error("the images do not send the unit to the identity matrix")]
    RepresentationUnitMismatch,
}

/// C(n, k), with None on overflow of the intermediate product.
fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Multiplying before dividing keeps every intermediate value integral.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    usize::try_from(acc).ok()
}

// ---------------------------------------------------------------------------
// The recursion
// ---------------------------------------------------------------------------

/// Evaluates Φ_k(f; a₁, …, a_k) with memoization across calls. Arguments are
/// canonicalized to a sorted coordinate list before lookup — Φ is symmetric,
/// so permuted argument lists share one cache entry. (That the recursion really
/// is order-independent is checked in the tests against an uncanonicalized
/// implementation, not assumed.)
pub struct FrobeniusEvaluator<'a> {
    f: &'a LinearMap,
    source: &'a CommutativeAlgebra,
    target: &'a CommutativeAlgebra,
    memo: HashMap<Vec<Vec<Rational>>, Element>,
}

impl<'a> FrobeniusEvaluator<'a> {
    pub fn new(
        f: &'a LinearMap,
        source: &'a CommutativeAlgebra,
        target: &'a CommutativeAlgebra,
    ) -> FrobeniusEvaluator<'a> {
        assert_eq!(f.source_dim(), source.dim(), "map does not start on the source algebra");
        assert_eq!(f.target_dim(), target.dim(), "map does not land in the target algebra");
        FrobeniusEvaluator { f, source, target, memo: HashMap::new() }
    }

    /// Φ_k at the given arguments, k = args.len() ≥ 1.
    pub fn phi(&mut self, args: &[Element]) -> Element {
        assert!(!args.is_empty(), "Φ needs at least one argument");
        for a in args {
            assert_eq!(a.dim(), self.source.dim(), "argument has wrong dimension");
        }
        let mut key: Vec<Vec<Rational>> = args.iter().map(|a| a.coords().to_vec()).collect();
        key.sort();
        self.phi_sorted(key)
    }

    fn phi_sorted(&mut self, key: Vec<Vec<Rational>>) -> Element {
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let value = if key.len() == 1 {
            self.f.apply_element(&Element::new(key[0].clone()))
        } else {
            let head = key[0].clone();
            let rest: Vec<Vec<Rational>> = key[1..].to_vec();
            let f_head = self.f.apply_element(&Element::new(head.clone()));
            let mut acc = self.target.mul(&f_head, &self.phi_sorted(rest.clone()));
            for j in 0..rest.len() {
                let mut merged = rest.clone();
                merged[j] = self.source.mul_in(&merged[j], &head);
                merged.sort();
                acc = acc - self.phi_sorted(merged);
            }
            acc
        };
        self.memo.insert(key, value.clone());
        value
    }
}

/// One-shot Φ_k evaluation; build a [`FrobeniusEvaluator`] instead when many
/// values for the same map are needed, to share the cache.
pub fn frobenius_phi(
    f: &LinearMap,
    source: &CommutativeAlgebra,
    target: &CommutativeAlgebra,
    args: &[Element],
) -> Element {
    FrobeniusEvaluator::new(f, source, target).phi(args)
}

// ---------------------------------------------------------------------------
// Moments and the ψ coefficients
// ---------------------------------------------------------------------------

/// The values f(a), f(a²), …, f(a^count) of a functional on the powers of one
/// element, with f(1) kept alongside as the zeroth entry.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    unit_value: Rational,
    values: Vec<Rational>,
}

impl MomentSequence {
    pub fn unit_value(&self) -> &Rational {
        &self.unit_value
    }

    /// f(a^k); k = 0 gives f(1).
    pub fn value(&self, k: usize) -> &Rational {
        if k == 0 {
            &self.unit_value
        } else {
            &self.values[k - 1]
        }
    }

    /// Number of recorded positive-power moments.
    pub fn count(&self) -> usize {
        self.values.len()
    }

    /// The moments f(a), f(a²), … without the unit value.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

pub fn moments(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    count: usize,
) -> MomentSequence {
    MomentSequence {
        unit_value: f.functional_value(algebra.unit_coords()),
        values: moments_in::<Rational>(f, algebra, a.coords(), count),
    }
}

/// f(a), f(a²), …, f(a^count) for an element given in coordinates over any
/// scalar ring — in particular over polynomials, which is how the generic
/// certificates below work.
pub fn moments_in<R: Scalar>(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &[R],
    count: usize,
) -> Vec<R> {
    assert_eq!(f.target_dim(), 1, "moments are values of a functional");
    assert_eq!(f.source_dim(), algebra.dim(), "functional does not match the algebra");
    assert_eq!(a.len(), algebra.dim(), "element has wrong dimension");
    let mut out = Vec::with_capacity(count);
    let mut power = a.to_vec();
    for k in 1..=count {
        if k > 1 {
            power = algebra.mul_in(&power, a);
        }
        out.push(f.apply_in(&power).pop().expect("functionals have one output"));
    }
    out
}

/// ψ_k from the first k moments s₁, …, s_k, as 1/k! times the k×k determinant
/// with s_{i−j+1} on and below the diagonal and 1, 2, …, k−1 on the
/// superdiagonal. ψ₀ = 1.
pub fn newton_psi_in<R: Scalar>(moments: &[R], k: usize) -> R {
    if k == 0 {
        return R::one();
    }
    assert!(moments.len() >= k, "ψ_{k} needs {k} moments, have {}", moments.len());
    let mat = Matrix::from_fn(k, k, |i, j| {
        if j <= i {
            moments[i - j].clone()
        } else if j == i + 1 {
            R::from_integer((i + 1) as i64)
        } else {
            R::zero()
        }
    });
    let inv_factorial = Rational::factorial(k).recip().expect("k! is nonzero");
    mat.det() * R::from_rational(&inv_factorial)
}

/// ψ_k from a recorded moment sequence, by the determinant formula.
pub fn newton_psi(moments: &MomentSequence, k: usize) -> Result<Rational, FrobeniusError> {
    if moments.count() < k {
        return Err(FrobeniusError::InsufficientMoments { have: moments.count(), need: k });
    }
    Ok(newton_psi_in(moments.values(), k))
}

/// ψ₀, …, ψ_order all at once, as the coefficients of
/// exp(Σ_{k≥1} (−1)^{k+1} s_k z^k / k).
pub fn psi_from_moments_in<R: Scalar>(moments: &[R], order: usize) -> Vec<R> {
    assert!(moments.len() >= order, "{order} coefficients need {order} moments, have {}", moments.len());
    let mut log_coeffs = vec![R::zero(); order + 1];
    for k in 1..=order {
        let weight = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        log_coeffs[k] = moments[k - 1].clone() * R::from_rational(&weight);
    }
    let series = Series::from_coeffs(log_coeffs, order)
        .exp()
        .expect("the exponent has no constant term");
    series.coefficients().to_vec()
}

// ---------------------------------------------------------------------------
// Characteristic series
// ---------------------------------------------------------------------------

/// The characteristic series R(f, a, z) = Σ_k ψ_k(f, a) z^k through z^order.
/// Every coefficient is computed twice — by the exponential formula and by the
/// Newton determinant — and the two must agree; a mismatch is an internal
/// inconsistency and panics. Hot loops that evaluate thousands of probe series
/// use the unchecked single-route variant instead.
pub fn char_series(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    order: usize,
) -> Series<Rational> {
    let moments = moments_in::<Rational>(f, algebra, a.coords(), order);
    let psi = psi_from_moments_in(&moments, order);
    for k in 1..=order {
        let det = newton_psi_in(&moments, k);
        assert_eq!(
            psi[k], det,
            "ψ_{k} disagrees between the exponential route and the determinant route"
        );
    }
    Series::from_coeffs(psi, order)
}

pub(crate) fn char_series_unchecked(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    order: usize,
) -> Series<Rational> {
    let moments = moments_in::<Rational>(f, algebra, a.coords(), order);
    Series::from_coeffs(psi_from_moments_in(&moments, order), order)
}

/// A characteristic series together with its rational reconstruction inside
/// the (p_max, q_max) search box, when one exists, and the value χ = f(1) when
/// that value is an integer.
#[derive(Clone, Debug)]
pub struct CharacteristicFunction {
    pub series: Series<Rational>,
    pub reconstructed: Option<RationalFunction<Rational>>,
    pub chi: Option<i64>,
}

pub fn characteristic_function(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    p_max: usize,
    q_max: usize,
) -> CharacteristicFunction {
    let order = p_max + 2 * q_max + 1;
    let series = char_series(f, algebra, a, order);
    let reconstructed = minimal_rational_type(&series, p_max, q_max).and_then(|(p, q)| {
        pade_reconstruct(&series, p, q)
            .ok()
            .and_then(|fit| fit.rational_function().ok())
    });
    let chi = f.functional_value(algebra.unit_coords()).to_integer();
    CharacteristicFunction { series, reconstructed, chi }
}

/// Check the diagonal identity Φ_k(a, …, a) = k!·ψ_k(f, a) for 1 ≤ k ≤ k_max.
/// The left side runs the recursion, the right side the moment determinants;
/// their agreement ties the multilinear and the generating-series definitions
/// of the characteristic coefficients together.
pub fn diagonal_phi_identity_check(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    k_max: usize,
) -> bool {
    let ground = CommutativeAlgebra::ground();
    let mut evaluator = FrobeniusEvaluator::new(f, algebra, &ground);
    let moments = moments_in::<Rational>(f, algebra, a.coords(), k_max);
    for k in 1..=k_max {
        let phi = evaluator.phi(&vec![a.clone(); k]);
        let expected = newton_psi_in(&moments, k) * Rational::factorial(k);
        if phi.coords()[0] != expected {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Evidence for the failure of a homomorphism test. Every negative verdict
/// carries the first failure found, so a caller can re-check it directly.
#[derive(Clone, Debug, PartialEq)]
pub enum HomWitness {
    /// f(1) is not the value the candidate type requires.
    UnitValue { found: Element },
    /// A basis multiset on which Φ_{n+1} does not vanish.
    FrobeniusTuple { indices: Vec<usize>, value: Element },
    /// A point weight that is not an integer (function algebras only).
    NonIntegralWeight { point: usize, value: Rational },
    /// Integral point weights whose positive or negative part exceeds the type.
    WeightBound { positive: usize, negative: usize },
    /// The characteristic series at this probe element admits no consistent
    /// rational form of the candidate type.
    ProbeInconsistent { probe: Vec<Rational> },
    /// A shifted Hankel determinant of the probe series that the candidate
    /// type requires to vanish, but which does not.
    HankelNonzero { index: isize, value: Rational },
    /// A shifted Hankel determinant in generic coordinates that should vanish
    /// identically, but does not.
    SymbolicHankelNonzero { index: isize },
}

/// Outcome of a classification: an n-homomorphism, a p|q-homomorphism, or
/// neither (with a witness when one test produced it; `None` means the search
/// box was exhausted without a verdict in either direction).
#[derive(Clone, Debug, PartialEq)]
pub enum HomType {
    NHomomorphism { n: usize },
    PqHomomorphism { p: usize, q: usize },
    NotClassified { witness: Option<HomWitness> },
}

impl fmt::Display for HomType {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomType::NHomomorphism { n } => write!(out, "{n}-homomorphism"),
            HomType::PqHomomorphism { p, q } => write!(out, "{p}|{q}-homomorphism"),
            HomType::NotClassified { .. } => write!(out, "not classified"),
        }
    }
}

/// Decide whether f: A → B is an n-homomorphism: f(1) = n·1 and Φ_{n+1} = 0.
/// Since Φ_{n+1} is symmetric and multilinear, vanishing on all multisets of
/// basis elements of size n+1 is equivalent to vanishing everywhere; the
/// number of multisets is capped. n = 0 accepts exactly the zero map.
pub fn is_n_homomorphism(
    f: &LinearMap,
    source: &CommutativeAlgebra,
    target: &CommutativeAlgebra,
    n: usize,
) -> Result<HomType, FrobeniusError> {
    assert_eq!(f.source_dim(), source.dim(), "map does not start on the source algebra");
    assert_eq!(f.target_dim(), target.dim(), "map does not land in the target algebra");
    let unit_image = f.apply_element(&source.unit_element());
    let expected = target.unit_element().scale(&Rational::from_integer(n as i64));
    if unit_image != expected {
        return Ok(HomType::NotClassified {
            witness: Some(HomWitness::UnitValue { found: unit_image }),
        });
    }
    let m = source.dim();
    let needed = binomial(m + n, n + 1).unwrap_or(usize::MAX);
    if needed > MAX_FROBENIUS_TUPLES {
        return Err(FrobeniusError::CapExceeded { needed, cap: MAX_FROBENIUS_TUPLES });
    }
    let mut evaluator = FrobeniusEvaluator::new(f, source, target);
    for indices in multisets(m, n + 1) {
        let args: Vec<Element> = indices.iter().map(|&i| source.basis_element(i)).collect();
        let value = evaluator.phi(&args);
        if !value.is_zero() {
            return Ok(HomType::NotClassified {
                witness: Some(HomWitness::FrobeniusTuple { indices, value }),
            });
        }
    }
    Ok(HomType::NHomomorphism { n })
}

/// The fixed probe element with coordinates 1, 2, …, m. In a function algebra
/// its values are distinct and nonzero, so no factors of the characteristic
/// product can cancel against each other at it.
fn probe_element(m: usize) -> Element {
    Element::new((1..=m as i64).map(Rational::from_integer).collect())
}

/// Certificate that the characteristic series of f at `a` is rational of type
/// at most (p, q): a consistent (p, q) fit through order 2(p+q)+4, plus
/// vanishing of every shifted (q+1)×(q+1) Hankel determinant of the
/// coefficients over the window the order supports (entries left of the start
/// count as zero). Returns the first failure, or None when all checks pass.
fn truncation_window_certificate(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    p: usize,
    q: usize,
) -> Option<HomWitness> {
    let order = 2 * (p + q) + 4;
    let series = char_series_unchecked(f, algebra, a, order);
    match pade_reconstruct(&series, p, q) {
        Ok(fit) if fit.consistent => {}
        _ => return Some(HomWitness::ProbeInconsistent { probe: a.coords().to_vec() }),
    }
    let seq = TraceSequence::new(series.coefficients().to_vec())
        .expect("characteristic series start at ψ₀ = 1");
    let lo = p as isize - q as isize + 1;
    let hi = (order - 2 * q) as isize;
    for k in lo..=hi {
        let det = hankel_det_padded(&seq, k, q + 1);
        if !det.is_zero() {
            return Some(HomWitness::HankelNonzero { index: k, value: det });
        }
    }
    None
}

/// In a function algebra every functional is a weighted sum of point
/// evaluations, and its characteristic series at any element a is the product
/// Π_α (1 + a(x_α) z)^{t_α} over the point weights t_α. The functional is a
/// p|q-homomorphism exactly when every weight is an integer and the positive
/// part is ≤ p, the negative part ≤ q. The probe certificate is run as well —
/// a second route through completely different arithmetic.
fn function_route(f: &LinearMap, algebra: &CommutativeAlgebra, p: usize, q: usize) -> HomType {
    let m = algebra.dim();
    let mut positive = 0usize;
    let mut negative = 0usize;
    for i in 0..m {
        let weight = f.functional_value(algebra.basis_element(i).coords());
        match weight.to_integer() {
            None => {
                return HomType::NotClassified {
                    witness: Some(HomWitness::NonIntegralWeight { point: i, value: weight }),
                }
            }
            Some(w) if w >= 0 => positive += w as usize,
            Some(w) => negative += (-w) as usize,
        }
    }
    if positive > p || negative > q {
        return HomType::NotClassified {
            witness: Some(HomWitness::WeightBound { positive, negative }),
        };
    }
    match truncation_window_certificate(f, algebra, &probe_element(m), p, q) {
        Some(witness) => HomType::NotClassified { witness: Some(witness) },
        None => HomType::PqHomomorphism { p, q },
    }
}

/// Without the function form there is no weight decomposition to read off, so
/// the Hankel window is checked in generic coordinates: the element is
/// Σ x_i e_i with the x_i indeterminate, and every determinant in the window
/// must vanish as a polynomial — which certifies the rationality bound for all
/// elements at once. The monomial budget is capped, and the numeric probe
/// certificate is run afterwards as an independent route.
fn symbolic_route(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    p: usize,
    q: usize,
) -> Result<HomType, FrobeniusError> {
    let m = algebra.dim();
    let order = 2 * (p + q) + 4;
    let needed = binomial(m + order, order).unwrap_or(usize::MAX);
    if needed > SYMBOLIC_TERM_CAP {
        return Err(FrobeniusError::CapExceeded { needed, cap: SYMBOLIC_TERM_CAP });
    }
    let generic: Vec<MPoly> = (0..m).map(MPoly::var).collect();
    let moments = moments_in::<MPoly>(f, algebra, &generic, order);
    let seq = TraceSequence::new(psi_from_moments_in(&moments, order))
        .expect("ψ₀ = 1 in generic coordinates");
    let lo = p as isize - q as isize + 1;
    let hi = (order - 2 * q) as isize;
    for k in lo..=hi {
        if !hankel_det_padded(&seq, k, q + 1).is_zero() {
            return Ok(HomType::NotClassified {
                witness: Some(HomWitness::SymbolicHankelNonzero { index: k }),
            });
        }
    }
    if let Some(witness) = truncation_window_certificate(f, algebra, &probe_element(m), p, q) {
        return Ok(HomType::NotClassified { witness: Some(witness) });
    }
    Ok(HomType::PqHomomorphism { p, q })
}

/// Decide whether a functional on A is a p|q-homomorphism, meaning f(1) = p − q
/// and the characteristic series of every element is rational of type at most
/// (p, q). The classes are nested: a p|q-homomorphism is also a
/// (p+1)|(q+1)-homomorphism. For q = 0 the question is delegated to the
/// Frobenius vanishing test, which settles it by finitely many exact
/// evaluations.
pub fn is_pq_homomorphism(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    p: usize,
    q: usize,
) -> Result<HomType, FrobeniusError> {
    assert_eq!(f.target_dim(), 1, "the p|q test applies to functionals");
    assert_eq!(f.source_dim(), algebra.dim(), "functional does not match the algebra");
    let chi = p as i64 - q as i64;
    let unit_value = f.functional_value(algebra.unit_coords());
    if unit_value != Rational::from_integer(chi) {
        return Ok(HomType::NotClassified {
            witness: Some(HomWitness::UnitValue { found: Element::new(vec![unit_value]) }),
        });
    }
    if q == 0 {
        let ground = CommutativeAlgebra::ground();
        return Ok(match is_n_homomorphism(f, algebra, &ground, p)? {
            HomType::NHomomorphism { n } => HomType::PqHomomorphism { p: n, q: 0 },
            other => other,
        });
    }
    if algebra.is_function_form() {
        Ok(function_route(f, algebra, p, q))
    } else {
        symbolic_route(f, algebra, p, q)
    }
}

fn classify_function(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    p_max: usize,
    q_max: usize,
) -> Result<HomType, FrobeniusError> {
    let m = algebra.dim();
    let mut positive = 0usize;
    let mut negative = 0usize;
    for i in 0..m {
        let weight = f.functional_value(algebra.basis_element(i).coords());
        match weight.to_integer() {
            None => {
                return Ok(HomType::NotClassified {
                    witness: Some(HomWitness::NonIntegralWeight { point: i, value: weight }),
                })
            }
            Some(w) if w >= 0 => positive += w as usize,
            Some(w) => negative += (-w) as usize,
        }
    }
    if positive > p_max || negative > q_max {
        return Ok(HomType::NotClassified {
            witness: Some(HomWitness::WeightBound { positive, negative }),
        });
    }
    // The weights predict the minimal type. An independent check: the smallest
    // consistent rational fit of the probe series must land on the same (p, q)
    // — at a probe with distinct nonzero values no numerator factor can cancel
    // a denominator factor, so the fit sees the true type, not a smaller one.
    let order = p_max + 2 * q_max + 1;
    let probe = probe_element(m);
    let series = char_series_unchecked(f, algebra, &probe, order);
    match minimal_rational_type(&series, p_max, q_max) {
        Some(found) if found == (positive, negative) => {}
        _ => {
            return Ok(HomType::NotClassified {
                witness: Some(HomWitness::ProbeInconsistent { probe: probe.coords().to_vec() }),
            })
        }
    }
    match is_pq_homomorphism(f, algebra, positive, negative)? {
        HomType::PqHomomorphism { .. } => Ok(if negative == 0 {
            HomType::NHomomorphism { n: positive }
        } else {
            HomType::PqHomomorphism { p: positive, q: negative }
        }),
        other => Ok(other),
    }
}

/// Find the minimal type of a functional inside the search box: the smallest
/// q, then the smallest p (which is forced to χ + q). A result with q = 0 is
/// reported as an n-homomorphism. `NotClassified` with no witness means every
/// admissible type in the box was tried and rejected.
pub fn classify(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    p_max: usize,
    q_max: usize,
) -> Result<HomType, FrobeniusError> {
    assert_eq!(f.target_dim(), 1, "classification applies to functionals");
    assert_eq!(f.source_dim(), algebra.dim(), "functional does not match the algebra");
    let unit_value = f.functional_value(algebra.unit_coords());
    let chi = match unit_value.to_integer() {
        Some(chi) => chi,
        None => {
            return Ok(HomType::NotClassified {
                witness: Some(HomWitness::UnitValue { found: Element::new(vec![unit_value]) }),
            })
        }
    };
    if algebra.is_function_form() {
        return classify_function(f, algebra, p_max, q_max);
    }
    for q in 0..=q_max {
        let p = chi + q as i64;
        if p < 0 {
            continue;
        }
        if p > p_max as i64 {
            break;
        }
        if let HomType::PqHomomorphism { .. } = is_pq_homomorphism(f, algebra, p as usize, q)? {
            return Ok(if q == 0 {
                HomType::NHomomorphism { n: p as usize }
            } else {
                HomType::PqHomomorphism { p: p as usize, q }
            });
        }
    }
    Ok(HomType::NotClassified { witness: None })
}

// ---------------------------------------------------------------------------
// Berezinian values and the coefficients at infinity
// ---------------------------------------------------------------------------

/// The multiplicative value of f at an invertible element: with (p, q) the
/// minimal type of f inside the box, the characteristic series of a has a
/// consistent (p, q) form N/D, and the value is the ratio of the leading
/// coefficients of N and D. Any common polynomial factor the fit may carry
/// scales both leading coefficients alike, so the ratio is well defined. For a
/// configuration functional Σ n_α ev_{x_α} it equals Π a(x_α)^{n_α}.
pub fn f_berezinian(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    p_max: usize,
    q_max: usize,
) -> Result<Rational, FrobeniusError> {
    if algebra.element_inverse(a).is_none() {
        return Err(FrobeniusError::NonInvertibleElement);
    }
    let (p, q) = match classify(f, algebra, p_max, q_max)? {
        HomType::NHomomorphism { n } => (n, 0),
        HomType::PqHomomorphism { p, q } => (p, q),
        HomType::NotClassified { .. } => return Err(FrobeniusError::UnclassifiedFunctional),
    };
    let series = char_series(f, algebra, a, p + 2 * q + 1);
    let fit = pade_reconstruct(&series, p, q).map_err(|_| FrobeniusError::ReconstructionFailed)?;
    if !fit.consistent {
        return Err(FrobeniusError::ReconstructionFailed);
    }
    let num_lead = fit
        .numerator
        .leading_coefficient()
        .cloned()
        .expect("the numerator has constant term 1, so it is nonzero");
    let den_lead = fit
        .denominator
        .leading_coefficient()
        .cloned()
        .expect("the denominator has constant term 1, so it is nonzero");
    Ok(num_lead / den_lead)
}

/// ψ*_k(f, a) = ber(f, a) · ψ_{χ−k}(f, a⁻¹): the k-th coefficient of the
/// expansion of the characteristic function at infinity. Defined for
/// invertible a and 0 ≤ k ≤ χ. The inner ψ value is computed by both the
/// exponential and the determinant route.
pub fn psi_star(
    f: &LinearMap,
    algebra: &CommutativeAlgebra,
    a: &Element,
    k: usize,
    p_max: usize,
    q_max: usize,
) -> Result<Rational, FrobeniusError> {
    let inverse = algebra.element_inverse(a).ok_or(FrobeniusError::NonInvertibleElement)?;
    let ber = f_berezinian(f, algebra, a, p_max, q_max)?;
    let chi = f
        .functional_value(algebra.unit_coords())
        .to_integer()
        .expect("a classified functional has integral χ");
    if (k as i64) > chi {
        return Err(FrobeniusError::StarIndexOutOfRange { chi, k });
    }
    let index = (chi - k as i64) as usize;
    let inverse_moments = moments_in::<Rational>(f, algebra, inverse.coords(), index);
    let psi = psi_from_moments_in(&inverse_moments, index);
    let det = newton_psi_in(&inverse_moments, index);
    assert_eq!(
        psi[index], det,
        "ψ_{index} of the inverse disagrees between the exponential and determinant routes"
    );
    Ok(ber * psi[index].clone())
}

// ---------------------------------------------------------------------------
// Lifts between n-homomorphisms and symmetric-power homomorphisms
// ---------------------------------------------------------------------------

/// Lift an n-homomorphism f: A → B to the algebra homomorphism h: Sⁿ A → B
/// determined by it. On the multiset basis class of e_{i₁} ⊗ … ⊗ e_{i_n} the
/// value is Φ_n(f; e_{i₁}, …, e_{i_n}) divided by the product of the
/// multiplicity factorials of the multiset. The result is verified to be an
/// algebra homomorphism before it is returned.
pub fn br_lift(
    f: &LinearMap,
    source: &CommutativeAlgebra,
    target: &CommutativeAlgebra,
    power: &SymmetricPower,
) -> Result<LinearMap, FrobeniusError> {
    assert_eq!(power.base_dim(), source.dim(), "power is over a different algebra");
    let n = power.copies();
    assert!(n >= 1, "the lift needs at least one tensor factor");
    match is_n_homomorphism(f, source, target, n)? {
        HomType::NHomomorphism { .. } => {}
        _ => return Err(FrobeniusError::NotAnNHomomorphism { n }),
    }
    let mut evaluator = FrobeniusEvaluator::new(f, source, target);
    let mut columns = Vec::with_capacity(power.dim());
    for (i, multiset) in power.basis_multisets().iter().enumerate() {
        let args: Vec<Element> = multiset.iter().map(|&b| source.basis_element(b)).collect();
        let value = evaluator.phi(&args);
        let scale = power
            .repetition_factorial(i)
            .recip()
            .expect("repetition factorials are positive");
        columns.push(value.scale(&scale).into_coords());
    }
    let h = LinearMap::new(Matrix::from_fn(target.dim(), power.dim(), |r, c| {
        columns[c][r].clone()
    }));
    if !h.is_homomorphism(power.algebra(), target) {
        return Err(FrobeniusError::LiftPostconditionFailed);
    }
    Ok(h)
}

/// Coordinates in the multiset basis of π(e_i) = Σ_slots 1 ⊗ … ⊗ e_i ⊗ … ⊗ 1.
fn slot_insertion(base: &CommutativeAlgebra, power: &SymmetricPower, i: usize) -> Vec<Rational> {
    let unit = base.unit_coords();
    let mut basis_coords = vec![Rational::from_integer(0); base.dim()];
    basis_coords[i] = Rational::from_integer(1);
    let n = power.copies();
    let mut total = vec![Rational::from_integer(0); power.tensor_algebra().dim()];
    for slot in 0..n {
        let mut acc = vec![Rational::from_integer(1)];
        for s in 0..n {
            let factor: &[Rational] = if s == slot { &basis_coords } else { unit };
            acc = kronecker(&acc, factor);
        }
        for (t, v) in total.iter_mut().zip(acc) {
            *t += v;
        }
    }
    power
        .coordinates_of_tensor(&total)
        .expect("slot insertions are symmetric tensors")
}

/// Recover the n-homomorphism behind an algebra homomorphism h: Sⁿ A → B as
/// the composite a ↦ h(π(a)), with π the sum over the n slot insertions.
/// Inverse to [`br_lift`].
pub fn n_hom_from_sym_hom(
    h: &LinearMap,
    base: &CommutativeAlgebra,
    power: &SymmetricPower,
    target: &CommutativeAlgebra,
) -> Result<LinearMap, FrobeniusError> {
    assert_eq!(power.base_dim(), base.dim(), "power is over a different algebra");
    assert_eq!(h.source_dim(), power.dim(), "map does not start on the symmetric power");
    assert_eq!(h.target_dim(), target.dim(), "map does not land in the target algebra");
    if !h.is_homomorphism(power.algebra(), target) {
        return Err(FrobeniusError::NotAHomomorphism);
    }
    let mut columns = Vec::with_capacity(base.dim());
    for i in 0..base.dim() {
        columns.push(h.apply(&slot_insertion(base, power, i)));
    }
    Ok(LinearMap::new(Matrix::from_fn(target.dim(), base.dim(), |r, c| {
        columns[c][r].clone()
    })))
}

/// Recover the p|q functional behind an algebra homomorphism
/// h: S^{p|q} A → B as the composite a ↦ h(π(a)), where
/// π(a) = π_p(a) ⊗ 1 − 1 ⊗ π_q(a) combines the slot-insertion sums of the two
/// factors. The difference always lands in the p|q subalgebra; if a coordinate
/// solve fails anyway, the offending basis index is reported instead of a
/// silent wrong answer.
pub fn pq_hom_from_sym_hom(
    h: &LinearMap,
    base: &CommutativeAlgebra,
    power: &PqSymmetricPower,
    target: &CommutativeAlgebra,
) -> Result<LinearMap, FrobeniusError> {
    assert_eq!(h.source_dim(), power.dim(), "map does not start on the p|q power");
    assert_eq!(h.target_dim(), target.dim(), "map does not land in the target algebra");
    assert_eq!(power.left().base_dim(), base.dim(), "power is over a different algebra");
    if !h.is_homomorphism(power.algebra(), target) {
        return Err(FrobeniusError::NotAHomomorphism);
    }
    let left_unit = power.left().algebra().unit_coords();
    let right_unit = power.right().algebra().unit_coords();
    let mut columns = Vec::with_capacity(base.dim());
    for i in 0..base.dim() {
        let pi_p = slot_insertion(base, power.left(), i);
        let pi_q = slot_insertion(base, power.right(), i);
        let first = kronecker(&pi_p, right_unit);
        let second = kronecker(left_unit, &pi_q);
        let pair: Vec<Rational> =
            first.iter().zip(second.iter()).map(|(a, b)| a - b).collect();
        let coords = power
            .coordinates_in_pair(&pair)
            .ok_or(FrobeniusError::OutsideSubalgebra { basis: i })?;
        columns.push(h.apply(&coords));
    }
    Ok(LinearMap::new(Matrix::from_fn(target.dim(), base.dim(), |r, c| {
        columns[c][r].clone()
    })))
}

// ---------------------------------------------------------------------------
// Configurations and representations
// ---------------------------------------------------------------------------

/// Read the point configuration behind a functional on a function algebra: the
/// weight of each point must be an integer, and the multiplicity list is those
/// weights. Returns None when some weight is not integral, in which case the
/// functional is not a configuration sum at all.
pub fn recover_configuration(f: &LinearMap, algebra: &CommutativeAlgebra) -> Option<Configuration> {
    assert!(algebra.is_function_form(), "configuration recovery needs a function algebra");
    assert_eq!(f.target_dim(), 1, "configuration recovery applies to functionals");
    assert_eq!(f.source_dim(), algebra.dim(), "functional does not match the algebra");
    let mut multiplicities = Vec::with_capacity(algebra.dim());
    for i in 0..algebra.dim() {
        multiplicities.push(f.functional_value(algebra.basis_element(i).coords()).to_integer()?);
    }
    let space = algebra
        .space()
        .unwrap_or_else(|| FiniteSpace::numbered(algebra.dim()).expect("dimension is positive"));
    Some(Configuration::new(space, multiplicities).expect("one multiplicity per point"))
}

fn combination(images: &[SuperMatrix<Rational>], coords: &[Rational]) -> Matrix<Rational> {
    let n = images[0].dims().total();
    let mut sum = Matrix::zeros(n, n);
    for (image, c) in images.iter().zip(coords) {
        sum = sum + image.matrix().scale(c);
    }
    sum
}

/// The functional a ↦ str ρ(a) of a representation ρ given by the images
/// ρ(e_0), …, ρ(e_{dim−1}) of the basis on a common p|q space. The images are
/// verified first: the unit must map to the identity and every basis product
/// must match the multiplication table, so the result is guaranteed to be the
/// supertrace of an actual representation.
pub fn functional_from_representation(
    algebra: &CommutativeAlgebra,
    images: &[SuperMatrix<Rational>],
) -> Result<LinearMap, FrobeniusError> {
    assert_eq!(images.len(), algebra.dim(), "one image per basis element");
    let dims = images[0].dims();
    for image in images {
        assert_eq!(image.dims(), dims, "representation images share one size");
    }
    if combination(images, algebra.unit_coords()) != Matrix::identity(dims.total()) {
        return Err(FrobeniusError::RepresentationUnitMismatch);
    }
    for i in 0..algebra.dim() {
        for j in i..algebra.dim() {
            let product = images[i].matrix().mul_matrix(images[j].matrix());
            let expected = combination(images, &algebra.mul_basis(i, j));
            if product != expected {
                return Err(FrobeniusError::NotARepresentation { i, j });
            }
        }
    }
    Ok(LinearMap::functional(images.iter().map(supertrace).collect()))
}

/// ρ(a) for a represented algebra: the linear combination of the basis images
/// matching the coordinates of a.
pub fn representation_image(images: &[SuperMatrix<Rational>], a: &Element) -> SuperMatrix<Rational> {
    assert_eq!(images.len(), a.dim(), "one image per coordinate");
    SuperMatrix::from_matrix(images[0].dims(), combination(images, a.coords()))
        .expect("linear combinations preserve the even grading")
}

/// The diagonal representation of an m-point function algebra on ℚ^{p|q}: each
/// diagonal slot is assigned a point, and ρ(δ_i) is the diagonal matrix with 1
/// exactly at the slots assigned to point i. Its supertrace functional is
/// Σ (even slots at x) ev_x − Σ (odd slots at x) ev_x.
pub fn diagonal_representation(
    m: usize,
    even_points: &[usize],
    odd_points: &[usize],
) -> Vec<SuperMatrix<Rational>> {
    for &point in even_points.iter().chain(odd_points) {
        assert!(point < m, "slot point {point} out of range for {m} points");
    }
    let dims = SuperDims::new(even_points.len(), odd_points.len())
        .expect("a representation space needs at least one slot");
    let slots: Vec<usize> = even_points.iter().chain(odd_points).copied().collect();
    (0..m)
        .map(|i| {
            let mat = Matrix::from_fn(slots.len(), slots.len(), |r, c| {
                if r == c && slots[r] == i {
                    Rational::from_integer(1)
                } else {
                    Rational::from_integer(0)
                }
            });
            SuperMatrix::from_matrix(dims, mat).expect("diagonal matrices are even")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pq_symmetric_power, symmetric_power};
    use crate::superlinalg::char_function_series;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn c_of(m: usize) -> CommutativeAlgebra {
        CommutativeAlgebra::function_algebra(&FiniteSpace::numbered(m).unwrap())
    }

    fn functional(values: &[i64]) -> LinearMap {
        LinearMap::functional(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    fn element(coords: &[i64]) -> Element {
        Element::from_integers(coords)
    }

    /// ℚ[ε]/(ε²) on the basis 1, ε — the smallest algebra without the
    /// function form.
    fn dual_numbers() -> CommutativeAlgebra {
        CommutativeAlgebra::from_table(
            vec![z(1), z(0)],
            vec![
                vec![vec![z(1), z(0)], vec![z(0), z(1)]],
                vec![vec![z(0), z(1)], vec![z(0), z(0)]],
            ],
        )
        .unwrap()
    }

    /// The recursion exactly as defined, with the first argument distinguished
    /// and no canonicalization or caching. The evaluator must agree with this
    /// in every argument order — which makes the symmetry of Φ a tested fact
    /// rather than an artifact of the evaluator's sorting.
    fn raw_phi(
        f: &LinearMap,
        source: &CommutativeAlgebra,
        target: &CommutativeAlgebra,
        args: &[Element],
    ) -> Element {
        if args.len() == 1 {
            return f.apply_element(&args[0]);
        }
        let head = &args[0];
        let rest = &args[1..];
        let mut acc = target.mul(&f.apply_element(head), &raw_phi(f, source, target, rest));
        for j in 0..rest.len() {
            let mut merged = rest.to_vec();
            merged[j] = source.mul(head, &merged[j]);
            acc = acc - raw_phi(f, source, target, &merged);
        }
        acc
    }

    #[test]
    fn evaluator_matches_raw_recursion_in_every_argument_order() {
        let algebra = c_of(3);
        let ground = CommutativeAlgebra::ground();
        let f = functional(&[1, 1, -1]);
        let all = [element(&[1, 2, 3]), element(&[2, 0, 1]), element(&[1, 1, 4])];
        let expected = raw_phi(&f, &algebra, &ground, &all);
        let mut evaluator = FrobeniusEvaluator::new(&f, &algebra, &ground);
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for perm in orders {
            let args: Vec<Element> = perm.iter().map(|&i| all[i].clone()).collect();
            assert_eq!(raw_phi(&f, &algebra, &ground, &args), expected, "order {perm:?}");
            assert_eq!(evaluator.phi(&args), expected, "order {perm:?}");
        }
    }

    #[test]
    fn phi_values_for_a_sum_of_two_evaluations() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let f = functional(&[1, 1]);
        let a = element(&[1, 2]);
        let phi =
            |k: usize| frobenius_phi(&f, &algebra, &ground, &vec![a.clone(); k]).coords()[0].clone();
        assert_eq!(phi(1), z(3));
        assert_eq!(phi(2), z(4));
        assert_eq!(phi(3), z(0));
    }

    #[test]
    fn newton_determinants_on_fixed_moment_lists() {
        assert_eq!(newton_psi_in::<Rational>(&[], 0), z(1));
        assert_eq!(newton_psi_in(&[z(7)], 1), z(7));
        // (s₁² − s₂)/2 with s = (3, 5).
        assert_eq!(newton_psi_in(&[z(3), z(5)], 2), z(2));
        // The moments of a = (1, 2) under ev₁ + ev₂; the cubic coefficient of
        // (1 + z)(1 + 2z) is zero.
        assert_eq!(newton_psi_in(&[z(3), z(5), z(9)], 3), z(0));
    }

    #[test]
    fn moment_sequences_record_the_unit_value_separately() {
        let algebra = c_of(2);
        let f = functional(&[1, 1]);
        let ms = moments(&f, &algebra, &element(&[1, 2]), 3);
        assert_eq!(ms.value(0), &z(2));
        assert_eq!(ms.value(1), &z(3));
        assert_eq!(ms.value(2), &z(5));
        assert_eq!(ms.value(3), &z(9));
        assert_eq!(newton_psi(&ms, 2).unwrap(), z(2));
        assert_eq!(newton_psi(&ms, 3).unwrap(), z(0));
        assert_eq!(
            newton_psi(&ms, 4),
            Err(FrobeniusError::InsufficientMoments { have: 3, need: 4 })
        );
    }

    #[test]
    fn characteristic_series_of_a_two_point_sum_is_a_polynomial() {
        // ev₁ + ev₂ at a = (1, 2): R = (1 + z)(1 + 2z) = 1 + 3z + 2z².
        let algebra = c_of(2);
        let series = char_series(&functional(&[1, 1]), &algebra, &element(&[1, 2]), 4);
        assert_eq!(series.coefficients().to_vec(), vec![z(1), z(3), z(2), z(0), z(0)]);
    }

    #[test]
    fn characteristic_series_of_a_difference_matches_long_division() {
        // ev₁ − ev₂ at a = (1, 2): R = (1 + z)/(1 + 2z). The oracle divides
        // directly by the geometric recurrence c_k = a_k − 2·c_{k−1}.
        let algebra = c_of(2);
        let series = char_series(&functional(&[1, -1]), &algebra, &element(&[1, 2]), 3);
        let mut oracle = vec![z(1), z(1), z(0), z(0)];
        for k in 1..oracle.len() {
            let prev = oracle[k - 1].clone();
            oracle[k] = oracle[k].clone() - z(2) * prev;
        }
        assert_eq!(oracle, vec![z(1), z(-1), z(2), z(-4)]);
        assert_eq!(series.coefficients().to_vec(), oracle);
    }

    #[test]
    fn checked_and_unchecked_series_agree() {
        let algebra = c_of(3);
        let f = functional(&[2, -1, 1]);
        let a = element(&[3, 5, 7]);
        assert_eq!(char_series(&f, &algebra, &a, 8), char_series_unchecked(&f, &algebra, &a, 8));
    }

    #[test]
    fn characteristic_function_reconstructs_the_rational_form() {
        let algebra = c_of(2);
        let cf =
            characteristic_function(&functional(&[1, -1]), &algebra, &element(&[1, 2]), 2, 2);
        assert_eq!(cf.chi, Some(0));
        let rf = cf.reconstructed.expect("type 1|1 lies inside the box");
        assert_eq!(rf.type_degrees(), (1, 1));
        assert_eq!(rf.numerator().coeffs().to_vec(), vec![z(1), z(1)]);
        assert_eq!(rf.denominator().coeffs().to_vec(), vec![z(1), z(2)]);
    }

    #[test]
    fn diagonal_values_of_phi_match_the_series_coefficients() {
        assert!(diagonal_phi_identity_check(&functional(&[1, 1]), &c_of(2), &element(&[1, 2]), 6));
        assert!(diagonal_phi_identity_check(&functional(&[2, -1]), &c_of(2), &element(&[3, 5]), 5));
        assert!(diagonal_phi_identity_check(
            &functional(&[1, 1, -2]),
            &c_of(3),
            &element(&[2, 3, 5]),
            5
        ));
    }

    #[test]
    fn sums_of_point_evaluations_are_n_homomorphisms() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        assert_eq!(
            is_n_homomorphism(&functional(&[1, 1]), &algebra, &ground, 2).unwrap(),
            HomType::NHomomorphism { n: 2 }
        );
        // A doubled point counts with its multiplicity.
        assert_eq!(
            is_n_homomorphism(&functional(&[2, 0]), &algebra, &ground, 2).unwrap(),
            HomType::NHomomorphism { n: 2 }
        );
    }

    #[test]
    fn wrong_order_fails_on_the_unit() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        match is_n_homomorphism(&functional(&[1, 1]), &algebra, &ground, 1).unwrap() {
            HomType::NotClassified { witness: Some(HomWitness::UnitValue { found }) } => {
                assert_eq!(found, Element::from_integers(&[2]));
            }
            other => panic!("expected a unit witness, got {other:?}"),
        }
    }

    #[test]
    fn mixed_signs_fail_with_a_frobenius_tuple() {
        // f = 3·ev₁ − ev₂ has f(1) = 2 but is no 2-homomorphism: already on
        // the diagonal of δ₁ the cubic coefficient of (1 + z)³ survives, so
        // Φ₃(δ₁, δ₁, δ₁) = 3!·1 = 6.
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        match is_n_homomorphism(&functional(&[3, -1]), &algebra, &ground, 2).unwrap() {
            HomType::NotClassified {
                witness: Some(HomWitness::FrobeniusTuple { indices, value }),
            } => {
                assert_eq!(indices, vec![0, 0, 0]);
                assert_eq!(value, Element::from_integers(&[6]));
            }
            other => panic!("expected a tuple witness, got {other:?}"),
        }
    }

    #[test]
    fn differences_of_evaluations_have_type_one_one() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let f = functional(&[1, -1]);
        assert_eq!(
            is_pq_homomorphism(&f, &algebra, 1, 1).unwrap(),
            HomType::PqHomomorphism { p: 1, q: 1 }
        );
        // No n-homomorphism of any small order.
        for n in 0..=4 {
            assert!(matches!(
                is_n_homomorphism(&f, &algebra, &ground, n).unwrap(),
                HomType::NotClassified { .. }
            ));
        }
    }

    #[test]
    fn two_plus_one_configuration_and_its_rejections() {
        let algebra = c_of(3);
        let f = functional(&[1, 1, -1]);
        assert_eq!(
            is_pq_homomorphism(&f, &algebra, 2, 1).unwrap(),
            HomType::PqHomomorphism { p: 2, q: 1 }
        );
        // The classes are nested upward.
        assert_eq!(
            is_pq_homomorphism(&f, &algebra, 3, 2).unwrap(),
            HomType::PqHomomorphism { p: 3, q: 2 }
        );
        // Type 1|0 has the right unit value but fails the vanishing test.
        assert!(matches!(
            is_pq_homomorphism(&f, &algebra, 1, 0).unwrap(),
            HomType::NotClassified { witness: Some(HomWitness::FrobeniusTuple { .. }) }
        ));
        // Type 2|2 already fails on the unit: f(1) = 1 ≠ 0.
        assert!(matches!(
            is_pq_homomorphism(&f, &algebra, 2, 2).unwrap(),
            HomType::NotClassified { witness: Some(HomWitness::UnitValue { .. }) }
        ));
    }

    #[test]
    fn fractional_weights_are_detected_point_by_point() {
        let algebra = c_of(2);
        let half = LinearMap::functional(vec![q(1, 2), q(1, 2)]);
        assert!(matches!(
            is_pq_homomorphism(&half, &algebra, 2, 1).unwrap(),
            HomType::NotClassified {
                witness: Some(HomWitness::NonIntegralWeight { point: 0, .. })
            }
        ));
    }

    #[test]
    fn classification_finds_the_minimal_type() {
        assert_eq!(
            classify(&functional(&[1, -1]), &c_of(2), 3, 3).unwrap(),
            HomType::PqHomomorphism { p: 1, q: 1 }
        );
        assert_eq!(
            classify(&functional(&[1, 1]), &c_of(2), 3, 3).unwrap(),
            HomType::NHomomorphism { n: 2 }
        );
        assert_eq!(
            classify(&functional(&[3, -2, 1]), &c_of(3), 5, 5).unwrap(),
            HomType::PqHomomorphism { p: 4, q: 2 }
        );
        // The zero functional is the unique 0-homomorphism.
        assert_eq!(
            classify(&functional(&[0, 0]), &c_of(2), 3, 3).unwrap(),
            HomType::NHomomorphism { n: 0 }
        );
    }

    #[test]
    fn classification_refusals_carry_witnesses() {
        // A non-integral unit value rules out every type at once.
        let half = LinearMap::functional(vec![q(1, 2)]);
        assert!(matches!(
            classify(&half, &c_of(1), 4, 4).unwrap(),
            HomType::NotClassified { witness: Some(HomWitness::UnitValue { .. }) }
        ));
        // A genuine 2|1 functional does not fit in a box with q_max = 0.
        assert!(matches!(
            classify(&functional(&[1, 1, -1]), &c_of(3), 5, 0).unwrap(),
            HomType::NotClassified {
                witness: Some(HomWitness::WeightBound { positive: 2, negative: 1 })
            }
        ));
    }

    #[test]
    fn quotient_map_of_dual_numbers_is_a_one_homomorphism() {
        // a₀ + a₁ε ↦ a₀ is the projection onto the ground field.
        let algebra = dual_numbers();
        assert_eq!(
            classify(&functional(&[1, 0]), &algebra, 3, 3).unwrap(),
            HomType::NHomomorphism { n: 1 }
        );
    }

    #[test]
    fn generic_coordinates_reject_a_non_multiplicative_functional() {
        // a₀ + a₁ε ↦ a₀ + a₁ is linear but not multiplicative; its generic
        // characteristic series is (1 + x₀z)·exp(x₁z/(1 + x₀z)), rational for
        // no (p, q).
        let algebra = dual_numbers();
        let skew = functional(&[1, 1]);
        match is_pq_homomorphism(&skew, &algebra, 2, 1).unwrap() {
            HomType::NotClassified {
                witness: Some(HomWitness::SymbolicHankelNonzero { .. }),
            } => {}
            other => panic!("expected a symbolic witness, got {other:?}"),
        }
        assert_eq!(
            classify(&skew, &algebra, 3, 3).unwrap(),
            HomType::NotClassified { witness: None }
        );
    }

    #[test]
    fn generic_moments_specialize_to_numeric_ones() {
        let algebra = c_of(2);
        let f = functional(&[1, -1]);
        let generic: Vec<MPoly> = (0..2).map(MPoly::var).collect();
        let symbolic = moments_in::<MPoly>(&f, &algebra, &generic, 4);
        let point = [z(3), z(7)];
        let numeric = moments_in::<Rational>(&f, &algebra, &point, 4);
        for k in 0..4 {
            assert_eq!(symbolic[k].eval(&point), numeric[k], "moment {}", k + 1);
        }
    }

    #[test]
    fn generic_certificate_respects_the_monomial_cap() {
        // 32 generic coordinates at window order 12 would need billions of
        // monomials; the cap turns that into an error up front.
        let big = CommutativeAlgebra::tensor_power(&dual_numbers(), 5).unwrap();
        let zero = LinearMap::functional(vec![z(0); big.dim()]);
        assert!(matches!(
            is_pq_homomorphism(&zero, &big, 1, 1),
            Err(FrobeniusError::CapExceeded { .. })
        ));
    }

    #[test]
    fn berezinian_value_of_a_difference_is_the_value_ratio() {
        let algebra = c_of(2);
        assert_eq!(
            f_berezinian(&functional(&[1, -1]), &algebra, &element(&[2, 3]), 3, 3).unwrap(),
            q(2, 3)
        );
        // For an n-homomorphism it degenerates to the plain product of values.
        assert_eq!(
            f_berezinian(&functional(&[1, 1]), &algebra, &element(&[2, 3]), 3, 3).unwrap(),
            z(6)
        );
    }

    #[test]
    fn berezinian_value_is_multiplicative() {
        let algebra = c_of(2);
        let f = functional(&[1, -1]);
        let a1 = element(&[2, 1]);
        let a2 = element(&[1, 3]);
        let b1 = f_berezinian(&f, &algebra, &a1, 3, 3).unwrap();
        let b2 = f_berezinian(&f, &algebra, &a2, 3, 3).unwrap();
        let product = algebra.mul(&a1, &a2);
        assert_eq!(f_berezinian(&f, &algebra, &product, 3, 3).unwrap(), b1 * b2);
    }

    #[test]
    fn berezinian_value_requires_classification_and_invertibility() {
        let algebra = c_of(2);
        assert_eq!(
            f_berezinian(
                &LinearMap::functional(vec![q(1, 2), z(0)]),
                &algebra,
                &element(&[1, 1]),
                3,
                3
            ),
            Err(FrobeniusError::UnclassifiedFunctional)
        );
        assert_eq!(
            f_berezinian(&functional(&[1, -1]), &algebra, &element(&[0, 2]), 3, 3),
            Err(FrobeniusError::NonInvertibleElement)
        );
    }

    #[test]
    fn star_coefficients_reproduce_the_polynomial_coefficients() {
        // For the 2-homomorphism ev₁ + ev₂ at a = (1, 2) the expansion at
        // infinity carries the same coefficients as the one at zero:
        // ψ*₂ = ber(a)·ψ₀(a⁻¹) = 2, ψ*₁ = 2·(1 + 1/2) = 3, ψ*₀ = 2·(1/2) = 1.
        let algebra = c_of(2);
        let f = functional(&[1, 1]);
        let a = element(&[1, 2]);
        assert_eq!(psi_star(&f, &algebra, &a, 0, 3, 3).unwrap(), z(1));
        assert_eq!(psi_star(&f, &algebra, &a, 1, 3, 3).unwrap(), z(3));
        assert_eq!(psi_star(&f, &algebra, &a, 2, 3, 3).unwrap(), z(2));
        assert_eq!(
            psi_star(&f, &algebra, &a, 3, 3, 3),
            Err(FrobeniusError::StarIndexOutOfRange { chi: 2, k: 3 })
        );
        assert_eq!(
            psi_star(&f, &algebra, &element(&[0, 2]), 1, 3, 3),
            Err(FrobeniusError::NonInvertibleElement)
        );
        // χ = 0 for a difference: the single star coefficient is the
        // Berezinian value itself.
        assert_eq!(
            psi_star(&functional(&[1, -1]), &algebra, &element(&[2, 3]), 0, 3, 3).unwrap(),
            q(2, 3)
        );
    }

    #[test]
    fn lift_of_a_doubled_evaluation_is_the_squared_class_character() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let power = symmetric_power(&algebra, 2).unwrap();
        // Multiset basis order: {δ₁δ₁}, {δ₁δ₂}, {δ₂δ₂}.
        let h = br_lift(&functional(&[2, 0]), &algebra, &ground, &power).unwrap();
        assert_eq!(h.matrix().row(0).to_vec(), vec![z(1), z(0), z(0)]);
        let hg = br_lift(&functional(&[1, 1]), &algebra, &ground, &power).unwrap();
        assert_eq!(hg.matrix().row(0).to_vec(), vec![z(0), z(1), z(0)]);
    }

    #[test]
    fn lift_with_one_copy_returns_the_map_itself() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let single = symmetric_power(&algebra, 1).unwrap();
        let f = functional(&[1, 1]);
        // f is no 1-homomorphism, so lift a genuine one: a single evaluation.
        let ev = functional(&[1, 0]);
        let h = br_lift(&ev, &algebra, &ground, &single).unwrap();
        assert_eq!(h.matrix(), ev.matrix());
        assert!(matches!(
            br_lift(&f, &algebra, &ground, &single),
            Err(FrobeniusError::NotAnNHomomorphism { n: 1 })
        ));
    }

    #[test]
    fn lift_and_pullback_are_inverse() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let power = symmetric_power(&algebra, 2).unwrap();
        for weights in [[2, 0], [1, 1], [0, 2]] {
            let f = functional(&weights);
            let h = br_lift(&f, &algebra, &ground, &power).unwrap();
            let back = n_hom_from_sym_hom(&h, &algebra, &power, &ground).unwrap();
            assert_eq!(back, f, "weights {weights:?}");
        }
    }

    #[test]
    fn pullback_rejects_non_homomorphisms() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let power = symmetric_power(&algebra, 2).unwrap();
        // Values (1, 1, 1) on the multiset basis send the unit to 3.
        let bad = LinearMap::functional(vec![z(1), z(1), z(1)]);
        assert!(matches!(
            n_hom_from_sym_hom(&bad, &algebra, &power, &ground),
            Err(FrobeniusError::NotAHomomorphism)
        ));
    }

    #[test]
    fn pair_evaluation_pulls_back_to_a_difference() {
        let algebra = c_of(2);
        let ground = CommutativeAlgebra::ground();
        let power = pq_symmetric_power(&algebra, 1, 1).unwrap();
        // S¹A ⊗ S¹A is the function algebra on the 2×2 grid; index 1 is the
        // ordered pair (x₁, x₂) and index 0 the diagonal point (x₁, x₁).
        let eval_off = LinearMap::functional(
            (0..power.dim()).map(|j| power.pair_vector(j)[1].clone()).collect(),
        );
        let f = pq_hom_from_sym_hom(&eval_off, &algebra, &power, &ground).unwrap();
        assert_eq!(f, functional(&[1, -1]));
        // On the diagonal the two slots cancel and the pullback is zero.
        let eval_diag = LinearMap::functional(
            (0..power.dim()).map(|j| power.pair_vector(j)[0].clone()).collect(),
        );
        let zero = pq_hom_from_sym_hom(&eval_diag, &algebra, &power, &ground).unwrap();
        assert_eq!(zero, functional(&[0, 0]));
    }

    #[test]
    fn configurations_are_recovered_from_their_functionals() {
        let algebra = c_of(4);
        let f = functional(&[2, -1, 0, 1]);
        let config = recover_configuration(&f, &algebra).unwrap();
        assert_eq!(config.multiplicities(), &[2, -1, 0, 1]);
        assert_eq!(config.chi(), 2);
        assert_eq!(config.rational_type(), (3, 1));
        assert_eq!(config.functional(), f);
        assert!(recover_configuration(
            &LinearMap::functional(vec![q(1, 2), z(0), z(0), z(0)]),
            &algebra
        )
        .is_none());
    }

    #[test]
    fn diagonal_representation_supertrace_is_a_signed_evaluation_sum() {
        let algebra = c_of(2);
        let images = diagonal_representation(2, &[0], &[1]);
        let f = functional_from_representation(&algebra, &images).unwrap();
        assert_eq!(f, functional(&[1, -1]));
    }

    #[test]
    fn representation_traces_match_the_characteristic_series() {
        // str ρ(aᵏ) are the moments of the supertrace functional, so the
        // coefficient sequence of ρ(a) must equal the characteristic series.
        let algebra = c_of(2);
        let images = diagonal_representation(2, &[0], &[1]);
        let f = functional_from_representation(&algebra, &images).unwrap();
        let a = element(&[5, 7]);
        let series = char_series(&f, &algebra, &a, 4);
        let traces = char_function_series(&representation_image(&images, &a), 4).unwrap();
        for k in 0..=4 {
            assert_eq!(series.coefficient(k), traces.value(k as isize), "coefficient {k}");
        }
    }

    #[test]
    fn conjugated_idempotents_still_form_a_representation() {
        // A non-diagonal pair of complementary idempotents on ℚ^{2|0}: the
        // checks pass and the supertrace functional is ev₁ + ev₂.
        let dims = SuperDims::new(2, 0).unwrap();
        let r1 = SuperMatrix::from_matrix(
            dims,
            Matrix::from_rows(vec![vec![z(1), z(1)], vec![z(0), z(0)]]),
        )
        .unwrap();
        let r2 = SuperMatrix::from_matrix(
            dims,
            Matrix::from_rows(vec![vec![z(0), z(-1)], vec![z(0), z(1)]]),
        )
        .unwrap();
        let algebra = c_of(2);
        let f = functional_from_representation(&algebra, &[r1, r2]).unwrap();
        assert_eq!(f, functional(&[1, 1]));
    }

    #[test]
    fn representation_checks_reject_bad_images() {
        let algebra = c_of(2);
        let dims = SuperDims::new(2, 0).unwrap();
        let images = diagonal_representation(2, &[0], &[1]);
        // Two copies of the same idempotent: the unit maps to diag(2, 0).
        assert_eq!(
            functional_from_representation(&algebra, &[images[0].clone(), images[0].clone()]),
            Err(FrobeniusError::RepresentationUnitMismatch)
        );
        // Unit correct, but the first image is not idempotent.
        let r1 = SuperMatrix::from_matrix(
            dims,
            Matrix::from_rows(vec![vec![z(1), z(1)], vec![z(0), z(1)]]),
        )
        .unwrap();
        let r2 = SuperMatrix::from_matrix(
            dims,
            Matrix::from_rows(vec![vec![z(0), z(-1)], vec![z(0), z(0)]]),
        )
        .unwrap();
        assert_eq!(
            functional_from_representation(&algebra, &[r1, r2]),
            Err(FrobeniusError::NotARepresentation { i: 0, j: 0 })
        );
    }

    #[test]
    fn type_outcomes_print_compactly() {
        assert_eq!(HomType::NHomomorphism { n: 2 }.to_string(), "2-homomorphism");
        assert_eq!(HomType::PqHomomorphism { p: 2, q: 1 }.to_string(), "2|1-homomorphism");
        assert_eq!(HomType::NotClassified { witness: None }.to_string(), "not classified");
    }
}
