//! Supertraces and Berezinians of block matrices over exact rings.
//!
//! A p|q supermatrix is an even block matrix: the p×p and q×q diagonal blocks
//! carry even entries, the off-diagonal blocks odd entries. Over the rationals
//! this forces the off-diagonal blocks to vanish; genuinely super examples
//! need Grassmann coefficients. Evenness is checked at construction, so every
//! `SuperMatrix` in circulation is even and its entries are central — which is
//! what lets the generic determinant kernels apply unchanged.
//!
//! The headline quantities each come with two independent computation routes
//! that the module compares exactly: the characteristic series of Ber(1+zM)
//! via str∘log∘exp and via a Berezinian over series entries, and the
//! Berezinian itself via the Schur-complement block formula and via a ratio of
//! Hankel minors of the trace sequence. Disagreement is reported as an error
//! carrying both values, never papered over.

use std::fmt;

use num::traits::{One, Zero};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::scalar::{Parity, Scalar};
use crate::series::Series;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SuperError {
    #[error("super dimensions p|q need p + q ≥ 1")]
    EmptyDims,
    #[error("block {block} has shape {found_rows}x{found_cols}, expected {rows}x{cols}")]
    BlockShape {
        block: &'static str,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("entry ({row}, {col}) breaks the even grading: parity {found:?}, expected {expected:?}")]
    ParityViolation {
        row: usize,
        col: usize,
        expected: Parity,
        found: Parity,
    },
    #[error("odd-odd block is not invertible")]
    OddBlockNotInvertible,
    #[error("denominator Hankel minor is not invertible; ratio is indeterminate")]
    IndeterminateRatio,
    #[error("trace sequence must start with 1, found {0}")]
    LeadingTermNotOne(String),
    #[error("computation paths disagree at coefficient {index}: {left} vs {right}")]
    PathDisagreement {
        index: usize,
        left: String,
        right: String,
    },
}

/// Even and odd dimensions of a super vector space, written p|q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperDims {
    pub p: usize,
    pub q: usize,
}

impl SuperDims {
    pub fn new(p: usize, q: usize) -> Result<SuperDims, SuperError> {
        if p + q == 0 {
            return Err(SuperError::EmptyDims);
        }
        Ok(SuperDims { p, q })
    }

    pub fn total(&self) -> usize {
        self.p + self.q
    }
}

impl fmt::Display for SuperDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.p, self.q)
    }
}

/// An even p|q block matrix with entries in an exact scalar ring.
///
/// Stored as the full (p+q)×(p+q) matrix; the four blocks are views. The
/// constructors reject any entry whose parity disagrees with its block — the
/// diagonal blocks must be even, the off-diagonal blocks odd, and zero is
/// acceptable everywhere.
#[derive(Clone, PartialEq)]
pub struct SuperMatrix<R> {
    dims: SuperDims,
    mat: Matrix<R>,
}

impl<R: Scalar> SuperMatrix<R> {
    /// Assemble from the four blocks A₀₀ (p×p), A₀₁ (p×q), A₁₀ (q×p), A₁₁ (q×q).
    pub fn from_blocks(
        dims: SuperDims,
        a00: Matrix<R>,
        a01: Matrix<R>,
        a10: Matrix<R>,
        a11: Matrix<R>,
    ) -> Result<SuperMatrix<R>, SuperError> {
        let (p, q) = (dims.p, dims.q);
        for (name, m, rows, cols) in [
            ("a00", &a00, p, p),
            ("a01", &a01, p, q),
            ("a10", &a10, q, p),
            ("a11", &a11, q, q),
        ] {
            if m.rows() != rows || m.cols() != cols {
                return Err(SuperError::BlockShape {
                    block: name,
                    rows,
                    cols,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        let mat = Matrix::from_fn(p + q, p + q, |i, j| match (i < p, j < p) {
            (true, true) => a00[(i, j)].clone(),
            (true, false) => a01[(i, j - p)].clone(),
            (false, true) => a10[(i - p, j)].clone(),
            (false, false) => a11[(i - p, j - p)].clone(),
        });
        SuperMatrix::from_matrix(dims, mat)
    }

    /// Wrap a full (p+q)×(p+q) matrix, checking the even grading.
    pub fn from_matrix(dims: SuperDims, mat: Matrix<R>) -> Result<SuperMatrix<R>, SuperError> {
        if dims.total() == 0 {
            return Err(SuperError::EmptyDims);
        }
        let n = dims.total();
        assert!(
            mat.rows() == n && mat.cols() == n,
            "matrix is {}x{}, dimensions say {}",
            mat.rows(),
            mat.cols(),
            dims
        );
        for i in 0..n {
            for j in 0..n {
                let entry = &mat[(i, j)];
                if entry.is_zero() {
                    continue;
                }
                let expected = if (i < dims.p) == (j < dims.p) {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                let found = entry.parity();
                if found != expected {
                    return Err(SuperError::ParityViolation {
                        row: i,
                        col: j,
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(SuperMatrix { dims, mat })
    }

    pub fn identity(dims: SuperDims) -> SuperMatrix<R> {
        SuperMatrix {
            dims,
            mat: Matrix::identity(dims.total()),
        }
    }

    pub fn dims(&self) -> SuperDims {
        self.dims
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.mat
    }

    /// Copy of the block at block-row `r`, block-column `c` (each 0 or 1).
    pub fn block(&self, r: usize, c: usize) -> Matrix<R> {
        assert!(r < 2 && c < 2, "block indices are 0 or 1");
        let (p, q) = (self.dims.p, self.dims.q);
        let (rows, row_off) = if r == 0 { (p, 0) } else { (q, p) };
        let (cols, col_off) = if c == 0 { (p, 0) } else { (q, p) };
        Matrix::from_fn(rows, cols, |i, j| self.mat[(i + row_off, j + col_off)].clone())
    }

    /// Matrix product. Evenness is preserved by the grading, and rechecked.
    pub fn mul(&self, rhs: &SuperMatrix<R>) -> SuperMatrix<R> {
        assert_eq!(self.dims, rhs.dims, "super dimensions differ in product");
        SuperMatrix::from_matrix(self.dims, self.mat.mul_matrix(&rhs.mat))
            .expect("product of even matrices is even")
    }

    pub fn add(&self, rhs: &SuperMatrix<R>) -> SuperMatrix<R> {
        assert_eq!(self.dims, rhs.dims, "super dimensions differ in sum");
        SuperMatrix::from_matrix(self.dims, self.mat.clone() + rhs.mat.clone())
            .expect("sum of even matrices is even")
    }
}

impl<R: Scalar> fmt::Debug for SuperMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperMatrix {} {:?}", self.dims, self.mat)
    }
}

/// str A = tr A₀₀ − tr A₁₁.
pub fn supertrace<R: Scalar>(m: &SuperMatrix<R>) -> R {
    let n = m.dims().total();
    let p = m.dims().p;
    let mut acc = R::zero();
    for i in 0..n {
        let d = m.matrix()[(i, i)].clone();
        if i < p {
            acc = acc + d;
        } else {
            acc = acc - d;
        }
    }
    acc
}

/// Ber A = det(A₀₀ − A₀₁ A₁₁⁻¹ A₁₀) / det A₁₁, via the Schur complement.
///
/// Requires A₁₁ invertible (equivalently det A₁₁ invertible in the coefficient
/// ring — a nonzero body over Grassmann coefficients, a unit constant term
/// over series). For q = 0 this is the ordinary determinant.
pub fn berezinian_block<R: Scalar>(m: &SuperMatrix<R>) -> Result<R, SuperError> {
    let q = m.dims().q;
    let a00 = m.block(0, 0);
    if q == 0 {
        return Ok(a00.det());
    }
    let a11 = m.block(1, 1);
    let det11_inv = a11
        .det()
        .inverse()
        .ok_or(SuperError::OddBlockNotInvertible)?;
    let a11_inv = a11
        .inverse_adjugate()
        .ok_or(SuperError::OddBlockNotInvertible)?;
    let schur = a00 - m.block(0, 1).mul_matrix(&a11_inv).mul_matrix(&m.block(1, 0));
    Ok(schur.det() * det11_inv)
}

/// The coefficients c₀, c₁, …, c_K of Ber(1 + zM), with c₀ = 1.
///
/// Negative indices are read as zero, the convention that makes the Hankel
/// minors below total when p < q.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceSequence<R> {
    values: Vec<R>,
}

impl<R: Scalar> TraceSequence<R> {
    pub fn new(values: Vec<R>) -> Result<TraceSequence<R>, SuperError> {
        match values.first() {
            Some(c0) if c0.is_one() => Ok(TraceSequence { values }),
            Some(c0) => Err(SuperError::LeadingTermNotOne(format!("{c0}"))),
            None => Err(SuperError::LeadingTermNotOne("empty sequence".into())),
        }
    }

    /// c_j, with c_j = 0 for j < 0. Indices beyond the computed range are a
    /// caller error.
    pub fn value(&self, j: isize) -> R {
        if j < 0 {
            return R::zero();
        }
        let j = j as usize;
        assert!(
            j < self.values.len(),
            "trace sequence computed to index {}, asked for {}",
            self.values.len() - 1,
            j
        );
        self.values[j].clone()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }
}

/// The size×size Hankel determinant |c_start … c_{start+2(size−1)}| with
/// entries c_{start+i+j}, negative indices reading as zero.
pub fn hankel_det_padded<R: Scalar>(c: &TraceSequence<R>, start: isize, size: usize) -> R {
    Matrix::from_fn(size, size, |i, j| c.value(start + (i + j) as isize)).det()
}

/// Series of Ber(1 + zM) through z^order, by two independent routes.
///
/// Route one takes str of log(1 + zM) over matrix powers and exponentiates
/// the resulting scalar series. Route two evaluates the Schur-complement
/// Berezinian directly over series-valued entries, where the odd-odd block of
/// 1 + zM has unit constant term and is therefore invertible. The routes must
/// agree coefficientwise; a mismatch is returned as an error with both values.
pub fn char_function_series<R: Scalar>(
    m: &SuperMatrix<R>,
    order: usize,
) -> Result<TraceSequence<R>, SuperError> {
    assert!(order >= 1, "series order must be at least 1");
    let dims = m.dims();
    let n = dims.total();

    // str log(1 + zM) = Σ_{k≥1} (−1)^{k+1} str(Mᵏ) zᵏ / k, then exp.
    let mut log_coeffs = vec![R::zero()];
    let mut power = Matrix::<R>::identity(n);
    for k in 1..=order {
        power = power.mul_matrix(m.matrix());
        let mut str_k = R::zero();
        for i in 0..n {
            let d = power[(i, i)].clone();
            if i < dims.p {
                str_k = str_k + d;
            } else {
                str_k = str_k - d;
            }
        }
        let factor = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        log_coeffs.push(str_k * R::from_rational(&factor));
    }
    let via_trace = Series::from_coeffs(log_coeffs, order)
        .exp()
        .expect("constant term is zero by construction");

    // Ber(1 + zM) with entries in truncated series over the same ring.
    let entries = Matrix::from_fn(n, n, |i, j| {
        let constant = if i == j { R::one() } else { R::zero() };
        Series::from_coeffs(vec![constant, m.matrix()[(i, j)].clone()], order)
    });
    let one_plus_zm = SuperMatrix::from_matrix(dims, entries)
        .expect("1 + zM inherits the even grading of M");
    let via_blocks = berezinian_block(&one_plus_zm)?;

    let mut values = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let left = via_trace.coefficient(k);
        let right = via_blocks.coefficient(k);
        if left != right {
            return Err(SuperError::PathDisagreement {
                index: k,
                left: format!("{left}"),
                right: format!("{right}"),
            });
        }
        values.push(left);
    }
    TraceSequence::new(values)
}

/// Outcome of checking the (q+1)×(q+1) Hankel recurrences of a trace sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelReport<R> {
    /// First index required to vanish: p − q + 1.
    pub start: isize,
    /// (index k, determinant at k); the determinant must be zero from `start` on.
    pub verdicts: Vec<(isize, R)>,
    pub all_vanish: bool,
    /// Determinant at k = p − q, where vanishing is *not* required; a nonzero
    /// value shows the recurrence window is sharp. Informative only.
    pub sharpness_value: R,
}

/// Check the vanishing of the (q+1)-sized Hankel minors of the trace sequence
/// of M for every start index from p − q + 1 through k_max.
pub fn hankel_recurrence_check<R: Scalar>(
    m: &SuperMatrix<R>,
    k_max: isize,
) -> Result<HankelReport<R>, SuperError> {
    let (p, q) = (m.dims().p as isize, m.dims().q as isize);
    let start = p - q + 1;
    let size = (q + 1) as usize;
    // highest sequence index touched: k_max + 2q from the main window, and
    // p + q from the sharpness probe at k = p − q
    let top = (k_max + 2 * q).max(p + q).max(1) as usize;
    let c = char_function_series(m, top)?;
    let mut verdicts = Vec::new();
    let mut all_vanish = true;
    for k in start..=k_max {
        let det = hankel_det_padded(&c, k, size);
        if !det.is_zero() {
            all_vanish = false;
        }
        verdicts.push((k, det));
    }
    let sharpness_value = hankel_det_padded(&c, start - 1, size);
    Ok(HankelReport {
        start,
        verdicts,
        all_vanish,
        sharpness_value,
    })
}

/// Ber M as a ratio of Hankel minors of the trace sequence:
/// |c_{p−q} … c_p| of size q+1 over |c_{p−q+2} … c_{p+1}| of size q.
///
/// For q = 0 the denominator is the empty determinant 1 and the numerator is
/// c_p, the ordinary determinant. Negative indices read as zero; the p < q
/// case is computed under that convention but should be treated as
/// experimental. When the block Berezinian is also defined the two values are
/// compared and a disagreement is an error.
pub fn ber_via_hankel<R: Scalar>(m: &SuperMatrix<R>) -> Result<R, SuperError> {
    let (p, q) = (m.dims().p as isize, m.dims().q as isize);
    let order = (p + q + 1).max(1) as usize;
    let c = char_function_series(m, order)?;
    let numerator = hankel_det_padded(&c, p - q, (q + 1) as usize);
    let denominator = hankel_det_padded(&c, p - q + 2, q as usize);
    let den_inv = denominator
        .inverse()
        .ok_or(SuperError::IndeterminateRatio)?;
    let ratio = numerator * den_inv;
    if let Ok(direct) = berezinian_block(m) {
        if ratio != direct {
            return Err(SuperError::PathDisagreement {
                index: 0,
                left: format!("{ratio}"),
                right: format!("{direct}"),
            });
        }
    }
    Ok(ratio)
}

/// Both sides of e^{t·str M} = Ber(e^{tM}) as series in t, compared exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct LiouvilleReport {
    pub left: Series<Rational>,
    pub right: Series<Rational>,
    pub agree: bool,
}

/// Exponential identity for a rational supermatrix: the left side is the
/// scalar exponential of t·str M; the right side exponentiates tM entrywise
/// as a matrix of series in t and takes the block Berezinian, with no appeal
/// to the str∘log route.
pub fn liouville_check(m: &SuperMatrix<Rational>, order: usize) -> Result<LiouvilleReport, SuperError> {
    assert!(order >= 1, "series order must be at least 1");
    let dims = m.dims();
    let n = dims.total();

    let left = Series::from_coeffs(vec![Rational::zero(), supertrace(m)], order)
        .exp()
        .expect("constant term is zero by construction");

    // exp(tM) entry (i,j) has coefficients (Mᵏ)_{ij} / k!
    let mut powers = Vec::with_capacity(order + 1);
    powers.push(Matrix::<Rational>::identity(n));
    for k in 1..=order {
        let next = powers[k - 1].mul_matrix(m.matrix());
        powers.push(next);
    }
    let entries = Matrix::from_fn(n, n, |i, j| {
        let coeffs = (0..=order)
            .map(|k| {
                let inv_fact = Rational::factorial(k)
                    .recip()
                    .expect("factorials are nonzero");
                &powers[k][(i, j)] * &inv_fact
            })
            .collect();
        Series::from_coeffs(coeffs, order)
    });
    let exp_tm = SuperMatrix::from_matrix(dims, entries)
        .expect("exp(tM) inherits the even grading of M");
    let right = berezinian_block(&exp_tm)?;

    let agree = (0..=order).all(|k| left.coefficient(k) == right.coefficient(k));
    Ok(LiouvilleReport { left, right, agree })
}

/// Trace sequence of a diagonal matrix with even eigenvalues λᵢ and odd
/// eigenvalues μⱼ, i.e. the series of Π(1+λᵢz) / Π(1+μⱼz), computed by
/// polynomial multiplication and geometric-series division only — an oracle
/// with no Berezinian code in its path.
pub fn diagonal_oracle(
    lambdas: &[Rational],
    mus: &[Rational],
    order: usize,
) -> TraceSequence<Rational> {
    let mut num = Polynomial::<Rational>::one();
    for l in lambdas {
        num = num * Polynomial::from_coeffs(vec![Rational::one(), l.clone()]);
    }
    let mut coeffs: Vec<Rational> = (0..=order).map(|k| num.coefficient(k)).collect();
    // dividing by (1 + μz): bₖ = aₖ − μ·bₖ₋₁, applied in place left to right
    for mu in mus {
        for k in 1..=order {
            let carry = mu * &coeffs[k - 1];
            coeffs[k] = coeffs[k].clone() - carry;
        }
    }
    TraceSequence::new(coeffs).expect("empty products start at 1")
}

/// The diagonal supermatrix diag(λ₁…λ_p | μ₁…μ_q) over ℚ.
pub fn diagonal_supermatrix(
    lambdas: &[Rational],
    mus: &[Rational],
) -> Result<SuperMatrix<Rational>, SuperError> {
    let dims = SuperDims::new(lambdas.len(), mus.len())?;
    let n = dims.total();
    let mat = Matrix::from_fn(n, n, |i, j| {
        if i != j {
            Rational::zero()
        } else if i < dims.p {
            lambdas[i].clone()
        } else {
            mus[i - dims.p].clone()
        }
    });
    SuperMatrix::from_matrix(dims, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Grassmann;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn qs(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| q(v)).collect()
    }

    fn xi(i: usize) -> Grassmann {
        Grassmann::generator(i, 4).unwrap()
    }

    fn diag23() -> SuperMatrix<Rational> {
        diagonal_supermatrix(&qs(&[2]), &qs(&[3])).unwrap()
    }

    /// A fixed even 2|1 matrix over Grassmann(4) with entries in every block.
    fn even_two_one(seed_sign: i64) -> SuperMatrix<Grassmann> {
        let e12 = xi(1).try_mul(&xi(2)).unwrap();
        let s = Grassmann::constant(q(seed_sign));
        let a00 = Matrix::from_rows(vec![
            vec![Grassmann::one().try_add(&e12).unwrap(), e12.clone()],
            vec![Grassmann::zero(), Grassmann::constant(q(2))],
        ]);
        let a01 = Matrix::from_rows(vec![
            vec![xi(1).try_mul(&s).unwrap()],
            vec![xi(3)],
        ]);
        let a10 = Matrix::from_rows(vec![vec![xi(2), xi(4).try_mul(&s).unwrap()]]);
        let a11 = Matrix::from_rows(vec![vec![
            Grassmann::constant(q(3)).try_add(&e12).unwrap(),
        ]]);
        SuperMatrix::from_blocks(SuperDims::new(2, 1).unwrap(), a00, a01, a10, a11).unwrap()
    }

    #[test]
    fn supertrace_of_diagonal() {
        assert_eq!(supertrace(&diag23()), q(-1));
        let id = SuperMatrix::<Rational>::identity(SuperDims::new(3, 2).unwrap());
        assert_eq!(supertrace(&id), q(1));
    }

    #[test]
    fn supertrace_is_symmetric_under_cyclic_exchange() {
        let m = even_two_one(1);
        let n = even_two_one(-2);
        let mn = supertrace(&m.mul(&n));
        let nm = supertrace(&n.mul(&m));
        assert_eq!(mn, nm);
    }

    #[test]
    fn berezinian_of_diagonal_is_eigenvalue_ratio() {
        assert_eq!(berezinian_block(&diag23()).unwrap(), Rational::new(2, 3));
        let id = SuperMatrix::<Rational>::identity(SuperDims::new(2, 2).unwrap());
        assert_eq!(berezinian_block(&id).unwrap(), Rational::one());
    }

    #[test]
    fn berezinian_one_one_with_odd_corners() {
        // (1 − ξ₁·1·ξ₂)/1 by hand
        let dims = SuperDims::new(1, 1).unwrap();
        let m = SuperMatrix::from_blocks(
            dims,
            Matrix::from_rows(vec![vec![Grassmann::one()]]),
            Matrix::from_rows(vec![vec![xi(1)]]),
            Matrix::from_rows(vec![vec![xi(2)]]),
            Matrix::from_rows(vec![vec![Grassmann::one()]]),
        )
        .unwrap();
        let expected = Grassmann::one()
            .try_add(&-(xi(1).try_mul(&xi(2)).unwrap()))
            .unwrap();
        assert_eq!(berezinian_block(&m).unwrap(), expected);
    }

    #[test]
    fn berezinian_needs_invertible_odd_block() {
        let dims = SuperDims::new(1, 1).unwrap();
        let m = SuperMatrix::from_blocks(
            dims,
            Matrix::from_rows(vec![vec![Grassmann::one()]]),
            Matrix::zeros(1, 1),
            Matrix::zeros(1, 1),
            Matrix::from_rows(vec![vec![xi(1).try_mul(&xi(2)).unwrap()]]),
        )
        .unwrap();
        assert_eq!(
            berezinian_block(&m).unwrap_err(),
            SuperError::OddBlockNotInvertible
        );
    }

    #[test]
    fn rational_matrices_reject_odd_blocks() {
        let dims = SuperDims::new(1, 1).unwrap();
        let err = SuperMatrix::from_blocks(
            dims,
            Matrix::from_rows(vec![vec![q(1)]]),
            Matrix::from_rows(vec![vec![q(5)]]),
            Matrix::zeros(1, 1),
            Matrix::from_rows(vec![vec![q(1)]]),
        )
        .unwrap_err();
        assert_eq!(
            err,
            SuperError::ParityViolation {
                row: 0,
                col: 1,
                expected: Parity::Odd,
                found: Parity::Even,
            }
        );
    }

    #[test]
    fn grassmann_parity_is_checked_per_entry() {
        // an even element in an off-diagonal slot
        let dims = SuperDims::new(1, 1).unwrap();
        let err = SuperMatrix::from_blocks(
            dims,
            Matrix::from_rows(vec![vec![Grassmann::one()]]),
            Matrix::from_rows(vec![vec![xi(1).try_mul(&xi(2)).unwrap()]]),
            Matrix::zeros(1, 1),
            Matrix::from_rows(vec![vec![Grassmann::one()]]),
        )
        .unwrap_err();
        assert!(matches!(err, SuperError::ParityViolation { row: 0, col: 1, .. }));
        // a mixed element on the diagonal
        let err = SuperMatrix::from_blocks(
            dims,
            Matrix::from_rows(vec![vec![Grassmann::one().try_add(&xi(1)).unwrap()]]),
            Matrix::zeros(1, 1),
            Matrix::zeros(1, 1),
            Matrix::from_rows(vec![vec![Grassmann::one()]]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            SuperError::ParityViolation {
                row: 0,
                col: 0,
                found: Parity::Mixed,
                ..
            }
        ));
    }

    #[test]
    fn char_series_of_diag_two_three() {
        // series of (1+2z)/(1+3z): closed form c_k = (λ−μ)(−μ)^{k−1}
        let c = char_function_series(&diag23(), 4).unwrap();
        let mut expected = vec![q(1)];
        for k in 1..=4 {
            expected.push(q(-1) * q(-3).pow(k - 1));
        }
        assert_eq!(c.values(), &expected[..]);
    }

    #[test]
    fn char_series_of_identity_cancels() {
        let id = SuperMatrix::<Rational>::identity(SuperDims::new(1, 1).unwrap());
        let c = char_function_series(&id, 5).unwrap();
        assert_eq!(c.value(0), q(1));
        for k in 1..=5 {
            assert!(c.value(k as isize).is_zero());
        }
    }

    #[test]
    fn char_series_without_odd_part_gives_elementary_symmetric() {
        let m = diagonal_supermatrix(&qs(&[1, 2]), &[]).unwrap();
        let c = char_function_series(&m, 4).unwrap();
        assert_eq!(c.values(), &qs(&[1, 3, 2, 0, 0])[..]);
    }

    #[test]
    fn char_series_dual_paths_cover_grassmann_entries() {
        // nothing to assert beyond success: the function itself compares the
        // str∘log∘exp route with the block-Berezinian route
        let c = char_function_series(&even_two_one(1), 6).unwrap();
        assert_eq!(c.value(0), Grassmann::one());
    }

    #[test]
    fn hankel_recurrence_for_diag_two_three() {
        // |c₁ c₂; c₂ c₃| = (−1)(−9) − 3·3 = 0 and onward
        let report = hankel_recurrence_check(&diag23(), 5).unwrap();
        assert_eq!(report.start, 1);
        assert!(report.all_vanish);
        assert_eq!(report.verdicts.len(), 5);
        // at k = p − q = 0 the minor is |c₀ c₁; c₁ c₂| = 3 − 1 = 2 ≠ 0
        assert_eq!(report.sharpness_value, q(2));
    }

    #[test]
    fn hankel_recurrence_degenerates_to_cayley_hamilton_for_q_zero() {
        let m = diagonal_supermatrix(&qs(&[1, 2, 5]), &[]).unwrap();
        let report = hankel_recurrence_check(&m, 7).unwrap();
        assert_eq!(report.start, 4);
        assert!(report.all_vanish);
        // c₃ = 1·2·5
        assert_eq!(report.sharpness_value, q(10));
    }

    #[test]
    fn hankel_recurrence_on_grassmann_matrix() {
        let report = hankel_recurrence_check(&even_two_one(2), 5).unwrap();
        assert!(report.all_vanish);
    }

    #[test]
    fn hankel_ratio_reproduces_the_berezinian() {
        // numerator |c₀ c₁; c₁ c₂| = 3 − 1 = 2, denominator |c₂| = 3
        assert_eq!(ber_via_hankel(&diag23()).unwrap(), Rational::new(2, 3));
    }

    #[test]
    fn hankel_ratio_q_zero_is_the_determinant() {
        let m = diagonal_supermatrix(&qs(&[1, 2, 5]), &[]).unwrap();
        assert_eq!(ber_via_hankel(&m).unwrap(), q(10));
        assert_eq!(berezinian_block(&m).unwrap(), q(10));
    }

    #[test]
    fn hankel_ratio_with_negative_indices() {
        // p=0, q=2: the numerator minor picks up zero-padded entries
        let m = diagonal_supermatrix(&[], &qs(&[2, 3])).unwrap();
        assert_eq!(ber_via_hankel(&m).unwrap(), Rational::new(1, 6));
    }

    #[test]
    fn hankel_ratio_on_grassmann_matrix() {
        let m = even_two_one(3);
        let ratio = ber_via_hankel(&m).unwrap();
        assert_eq!(ratio, berezinian_block(&m).unwrap());
    }

    #[test]
    fn berezinian_is_multiplicative_spot_check() {
        let m = even_two_one(1);
        let n = even_two_one(-1);
        let lhs = berezinian_block(&m.mul(&n)).unwrap();
        let rhs = berezinian_block(&m)
            .unwrap()
            .try_mul(&berezinian_block(&n).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn liouville_for_diagonal() {
        // both sides are the series of e^{−t}
        let report = liouville_check(&diag23(), 6).unwrap();
        assert!(report.agree);
        for k in 0..=6 {
            let expected = Rational::new(if k % 2 == 0 { 1 } else { -1 }, 1)
                * Rational::factorial(k).recip().unwrap();
            assert_eq!(report.left.coefficient(k), expected);
        }
    }

    #[test]
    fn liouville_for_strictly_upper_triangular() {
        // str M = 0 and exp(tM) is unipotent, so both sides are 1
        let dims = SuperDims::new(2, 1).unwrap();
        let mut mat = Matrix::<Rational>::zeros(3, 3);
        mat[(0, 1)] = q(1);
        let m = SuperMatrix::from_matrix(dims, mat).unwrap();
        let report = liouville_check(&m, 4).unwrap();
        assert!(report.agree);
        assert!(report.right.coefficient(0).is_one());
        for k in 1..=4 {
            assert!(report.right.coefficient(k).is_zero());
        }
    }

    #[test]
    fn diagonal_oracle_matches_frozen_values() {
        assert_eq!(
            diagonal_oracle(&qs(&[2]), &qs(&[3]), 3).values(),
            &qs(&[1, -1, 3, -9])[..]
        );
        assert_eq!(
            diagonal_oracle(&qs(&[1, 2]), &[], 3).values(),
            &qs(&[1, 3, 2, 0])[..]
        );
        assert_eq!(diagonal_oracle(&[], &[], 2).values(), &qs(&[1, 0, 0])[..]);
    }

    #[test]
    fn diagonal_oracle_agrees_with_char_series() {
        let lambdas = qs(&[2, 5]);
        let mus = qs(&[3]);
        let m = diagonal_supermatrix(&lambdas, &mus).unwrap();
        let via_matrix = char_function_series(&m, 6).unwrap();
        let via_oracle = diagonal_oracle(&lambdas, &mus, 6);
        assert_eq!(via_matrix.values(), via_oracle.values());
    }

    #[test]
    fn block_shapes_are_validated() {
        let dims = SuperDims::new(2, 1).unwrap();
        let err = SuperMatrix::from_blocks(
            dims,
            Matrix::<Rational>::identity(2),
            Matrix::zeros(2, 1),
            Matrix::zeros(1, 2),
            Matrix::zeros(2, 2),
        )
        .unwrap_err();
        assert_eq!(
            err,
            SuperError::BlockShape {
                block: "a11",
                rows: 1,
                cols: 1,
                found_rows: 2,
                found_cols: 2,
            }
        );
        assert_eq!(SuperDims::new(0, 0).unwrap_err(), SuperError::EmptyDims);
    }

    #[test]
    fn trace_sequence_enforces_leading_one() {
        assert!(TraceSequence::new(qs(&[1, 7])).is_ok());
        assert!(matches!(
            TraceSequence::new(qs(&[2, 7])),
            Err(SuperError::LeadingTermNotOne(_))
        ));
        let c = TraceSequence::new(qs(&[1, 4, 9])).unwrap();
        assert_eq!(c.value(-3), Rational::zero());
        assert_eq!(c.value(2), q(9));
    }
}
