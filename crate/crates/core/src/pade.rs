//! Padé reconstruction: recover a rational function from a truncated series.
//!
//! Given a series s with s(0) = 1 and target degrees (p, q), we look for a
//! denominator D of degree ≤ q with D(0) = 1 such that D·s is a polynomial N
//! of degree ≤ p modulo z^{p+q+1}. The linear system is solved exactly;
//! underdetermined systems are resolved deterministically by preferring the
//! solution with the most trailing zero coefficients in D (the lowest
//! effective denominator degree), with remaining free variables pinned to
//! zero. The fit records whether the reconstruction stays consistent with
//! every known coefficient of the input, which is what the type-search below
//! keys on.

use thiserror::Error;

use crate::matrix::{solve, Matrix};
use crate::poly::Polynomial;
use crate::ratfunc::{RatFuncError, RationalFunction};
use crate::scalar::Field;
use crate::series::Series;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadeError {
    #[error("series too short: order {order} but (p, q) = ({p}, {q}) needs {needed}")]
    SeriesTooShort {
        order: usize,
        p: usize,
        q: usize,
        needed: usize,
    },
    #[error("series must have constant term one")]
    ConstantTermNotOne,
    #[error("singular linear system: no denominator with constant term one")]
    Singular,
}

/// The result of a (p, q) reconstruction attempt.
#[derive(Clone, Debug)]
pub struct PadeFit<F: Field> {
    pub numerator: Polynomial<F>,
    pub denominator: Polynomial<F>,
    /// True when D·s − N vanishes through the full truncation order of the
    /// input, not only through z^{p+q}.
    pub consistent: bool,
}

impl<F: Field> PadeFit<F> {
    pub fn rational_function(&self) -> Result<RationalFunction<F>, RatFuncError> {
        RationalFunction::new(self.numerator.clone(), self.denominator.clone())
    }
}

/// Exact (p, q) Padé fit of a truncated series with constant term one.
pub fn pade_reconstruct<F: Field>(
    s: &Series<F>,
    p: usize,
    q: usize,
) -> Result<PadeFit<F>, PadeError> {
    if let Some(order) = s.order() {
        if order < p + q {
            return Err(PadeError::SeriesTooShort {
                order,
                p,
                q,
                needed: p + q,
            });
        }
    }
    if !s.coefficient(0).is_one() {
        return Err(PadeError::ConstantTermNotOne);
    }
    let coeff = |k: isize| -> F {
        if k < 0 {
            F::zero()
        } else {
            s.coefficient(k as usize)
        }
    };
    // Try effective denominator degrees q' = 0, 1, …, q; all q defect rows
    // must hold in every case, so the first solvable q' is the fit with
    // maximal trailing zeros in D.
    let mut denominator: Option<Vec<F>> = None;
    for q_eff in 0..=q {
        let a = Matrix::from_fn(q, q_eff, |r, i| {
            // row r: coefficient of z^{p+1+r} in D·s
            coeff((p + 1 + r) as isize - (i + 1) as isize)
        });
        let b: Vec<F> = (0..q).map(|r| -coeff((p + 1 + r) as isize)).collect();
        if let Some(x) = solve(&a, &b) {
            let mut d = vec![F::one()];
            d.extend(x);
            denominator = Some(d);
            break;
        }
    }
    let d_coeffs = denominator.ok_or(PadeError::Singular)?;
    let denominator = Polynomial::from_coeffs(d_coeffs.clone());
    // N = the low part of D·s; consistency checks the rest of the window.
    let d_series = Series::exact(d_coeffs);
    let product = d_series * s.clone();
    let numerator =
        Polynomial::from_coeffs((0..=p).map(|k| product.coefficient(k)).collect());
    // For a truncated input the window ends at its order; an exact input is a
    // polynomial, so every stored coefficient of the (exact) product counts.
    let window_end = match s.order() {
        Some(order) => order,
        None => product.coefficients().len().saturating_sub(1),
    };
    let mut consistent = true;
    for k in p + 1..=window_end {
        if !product.coefficient(k).is_zero() {
            consistent = false;
            break;
        }
    }
    Ok(PadeFit {
        numerator,
        denominator,
        consistent,
    })
}

/// The smallest (q, then p) rational type consistent with the series through
/// its truncation order. Absence is a value: `None` means no type within the
/// bounds fits. The order must be at least p_max + 2·q_max + 1, enough to see
/// a denominator of maximal degree act beyond the fit window.
pub fn minimal_rational_type<F: Field>(
    s: &Series<F>,
    p_max: usize,
    q_max: usize,
) -> Option<(usize, usize)> {
    let order = s.order().expect("type search needs a truncated series");
    assert!(
        order >= p_max + 2 * q_max + 1,
        "series order {order} too small for type search up to ({p_max}, {q_max})"
    );
    for q in 0..=q_max {
        for p in 0..=p_max {
            match pade_reconstruct(s, p, q) {
                Ok(fit) if fit.consistent => return Some((p, q)),
                Ok(_) | Err(PadeError::Singular) => continue,
                Err(_) => return None,
            }
        }
    }
    None
}
