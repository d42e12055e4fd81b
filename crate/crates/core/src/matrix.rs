//! Dense matrices over an exact scalar ring, with exact determinants.
//!
//! Two determinant routes live here. Over integral domains that support exact
//! division (the rationals, in practice) `det` runs fraction-free Bareiss
//! elimination. Over rings with zero divisors — Grassmann algebras, truncated
//! series — it falls back to a division-free subset expansion. Both are exact;
//! the test suite pins them against an independent cofactor oracle.
//!
//! Exact row reduction (echelon form, solving, kernels) is restricted to
//! [`Field`] scalars, where every nonzero pivot is invertible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("sequence too short: need index {needed}, length {len}")]
    SequenceTooShort { needed: usize, len: usize },
}

/// A dense rows×cols matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Scalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Matrix<R> {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix<R> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Matrix<R> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Matrix<R> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S: Scalar>(&self, mut f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &R) -> Matrix<R> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn trace(&self) -> R {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = R::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    pub fn mul_matrix(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimensions differ in matrix product"
        );
        let mut out: Matrix<R> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + term;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Matrix<R> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul_matrix(self);
        }
        acc
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant. Dispatches to fraction-free elimination when the
    /// scalar ring allows it and to a division-free expansion otherwise.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if R::FRACTION_FREE {
            self.det_bareiss()
        } else {
            self.det_expansion()
        }
    }

    /// Fraction-free Bareiss elimination. Requires an integral domain whose
    /// `exact_div` is total on the exact quotients the algorithm produces.
    pub fn det_bareiss(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                // find a pivot row below; if none, a column is dependent
                match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            let tmp = m[(k, j)].clone();
                            m[(k, j)] = m[(r, j)].clone();
                            m[(r, j)] = tmp;
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return R::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = num
                        .exact_div(&prev)
                        .expect("Bareiss division must be exact over an integral domain");
                }
                m[(i, k)] = R::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }

    /// Division-free determinant by dynamic programming over column subsets
    /// (expansion along successive rows). Exponential in the size, which is
    /// fine at desk scale, and valid over any commutative scalar ring.
    pub fn det_expansion(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        assert!(n <= 20, "expansion determinant limited to 20x20");
        // minor[mask] = det of the submatrix on rows 0..popcount(mask) and
        // column set mask
        let mut minor: Vec<Option<R>> = vec![None; 1 << n];
        minor[0] = Some(R::one());
        for mask in 1usize..1 << n {
            let row = mask.count_ones() as usize - 1;
            let mut acc = R::zero();
            let mut pos = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let sub = minor[mask & !(1 << j)]
                    .clone()
                    .expect("subset minors are filled in mask order");
                if !self[(row, j)].is_zero() && !sub.is_zero() {
                    let term = self[(row, j)].clone() * sub;
                    if (row + pos) % 2 == 0 {
                        acc = acc + term;
                    } else {
                        acc = acc - term;
                    }
                }
                pos += 1;
            }
            minor[mask] = Some(acc);
        }
        minor[(1 << n) - 1].clone().unwrap()
    }

    /// Inverse through the adjugate, valid over any commutative scalar ring
    /// whose determinant is invertible. Intended for the small blocks that
    /// arise in Schur complements.
    pub fn inverse_adjugate(&self) -> Option<Matrix<R>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let det = self.det();
        let det_inv = det.inverse()?;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let adj = Matrix::from_fn(n, n, |i, j| {
            // cofactor C_ji for the adjugate
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self[(rr, cc)].clone()
            });
            let m = minor.det();
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        });
        Some(adj.scale(&det_inv))
    }
}

impl<R> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Scalar> Add for Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .into_iter()
                .zip(rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<R: Scalar> Sub for Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .into_iter()
                .zip(rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<R: Scalar> Neg for Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<R: Scalar> Mul for Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: Matrix<R>) -> Matrix<R> {
        self.mul_matrix(&rhs)
    }
}

impl<R: Scalar> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The size×size Hankel matrix with entries `c[k+i+j]`.
pub fn hankel_matrix<R: Scalar>(
    c: &[R],
    k: usize,
    size: usize,
) -> Result<Matrix<R>, MatrixError> {
    let needed = k + 2 * (size.saturating_sub(1));
    if size > 0 && needed >= c.len() {
        return Err(MatrixError::SequenceTooShort {
            needed,
            len: c.len(),
        });
    }
    Ok(Matrix::from_fn(size, size, |i, j| c[k + i + j].clone()))
}

/// Exact Hankel determinant `|c_k … c_{k+2(size−1)}|` of the given size.
pub fn hankel_det<R: Scalar>(c: &[R], k: usize, size: usize) -> Result<R, MatrixError> {
    Ok(hankel_matrix(c, k, size)?.det())
}

/// Reduced row echelon form with the pivot columns, over a field.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut m = m.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = match (r..rows).find(|&i| !m[(i, c)].is_zero()) {
            Some(i) => i,
            None => continue,
        };
        if pivot_row != r {
            for j in 0..cols {
                let tmp = m[(r, j)].clone();
                m[(r, j)] = m[(pivot_row, j)].clone();
                m[(pivot_row, j)] = tmp;
            }
        }
        let inv = m[(r, c)]
            .inverse()
            .expect("nonzero field element has an inverse");
        for j in c..cols {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let factor = m[(i, c)].clone();
                for j in c..cols {
                    let t = m[(r, j)].clone() * factor.clone();
                    m[(i, j)] = m[(i, j)].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// One exact solution of `a · x = b`, if the system is consistent. Free
/// variables are set to zero, which makes the answer deterministic.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let mut aug = Matrix::from_fn(a.rows(), a.cols() + 1, |i, j| {
        if j < a.cols() {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (red, pivots) = rref(&aug);
    aug = red;
    // a pivot in the augmented column means the system is inconsistent
    if pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![F::zero(); a.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[(row, a.cols())].clone();
    }
    Some(x)
}

/// A basis of the exact kernel of `a`, one vector per free column.
pub fn kernel_basis<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let (red, pivots) = rref(a);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[(row, fc)].clone();
            }
            v
        })
        .collect()
}
