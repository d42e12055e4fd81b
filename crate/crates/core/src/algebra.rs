//! Finite-dimensional commutative algebras with exact rational structure.
//!
//! The hierarchy starts from two sources: explicit multiplication tables,
//! validated on construction, and function algebras C(X) on a finite labelled
//! space, whose basis of delta functions multiplies pointwise. Tensor powers
//! A^{⊗n} are represented lazily (their structure constants are expanded from
//! the base algebra on demand), symmetric powers Sⁿ A live inside them on the
//! symmetrized multiset basis, and the p|q-symmetric subalgebra
//! S^{p|q} A ⊂ S^p A ⊗ S^q A is cut out by the condition that contracting the
//! last slot of each factor lands in (everything) ⊗ 𝟙.
//!
//! Multiplication kernels are generic over the coordinate ring, so the same
//! code multiplies honest rational elements and elements with polynomial
//! coordinates (used for symbolic identity checking elsewhere in the crate).

use std::fmt;

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{kernel_basis, rref, solve, Matrix};
use crate::rational::Rational;
use crate::scalar::{Field, Scalar};

/// Hard ceiling on the dimension of any tensor power we are willing to hold.
pub const MAX_TENSOR_DIMENSION: usize = 4096;

/// Ceiling on the ambient dimension dim(A)^(p+q) of a p|q-symmetric power;
/// the kernel computation is dense, so it gets a tighter budget.
pub const MAX_PQ_DIMENSION: usize = 1024;

/// Ceiling on the number of homomorphisms an enumeration may produce.
pub const MAX_ENUMERATED_MAPS: usize = 10_000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("a finite space needs at least one point")]
    EmptySpace,
    #[error("duplicate point label `{label}`")]
    DuplicatePoint { label: String },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constants are not commutative at basis pair ({i}, {j})")]
    NotCommutative { i: usize, j: usize },
    #[error("structure constants are not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("the declared unit does not act as identity on basis element {basis}")]
    UnitNotNeutral { basis: usize },
    #[error("construction needs dimension {needed}, over the cap of {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("homomorphism enumeration needs both algebras in function form")]
    FunctionFormRequired,
    #[error("basis product ({i}, {j}) leaves the subspace")]
    ClosureFailed { i: usize, j: usize },
    #[error("a p|q power needs p ≥ 1 and q ≥ 1, got ({p}, {q})")]
    InvalidPqPower { p: usize, q: usize },
    #[error("the spanning vectors are linearly dependent")]
    DependentSpan,
}

// ---------------------------------------------------------------------------
// Finite spaces and configurations
// ---------------------------------------------------------------------------

/// A finite set of distinct point labels, the X in C(X).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    points: Vec<String>,
}

impl FiniteSpace {
    pub fn new(points: Vec<String>) -> Result<FiniteSpace, AlgebraError> {
        if points.is_empty() {
            return Err(AlgebraError::EmptySpace);
        }
        let mut seen = points.clone();
        seen.sort();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(AlgebraError::DuplicatePoint { label: w[0].clone() });
            }
        }
        Ok(FiniteSpace { points })
    }

    /// Convenience constructor with labels "x1", "x2", ….
    pub fn numbered(n: usize) -> Result<FiniteSpace, AlgebraError> {
        FiniteSpace::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }
}

impl<'de> Deserialize<'de> for FiniteSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<FiniteSpace, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        FiniteSpace::new(raw.points).map_err(serde::de::Error::custom)
    }
}

/// A point configuration with integer multiplicities: the data behind a
/// functional Σ n_α · ev_{x_α}. Negative multiplicities are allowed; they are
/// what makes a functional genuinely of type p|q rather than an n-homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    space: FiniteSpace,
    multiplicities: Vec<i64>,
}

impl Configuration {
    pub fn new(space: FiniteSpace, multiplicities: Vec<i64>) -> Result<Configuration, AlgebraError> {
        if multiplicities.len() != space.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: space.len(),
                found: multiplicities.len(),
            });
        }
        Ok(Configuration { space, multiplicities })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    /// Total weight χ = Σ n_α = value of the functional on the unit.
    pub fn chi(&self) -> i64 {
        self.multiplicities.iter().sum()
    }

    /// (p, q) with p the weight of positive points and q minus the weight of
    /// negative points, so χ = p − q.
    pub fn rational_type(&self) -> (usize, usize) {
        let p: i64 = self.multiplicities.iter().filter(|&&n| n > 0).sum();
        let q: i64 = self.multiplicities.iter().filter(|&&n| n < 0).sum();
        (p as usize, (-q) as usize)
    }

    /// The functional Σ n_α · ev_{x_α} on C(X), as a 1 × |X| map.
    pub fn functional(&self) -> LinearMap {
        LinearMap::functional(
            self.multiplicities
                .iter()
                .map(|&n| Rational::from_integer(n))
                .collect(),
        )
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Configuration, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            space: FiniteSpace,
            multiplicities: Vec<i64>,
        }
        let raw = Raw::deserialize(d)?;
        Configuration::new(raw.space, raw.multiplicities).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Commutative algebras
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    /// Explicit structure constants, flattened as c[(i·dim + j)·dim + k].
    Table { constants: Vec<Rational> },
    /// A^{⊗copies}; products are expanded from the base algebra on demand
    /// because a dense table would be dim^(3·copies) entries.
    TensorPower { base: Box<CommutativeAlgebra>, copies: usize },
}

/// A finite-dimensional commutative associative unital algebra over ℚ,
/// presented on a fixed basis e_0, …, e_{dim−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutativeAlgebra {
    dim: usize,
    unit: Vec<Rational>,
    /// True when e_i e_j = δ_ij e_i and the unit is the all-ones vector: the
    /// basis is then a complete family of orthogonal idempotents, as for the
    /// delta functions of C(X).
    function_form: bool,
    labels: Option<Vec<String>>,
    kind: Kind,
}

fn is_delta_table(dim: usize, unit: &[Rational], constants: &[Rational]) -> bool {
    if unit.iter().any(|u| !u.is_one()) {
        return false;
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let c = &constants[(i * dim + j) * dim + k];
                let expected_one = i == j && j == k;
                if expected_one && !c.is_one() {
                    return false;
                }
                if !expected_one && !c.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

impl CommutativeAlgebra {
    /// Build an algebra from an explicit multiplication table
    /// `constants[i][j] = coordinates of e_i · e_j`, checking commutativity,
    /// the unit law, and associativity on every basis triple.
    pub fn from_table(
        unit: Vec<Rational>,
        constants: Vec<Vec<Vec<Rational>>>,
    ) -> Result<CommutativeAlgebra, AlgebraError> {
        let dim = unit.len();
        if dim == 0 {
            return Err(AlgebraError::DimensionMismatch { expected: 1, found: 0 });
        }
        if constants.len() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: constants.len() });
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in &constants {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch { expected: dim, found: row.len() });
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(AlgebraError::DimensionMismatch { expected: dim, found: entry.len() });
                }
                flat.extend(entry.iter().cloned());
            }
        }
        let algebra = CommutativeAlgebra::table_with_cheap_checks(unit, flat, None)?;
        algebra.check_associativity()?;
        Ok(algebra)
    }

    /// Shape, commutativity, and unit checks; associativity is the caller's
    /// concern (subalgebras of a validated algebra inherit it for free, and
    /// re-checking it costs dim⁵).
    fn table_with_cheap_checks(
        unit: Vec<Rational>,
        constants: Vec<Rational>,
        labels: Option<Vec<String>>,
    ) -> Result<CommutativeAlgebra, AlgebraError> {
        let dim = unit.len();
        assert_eq!(constants.len(), dim * dim * dim, "flattened table has dim³ entries");
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    if constants[(i * dim + j) * dim + k] != constants[(j * dim + i) * dim + k] {
                        return Err(AlgebraError::NotCommutative { i, j });
                    }
                }
            }
        }
        for j in 0..dim {
            // 1 · e_j = Σ_i unit_i (e_i e_j) must give back e_j.
            for k in 0..dim {
                let mut acc = Rational::from_integer(0);
                for (i, u) in unit.iter().enumerate() {
                    if !u.is_zero() {
                        acc += u * &constants[(i * dim + j) * dim + k];
                    }
                }
                let expected = if k == j { Rational::from_integer(1) } else { Rational::from_integer(0) };
                if acc != expected {
                    return Err(AlgebraError::UnitNotNeutral { basis: j });
                }
            }
        }
        let function_form = is_delta_table(dim, &unit, &constants);
        Ok(CommutativeAlgebra {
            dim,
            unit,
            function_form,
            labels,
            kind: Kind::Table { constants },
        })
    }

    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let dim = self.dim;
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.mul_basis(i, j);
                for k in 0..dim {
                    let jk = self.mul_basis(j, k);
                    let mut lhs = vec![Rational::from_integer(0); dim];
                    for (t, c) in ij.iter().enumerate() {
                        if !c.is_zero() {
                            for (x, d) in self.mul_basis(t, k).iter().enumerate() {
                                lhs[x] += c * d;
                            }
                        }
                    }
                    let mut rhs = vec![Rational::from_integer(0); dim];
                    for (t, c) in jk.iter().enumerate() {
                        if !c.is_zero() {
                            for (x, d) in self.mul_basis(i, t).iter().enumerate() {
                                rhs[x] += c * d;
                            }
                        }
                    }
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// C(X): delta-function basis, pointwise products, all-ones unit.
    pub fn function_algebra(space: &FiniteSpace) -> CommutativeAlgebra {
        let dim = space.len();
        let mut constants = vec![Rational::from_integer(0); dim * dim * dim];
        for i in 0..dim {
            constants[(i * dim + i) * dim + i] = Rational::from_integer(1);
        }
        CommutativeAlgebra {
            dim,
            unit: vec![Rational::from_integer(1); dim],
            function_form: true,
            labels: Some(space.points().to_vec()),
            kind: Kind::Table { constants },
        }
    }

    /// The ground field ℚ viewed as an algebra: one basis vector, which is
    /// the unit. Used as the target of functionals-as-homomorphisms.
    pub fn ground() -> CommutativeAlgebra {
        CommutativeAlgebra {
            dim: 1,
            unit: vec![Rational::from_integer(1)],
            function_form: true,
            labels: None,
            kind: Kind::Table { constants: vec![Rational::from_integer(1)] },
        }
    }

    /// A^{⊗copies}, basis indexed by digit strings in base dim(A), most
    /// significant digit = slot 0.
    pub fn tensor_power(
        base: &CommutativeAlgebra,
        copies: usize,
    ) -> Result<CommutativeAlgebra, AlgebraError> {
        let mut needed: u128 = 1;
        for _ in 0..copies {
            needed *= base.dim as u128;
            if needed > MAX_TENSOR_DIMENSION as u128 {
                return Err(AlgebraError::CapExceeded {
                    needed: needed.min(usize::MAX as u128) as usize,
                    cap: MAX_TENSOR_DIMENSION,
                });
            }
        }
        let mut unit = vec![Rational::from_integer(1)];
        for _ in 0..copies {
            unit = kronecker(&unit, &base.unit);
        }
        Ok(CommutativeAlgebra {
            dim: needed as usize,
            unit,
            function_form: base.function_form,
            labels: None,
            kind: Kind::TensorPower { base: Box::new(base.clone()), copies },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_coords(&self) -> &[Rational] {
        &self.unit
    }

    pub fn unit_element(&self) -> Element {
        Element::new(self.unit.clone())
    }

    pub fn is_function_form(&self) -> bool {
        self.function_form
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The labelled space behind a function algebra, when one was recorded.
    pub fn space(&self) -> Option<FiniteSpace> {
        self.labels
            .as_ref()
            .map(|l| FiniteSpace::new(l.clone()).expect("stored labels stay valid"))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        assert!(i < self.dim, "basis index {i} out of range for dimension {}", self.dim);
        let mut coords = vec![Rational::from_integer(0); self.dim];
        coords[i] = Rational::from_integer(1);
        Element::new(coords)
    }

    /// Coordinates of e_i · e_j.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        assert!(i < self.dim && j < self.dim, "basis index out of range");
        if self.function_form {
            let mut out = vec![Rational::from_integer(0); self.dim];
            if i == j {
                out[i] = Rational::from_integer(1);
            }
            return out;
        }
        match &self.kind {
            Kind::Table { constants } => {
                constants[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim].to_vec()
            }
            Kind::TensorPower { base, copies } => {
                let m = base.dim;
                let a = tensor_digits(i, m, *copies);
                let b = tensor_digits(j, m, *copies);
                let mut acc = vec![Rational::from_integer(1)];
                for slot in 0..*copies {
                    let factor = base.mul_basis(a[slot], b[slot]);
                    let mut next = vec![Rational::from_integer(0); acc.len() * m];
                    for (prefix, pc) in acc.iter().enumerate() {
                        if pc.is_zero() {
                            continue;
                        }
                        for (digit, fc) in factor.iter().enumerate() {
                            if !fc.is_zero() {
                                next[prefix * m + digit] = pc * fc;
                            }
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }

    /// Product of coordinate vectors over any scalar ring; the structure
    /// constants embed through `from_rational`.
    pub fn mul_in<R: Scalar>(&self, x: &[R], y: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.dim, "left factor has wrong dimension");
        assert_eq!(y.len(), self.dim, "right factor has wrong dimension");
        if self.function_form {
            return x.iter().zip(y).map(|(a, b)| a.clone() * b.clone()).collect();
        }
        let mut out = vec![R::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi.clone() * yj.clone();
                for (k, c) in self.mul_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + coeff.clone() * R::from_rational(c);
                    }
                }
            }
        }
        out
    }

    /// The unit's coordinates embedded into another scalar ring.
    pub fn unit_in<R: Scalar>(&self) -> Vec<R> {
        self.unit.iter().map(R::from_rational).collect()
    }

    /// x^k by repeated multiplication; x⁰ is the unit.
    pub fn power_in<R: Scalar>(&self, x: &[R], k: usize) -> Vec<R> {
        if k == 0 {
            return self.unit_in();
        }
        let mut acc = x.to_vec();
        for _ in 1..k {
            acc = self.mul_in(&acc, x);
        }
        acc
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        Element::new(self.mul_in(x.coords(), y.coords()))
    }

    pub fn power(&self, x: &Element, k: usize) -> Element {
        Element::new(self.power_in(x.coords(), k))
    }

    /// Matrix of multiplication by x, columns x · e_j.
    pub fn multiplication_operator(&self, x: &[Rational]) -> Matrix<Rational> {
        assert_eq!(x.len(), self.dim);
        let mut columns = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut e = vec![Rational::from_integer(0); self.dim];
            e[j] = Rational::from_integer(1);
            columns.push(self.mul_in(x, &e));
        }
        Matrix::from_fn(self.dim, self.dim, |r, c| columns[c][r].clone())
    }

    /// Multiplicative inverse of x, if x is a unit of the algebra: solves
    /// x · y = 1 as a linear system.
    pub fn element_inverse(&self, x: &Element) -> Option<Element> {
        let op = self.multiplication_operator(x.coords());
        solve(&op, &self.unit).map(Element::new)
    }
}

pub(crate) fn kronecker(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

/// Digits of `index` in base `m`, most significant first, `n` digits.
pub(crate) fn tensor_digits(index: usize, m: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    let mut rest = index;
    for slot in (0..n).rev() {
        digits[slot] = rest % m;
        rest /= m;
    }
    debug_assert_eq!(rest, 0, "index {index} out of range for {m}^{n}");
    digits
}

/// The index whose digit string (most significant first) is `digits`.
pub(crate) fn tensor_index(digits: &[usize], m: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * m + d)
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// A coordinate vector in a fixed algebra basis. Linear structure lives here;
/// products go through the algebra, which owns the structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    coords: Vec<Rational>,
}

impl Element {
    pub fn new(coords: Vec<Rational>) -> Element {
        Element { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Element {
        Element::new(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero(dim: usize) -> Element {
        Element::new(vec![Rational::from_integer(0); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Element {
        Element::new(self.coords.iter().map(|c| c * s).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<usize> for Element {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl std::ops::Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "mismatched element dimensions");
        Element::new(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl std::ops::Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "mismatched element dimensions");
        Element::new(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl std::ops::Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(self.coords.into_iter().map(|c| -c).collect())
    }
}

// ---------------------------------------------------------------------------
// Linear maps
// ---------------------------------------------------------------------------

/// A ℚ-linear map between coordinate spaces, stored as a target × source
/// matrix. Functionals are the 1-row case.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    matrix: Matrix<Rational>,
}

/// Why a linear map fails to be an algebra homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum HomomorphismFailure {
    UnitMismatch,
    ProductMismatch { i: usize, j: usize },
}

impl LinearMap {
    pub fn new(matrix: Matrix<Rational>) -> LinearMap {
        LinearMap { matrix }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> LinearMap {
        LinearMap { matrix: Matrix::from_rows(rows) }
    }

    /// A functional, i.e. a map to the 1-dimensional ground algebra.
    pub fn functional(row: Vec<Rational>) -> LinearMap {
        LinearMap::from_rows(vec![row])
    }

    /// The evaluation functional at one basis index: δ_point as a row.
    pub fn evaluation(dim: usize, point: usize) -> LinearMap {
        assert!(point < dim, "evaluation point {point} out of range for dimension {dim}");
        let mut row = vec![Rational::from_integer(0); dim];
        row[point] = Rational::from_integer(1);
        LinearMap::functional(row)
    }

    pub fn identity(dim: usize) -> LinearMap {
        LinearMap { matrix: Matrix::identity(dim) }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.apply(x)
    }

    pub fn apply_element(&self, x: &Element) -> Element {
        Element::new(self.apply(x.coords()))
    }

    /// Apply with coordinates in any scalar ring; matrix entries embed
    /// through `from_rational`.
    pub fn apply_in<R: Scalar>(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.source_dim(), "argument has wrong dimension");
        (0..self.target_dim())
            .map(|i| {
                let mut acc = R::zero();
                for (j, xj) in x.iter().enumerate() {
                    let entry = &self.matrix[(i, j)];
                    if !entry.is_zero() && !xj.is_zero() {
                        acc = acc + R::from_rational(entry) * xj.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// The single output of a functional.
    pub fn functional_value(&self, x: &[Rational]) -> Rational {
        assert_eq!(self.target_dim(), 1, "functional_value needs a 1-row map");
        self.apply(x).pop().expect("one output")
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(inner.target_dim(), self.source_dim(), "composition dimensions disagree");
        LinearMap { matrix: self.matrix.mul_matrix(&inner.matrix) }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        LinearMap { matrix: self.matrix.clone() + other.matrix.clone() }
    }

    pub fn scale(&self, s: &Rational) -> LinearMap {
        LinearMap { matrix: self.matrix.scale(s) }
    }

    /// First algebra-homomorphism axiom this map violates, or None if it is
    /// one: the unit must go to the unit and products of basis elements must
    /// map to products of images.
    pub fn homomorphism_failure(
        &self,
        source: &CommutativeAlgebra,
        target: &CommutativeAlgebra,
    ) -> Option<HomomorphismFailure> {
        assert_eq!(self.source_dim(), source.dim(), "map does not start on the source algebra");
        assert_eq!(self.target_dim(), target.dim(), "map does not land in the target algebra");
        if self.apply(source.unit_coords()) != target.unit_coords() {
            return Some(HomomorphismFailure::UnitMismatch);
        }
        let images: Vec<Vec<Rational>> = (0..source.dim())
            .map(|i| self.apply(source.basis_element(i).coords()))
            .collect();
        for i in 0..source.dim() {
            for j in i..source.dim() {
                let lhs = self.apply(&source.mul_basis(i, j));
                let rhs = target.mul_in(&images[i], &images[j]);
                if lhs != rhs {
                    return Some(HomomorphismFailure::ProductMismatch { i, j });
                }
            }
        }
        None
    }

    pub fn is_homomorphism(
        &self,
        source: &CommutativeAlgebra,
        target: &CommutativeAlgebra,
    ) -> bool {
        self.homomorphism_failure(source, target).is_none()
    }
}

/// All unital algebra homomorphisms between two function-form algebras.
///
/// On a complete family of orthogonal idempotents a homomorphism must send
/// each basis idempotent to a 0/1 vector, and the unit condition makes those
/// supports a partition: homomorphisms C(X) → C(Y) are exactly pullbacks
/// along maps Y → X. The enumeration walks those maps in lexicographic order.
pub fn enumerate_homomorphisms(
    source: &CommutativeAlgebra,
    target: &CommutativeAlgebra,
) -> Result<Vec<LinearMap>, AlgebraError> {
    if !source.is_function_form() || !target.is_function_form() {
        return Err(AlgebraError::FunctionFormRequired);
    }
    let mut count: u128 = 1;
    for _ in 0..target.dim() {
        count *= source.dim() as u128;
        if count > MAX_ENUMERATED_MAPS as u128 {
            return Err(AlgebraError::CapExceeded {
                needed: count.min(usize::MAX as u128) as usize,
                cap: MAX_ENUMERATED_MAPS,
            });
        }
    }
    let mut maps = Vec::with_capacity(count as usize);
    let mut assignment = vec![0usize; target.dim()];
    loop {
        let rows: Vec<Vec<Rational>> = assignment
            .iter()
            .map(|&x| {
                let mut row = vec![Rational::from_integer(0); source.dim()];
                row[x] = Rational::from_integer(1);
                row
            })
            .collect();
        maps.push(LinearMap::from_rows(rows));
        // odometer over assignments, most significant digit first
        let mut slot = target.dim();
        loop {
            if slot == 0 {
                return Ok(maps);
            }
            slot -= 1;
            assignment[slot] += 1;
            if assignment[slot] < source.dim() {
                break;
            }
            assignment[slot] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Span solving
// ---------------------------------------------------------------------------

/// Repeated exact membership/coordinate queries against a fixed independent
/// spanning set. Construction picks a set of pivot rows whose square
/// submatrix is invertible; a query solves on the pivot rows and then
/// verifies the full vector, so vectors outside the span are detected.
#[derive(Clone, Debug)]
pub struct SpanSolver<F: Field> {
    rows: usize,
    columns: Vec<Vec<(usize, F)>>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Matrix<F>,
}

impl<F: Field> SpanSolver<F> {
    /// `columns` are sparse (row, value) lists, all indices < `rows`.
    pub fn new(rows: usize, columns: Vec<Vec<(usize, F)>>) -> Result<SpanSolver<F>, AlgebraError> {
        let k = columns.len();
        let mut transpose = Matrix::zeros(k, rows);
        for (j, col) in columns.iter().enumerate() {
            for (r, v) in col {
                assert!(*r < rows, "sparse entry out of range");
                transpose[(j, *r)] = v.clone();
            }
        }
        let (_, pivot_rows) = rref(&transpose);
        if pivot_rows.len() < k {
            return Err(AlgebraError::DependentSpan);
        }
        let pivot_inverse = if k == 0 {
            Matrix::zeros(0, 0)
        } else {
            let mut aug = Matrix::zeros(k, 2 * k);
            for r in 0..k {
                for c in 0..k {
                    aug[(r, c)] = transpose[(c, pivot_rows[r])].clone();
                }
                aug[(r, k + r)] = F::one();
            }
            let (red, piv) = rref(&aug);
            debug_assert!(piv.iter().take(k).copied().eq(0..k), "pivot block is invertible");
            Matrix::from_fn(k, k, |r, c| red[(r, k + c)].clone())
        };
        Ok(SpanSolver { rows, columns, pivot_rows, pivot_inverse })
    }

    pub fn from_dense(vectors: &[Vec<F>]) -> Result<SpanSolver<F>, AlgebraError> {
        let rows = vectors.first().map_or(0, |v| v.len());
        let columns = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), rows, "spanning vectors have equal length");
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(r, x)| (r, x.clone()))
                    .collect()
            })
            .collect();
        SpanSolver::new(rows, columns)
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Coordinates of `v` in the spanning set, or None if `v` is outside it.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.rows, "query vector has wrong length");
        let rhs: Vec<F> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        let coords = self.pivot_inverse.apply(&rhs);
        let mut reconstructed = vec![F::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if coords[j].is_zero() {
                continue;
            }
            for (r, val) in col {
                reconstructed[*r] = reconstructed[*r].clone() + coords[j].clone() * val.clone();
            }
        }
        if reconstructed.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }
}

// ---------------------------------------------------------------------------
// Multisets
// ---------------------------------------------------------------------------

/// All nondecreasing sequences of the given size over {0, …, values−1}, in
/// lexicographic order. These index the basis of a symmetric power.
pub fn multisets(values: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn extend(values: usize, size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..values {
            current.push(v);
            extend(values, size, v, current, out);
            current.pop();
        }
    }
    extend(values, size, 0, &mut current, &mut out);
    out
}

/// Every distinct rearrangement of a sorted multiset, lexicographically.
fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut values: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for &v in sorted {
        if values.last() == Some(&v) {
            *counts.last_mut().expect("parallel to values") += 1;
        } else {
            values.push(v);
            counts.push(1);
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sorted.len());
    fn extend(
        values: &[usize],
        counts: &mut [usize],
        remaining: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in 0..values.len() {
            if counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            current.push(values[i]);
            extend(values, counts, remaining - 1, current, out);
            current.pop();
            counts[i] += 1;
        }
    }
    extend(&values, &mut counts, sorted.len(), &mut current, &mut out);
    out
}

/// Π (multiplicity of each value)! for a sorted multiset: the number of
/// rearrangements fixing it, and the symmetry factor that relates the
/// symmetrized basis to plain tensor powers.
pub fn multiset_repetition_factorial(sorted: &[usize]) -> Rational {
    let mut product = Rational::from_integer(1);
    let mut run = 0usize;
    for (i, &v) in sorted.iter().enumerate() {
        run += 1;
        if i + 1 == sorted.len() || sorted[i + 1] != v {
            product = product * Rational::factorial(run);
            run = 0;
        }
    }
    product
}

// ---------------------------------------------------------------------------
// Symmetric powers
// ---------------------------------------------------------------------------

/// Sⁿ A inside A^{⊗n}: basis vector b_M = Σ_{distinct rearrangements σ of M}
/// e_{σ} for each multiset M (no 1/n! — coefficients stay integral).
#[derive(Clone, Debug)]
pub struct SymmetricPower {
    algebra: CommutativeAlgebra,
    tensor_algebra: CommutativeAlgebra,
    base_dim: usize,
    copies: usize,
    basis: Vec<Vec<usize>>,
    vectors: Vec<Vec<(usize, Rational)>>,
    solver: SpanSolver<Rational>,
}

impl SymmetricPower {
    /// The induced commutative algebra on the multiset basis.
    pub fn algebra(&self) -> &CommutativeAlgebra {
        &self.algebra
    }

    pub fn tensor_algebra(&self) -> &CommutativeAlgebra {
        &self.tensor_algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn basis_multisets(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn multiset_index(&self, sorted: &[usize]) -> Option<usize> {
        self.basis.binary_search_by(|m| m.as_slice().cmp(sorted)).ok()
    }

    /// b_M expanded in tensor coordinates.
    pub fn tensor_vector(&self, i: usize) -> Vec<Rational> {
        let mut out = vec![Rational::from_integer(0); self.tensor_algebra.dim()];
        for (r, v) in &self.vectors[i] {
            out[*r] = v.clone();
        }
        out
    }

    /// Π m_v! over the multiplicities of basis multiset i.
    pub fn repetition_factorial(&self, i: usize) -> Rational {
        multiset_repetition_factorial(&self.basis[i])
    }

    /// Tensor coordinates of an element given in the multiset basis.
    pub fn tensor_coordinates(&self, sym_coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(sym_coords.len(), self.dim(), "coordinate vector has wrong length");
        let mut out = vec![Rational::from_integer(0); self.tensor_algebra.dim()];
        for (i, c) in sym_coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, v) in &self.vectors[i] {
                out[*r] += c * v;
            }
        }
        out
    }

    /// Multiset-basis coordinates of a symmetric tensor, or None if the
    /// vector is not symmetric.
    pub fn coordinates_of_tensor(&self, tensor: &[Rational]) -> Option<Vec<Rational>> {
        self.solver.coordinates(tensor)
    }

    /// Coordinates of x^{⊗n} in the multiset basis.
    pub fn symmetrize_power(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.base_dim, "element has wrong base dimension");
        let mut tensor = vec![Rational::from_integer(1)];
        for _ in 0..self.copies {
            tensor = kronecker(&tensor, x);
        }
        self.solver
            .coordinates(&tensor)
            .expect("a tensor power of a single element is symmetric")
    }
}

/// Build Sⁿ A with its induced multiplication table. Products of symmetrized
/// basis vectors are expanded in A^{⊗n} and re-expressed in the multiset
/// basis; that re-expression doubles as a closure check.
pub fn symmetric_power(
    base: &CommutativeAlgebra,
    copies: usize,
) -> Result<SymmetricPower, AlgebraError> {
    let tensor_algebra = CommutativeAlgebra::tensor_power(base, copies)?;
    let basis = multisets(base.dim(), copies);
    let m = base.dim();
    let vectors: Vec<Vec<(usize, Rational)>> = basis
        .iter()
        .map(|mset| {
            let mut entries: Vec<(usize, Rational)> = distinct_permutations(mset)
                .iter()
                .map(|perm| (tensor_index(perm, m), Rational::from_integer(1)))
                .collect();
            entries.sort_by_key(|(r, _)| *r);
            entries
        })
        .collect();
    let solver = SpanSolver::new(tensor_algebra.dim(), vectors.clone())?;
    let dim = basis.len();
    let mut constants = vec![Rational::from_integer(0); dim * dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let mut product = vec![Rational::from_integer(0); tensor_algebra.dim()];
            for (s, cs) in &vectors[i] {
                for (t, ct) in &vectors[j] {
                    let coeff = cs * ct;
                    for (k, c) in tensor_algebra.mul_basis(*s, *t).iter().enumerate() {
                        if !c.is_zero() {
                            product[k] += &coeff * c;
                        }
                    }
                }
            }
            let coords = solver
                .coordinates(&product)
                .expect("products of symmetric tensors stay symmetric");
            for (k, c) in coords.iter().enumerate() {
                constants[(i * dim + j) * dim + k] = c.clone();
                constants[(j * dim + i) * dim + k] = c.clone();
            }
        }
    }
    let unit = solver
        .coordinates(tensor_algebra.unit_coords())
        .expect("the unit 1^{⊗n} is symmetric");
    let algebra = CommutativeAlgebra::table_with_cheap_checks(unit, constants, None)?;
    Ok(SymmetricPower {
        algebra,
        tensor_algebra,
        base_dim: base.dim(),
        copies,
        basis,
        vectors,
        solver,
    })
}

// ---------------------------------------------------------------------------
// p|q-symmetric powers
// ---------------------------------------------------------------------------

/// S^{p|q} A ⊂ S^p A ⊗ S^q A: the subspace of pairs whose contraction —
/// multiply the last slot of the S^p part with the last slot of the S^q part —
/// is proportional to the unit in that slot. Carries the induced algebra
/// structure.
#[derive(Clone, Debug)]
pub struct PqSymmetricPower {
    algebra: CommutativeAlgebra,
    left: SymmetricPower,
    right: SymmetricPower,
    p: usize,
    q: usize,
    pair_vectors: Vec<Vec<Rational>>,
    pair_solver: SpanSolver<Rational>,
}

impl PqSymmetricPower {
    pub fn algebra(&self) -> &CommutativeAlgebra {
        &self.algebra
    }

    /// The S^p factor.
    pub fn left(&self) -> &SymmetricPower {
        &self.left
    }

    /// The S^q factor.
    pub fn right(&self) -> &SymmetricPower {
        &self.right
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.pair_vectors.len()
    }

    /// Basis vector i in S^p ⊗ S^q coordinates (index (a, b) ↦ a·dim(S^q)+b).
    pub fn pair_vector(&self, i: usize) -> &[Rational] {
        &self.pair_vectors[i]
    }

    /// Coordinates of a pair vector in the subalgebra basis, or None when it
    /// does not satisfy the contraction condition.
    pub fn coordinates_in_pair(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.pair_solver.coordinates(v)
    }

    pub fn contains_pair_vector(&self, v: &[Rational]) -> bool {
        self.pair_solver.contains(v)
    }
}

/// Build S^{p|q} A with its induced multiplication table.
pub fn pq_symmetric_power(
    base: &CommutativeAlgebra,
    p: usize,
    q: usize,
) -> Result<PqSymmetricPower, AlgebraError> {
    if p == 0 || q == 0 {
        return Err(AlgebraError::InvalidPqPower { p, q });
    }
    let mut ambient: u128 = 1;
    for _ in 0..p + q {
        ambient *= base.dim() as u128;
        if ambient > MAX_PQ_DIMENSION as u128 {
            return Err(AlgebraError::CapExceeded {
                needed: ambient.min(usize::MAX as u128) as usize,
                cap: MAX_PQ_DIMENSION,
            });
        }
    }
    let left = symmetric_power(base, p)?;
    let right = symmetric_power(base, q)?;
    let m = base.dim();
    let dl = left.dim();
    let dr = right.dim();
    let target_rows = m.pow((p + q - 1) as u32);
    let prefix_dim = m.pow((p + q - 2) as u32);
    let q_minor = m.pow((q - 1) as u32);

    // Column (a, b): the contraction of b_a ⊗ b_b, in A^{⊗(p+q−1)}
    // coordinates with the multiplied slot last.
    let contraction = |a: usize, b: usize| -> Vec<Rational> {
        let mut out = vec![Rational::from_integer(0); target_rows];
        for (s, cs) in &left.vectors[a] {
            let s_prefix = s / m;
            let s_last = s % m;
            for (t, ct) in &right.vectors[b] {
                let t_prefix = t / m;
                let t_last = t % m;
                let prefix = s_prefix * q_minor + t_prefix;
                let coeff = cs * ct;
                for (k, c) in base.mul_basis(s_last, t_last).iter().enumerate() {
                    if !c.is_zero() {
                        out[prefix * m + k] += &coeff * c;
                    }
                }
            }
        }
        out
    };

    // Kernel of [contractions | (prefix ⊗ unit) columns]: a kernel vector
    // pairs subspace coordinates with a witness that the contraction is a
    // combination of (anything) ⊗ 𝟙, up to sign.
    let contraction_columns: Vec<Vec<Rational>> =
        (0..dl * dr).map(|c| contraction(c / dr, c % dr)).collect();
    let unit = base.unit_coords();
    let stacked = Matrix::from_fn(target_rows, dl * dr + prefix_dim, |r, c| {
        if c < dl * dr {
            contraction_columns[c][r].clone()
        } else {
            let u = c - dl * dr;
            if r / m == u { unit[r % m].clone() } else { Rational::from_integer(0) }
        }
    });
    let kernel = kernel_basis(&stacked);
    let pair_vectors: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|v| v[..dl * dr].to_vec())
        .collect();
    let pair_solver = SpanSolver::from_dense(&pair_vectors)?;

    let dim = pair_vectors.len();
    // Products in S^p ⊗ S^q factor through the two symmetric powers:
    // (x₁ ⊗ y₁)(x₂ ⊗ y₂) = x₁x₂ ⊗ y₁y₂.
    let pair_product = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::from_integer(0); dl * dr];
        for (iu, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            let (a1, b1) = (iu / dr, iu % dr);
            for (iv, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let (a2, b2) = (iv / dr, iv % dr);
                let la = left.algebra.mul_basis(a1, a2);
                let rb = right.algebra.mul_basis(b1, b2);
                let coeff = cu * cv;
                for (ka, ca) in la.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (kb, cb) in rb.iter().enumerate() {
                        if !cb.is_zero() {
                            out[ka * dr + kb] += &coeff * &(ca * cb);
                        }
                    }
                }
            }
        }
        out
    };
    let mut constants = vec![Rational::from_integer(0); dim * dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let product = pair_product(&pair_vectors[i], &pair_vectors[j]);
            let coords = pair_solver
                .coordinates(&product)
                .ok_or(AlgebraError::ClosureFailed { i, j })?;
            for (k, c) in coords.iter().enumerate() {
                constants[(i * dim + j) * dim + k] = c.clone();
                constants[(j * dim + i) * dim + k] = c.clone();
            }
        }
    }
    let unit_pair = kronecker(left.algebra.unit_coords(), right.algebra.unit_coords());
    let unit_coords = pair_solver
        .coordinates(&unit_pair)
        .expect("the unit pair satisfies the contraction condition");
    let algebra = CommutativeAlgebra::table_with_cheap_checks(unit_coords, constants, None)?;
    Ok(PqSymmetricPower {
        algebra,
        left,
        right,
        p,
        q,
        pair_vectors,
        pair_solver,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::numbered(n).expect("nonempty")
    }

    /// 2-dimensional algebra ℚ[ε]/(ε²): basis 1, ε.
    fn dual_numbers() -> CommutativeAlgebra {
        CommutativeAlgebra::from_table(
            vec![q(1), q(0)],
            vec![
                vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                vec![vec![q(0), q(1)], vec![q(0), q(0)]],
            ],
        )
        .expect("valid table")
    }

    #[test]
    fn function_algebra_multiplies_pointwise() {
        let a = CommutativeAlgebra::function_algebra(&space(3));
        assert!(a.is_function_form());
        let x = Element::from_integers(&[2, 0, 5]);
        let y = Element::from_integers(&[7, 1, -1]);
        assert_eq!(a.mul(&x, &y), Element::from_integers(&[14, 0, -5]));
        assert_eq!(a.unit_element(), Element::from_integers(&[1, 1, 1]));
    }

    #[test]
    fn table_validation_catches_noncommutative_products() {
        let err = CommutativeAlgebra::from_table(
            vec![q(1), q(0)],
            vec![
                vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                vec![vec![q(0), q(0)], vec![q(0), q(0)]],
            ],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::NotCommutative { i: 0, j: 1 });
    }

    #[test]
    fn table_validation_catches_nonassociative_products() {
        // e1·e1 = e2, e1·e2 = e0, e2·e2 = 0: then (e1e1)e2 = 0 but e1(e1e2) = e1.
        let err = CommutativeAlgebra::from_table(
            vec![q(1), q(0), q(0)],
            vec![
                vec![
                    vec![q(1), q(0), q(0)],
                    vec![q(0), q(1), q(0)],
                    vec![q(0), q(0), q(1)],
                ],
                vec![
                    vec![q(0), q(1), q(0)],
                    vec![q(0), q(0), q(1)],
                    vec![q(1), q(0), q(0)],
                ],
                vec![
                    vec![q(0), q(0), q(1)],
                    vec![q(1), q(0), q(0)],
                    vec![q(0), q(0), q(0)],
                ],
            ],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::NotAssociative { i: 1, j: 1, k: 2 });
    }

    #[test]
    fn table_validation_checks_the_unit() {
        let err = CommutativeAlgebra::from_table(
            vec![q(0), q(1)],
            vec![
                vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                vec![vec![q(0), q(1)], vec![q(0), q(0)]],
            ],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::UnitNotNeutral { basis: 0 });
    }

    #[test]
    fn element_inverse_in_a_function_algebra_is_pointwise() {
        let a = CommutativeAlgebra::function_algebra(&space(3));
        let x = Element::from_integers(&[2, 3, 5]);
        let inv = a.element_inverse(&x).expect("invertible");
        assert_eq!(
            inv,
            Element::new(vec![Rational::new(1, 2), Rational::new(1, 3), Rational::new(1, 5)])
        );
        assert!(a.element_inverse(&Element::from_integers(&[0, 1, 1])).is_none());
    }

    #[test]
    fn element_inverse_handles_nilpotents() {
        let a = dual_numbers();
        // (2 + 3ε)⁻¹ = 1/2 − 3/4 ε
        let inv = a.element_inverse(&Element::from_integers(&[2, 3])).expect("unit");
        assert_eq!(inv, Element::new(vec![Rational::new(1, 2), Rational::new(-3, 4)]));
        assert!(a.element_inverse(&Element::from_integers(&[0, 1])).is_none());
    }

    #[test]
    fn tensor_power_expands_products_from_the_base() {
        let a = CommutativeAlgebra::tensor_power(&dual_numbers(), 2).expect("under cap");
        assert_eq!(a.dim(), 4);
        // (ε⊗1)·(1⊗ε) = ε⊗ε: indices 2·1 = 3 in big-endian digits.
        let product = a.mul_basis(2, 1);
        assert_eq!(product, vec![q(0), q(0), q(0), q(1)]);
        // (ε⊗1)·(ε⊗1) = ε²⊗1 = 0.
        assert!(a.mul_basis(2, 2).iter().all(|c| c.is_zero()));
        assert!(!a.is_function_form());

        let c = CommutativeAlgebra::tensor_power(
            &CommutativeAlgebra::function_algebra(&space(2)),
            2,
        )
        .expect("under cap");
        assert!(c.is_function_form());
        assert_eq!(c.mul_basis(1, 1)[1], q(1));
    }

    #[test]
    fn tensor_power_respects_the_dimension_cap() {
        let base = CommutativeAlgebra::function_algebra(&space(2));
        let err = CommutativeAlgebra::tensor_power(&base, 13).unwrap_err();
        assert_eq!(err, AlgebraError::CapExceeded { needed: 8192, cap: MAX_TENSOR_DIMENSION });
    }

    #[test]
    fn symmetric_power_dimension_is_multisets_choose() {
        for (m, n, expected) in [(2, 2, 3), (3, 2, 6), (2, 3, 4), (3, 3, 10), (4, 2, 10)] {
            let base = CommutativeAlgebra::function_algebra(&space(m));
            let sym = symmetric_power(&base, n).expect("under cap");
            assert_eq!(sym.dim(), expected, "dim S^{n} C({m})");
        }
    }

    #[test]
    fn symmetric_power_of_a_function_algebra_is_again_function_form() {
        let base = CommutativeAlgebra::function_algebra(&space(2));
        let sym = symmetric_power(&base, 2).expect("under cap");
        // Basis {00}, {01}, {11}: orthogonal idempotents summing to the unit.
        assert!(sym.algebra().is_function_form());
        assert_eq!(sym.algebra().unit_coords(), &[q(1), q(1), q(1)]);
    }

    #[test]
    fn symmetric_square_of_dual_numbers() {
        let sym = symmetric_power(&dual_numbers(), 2).expect("under cap");
        assert_eq!(sym.dim(), 3);
        // b_{1,ε}² = (1⊗ε + ε⊗1)² = 2 ε⊗ε = 2 b_{ε,ε}
        let square = sym.algebra().mul_basis(1, 1);
        assert_eq!(square, vec![q(0), q(0), q(2)]);
        // and the unit is b_{1,1} alone, so this is not function form.
        assert_eq!(sym.algebra().unit_coords(), &[q(1), q(0), q(0)]);
        assert!(!sym.algebra().is_function_form());
    }

    #[test]
    fn symmetrize_power_gives_monomial_coordinates() {
        let base = CommutativeAlgebra::function_algebra(&space(2));
        let sym = symmetric_power(&base, 2).expect("under cap");
        let coords = sym.symmetrize_power(&[q(2), q(3)]);
        // (2e₀+3e₁)^{⊗2} = 4 b₀₀ + 6 b₀₁ + 9 b₁₁
        assert_eq!(coords, vec![q(4), q(6), q(9)]);
    }

    #[test]
    fn coordinates_of_tensor_rejects_asymmetric_vectors() {
        let base = CommutativeAlgebra::function_algebra(&space(2));
        let sym = symmetric_power(&base, 2).expect("under cap");
        let mut asym = vec![q(0); 4];
        asym[1] = q(1); // e₀⊗e₁ alone is not symmetric
        assert!(sym.coordinates_of_tensor(&asym).is_none());
        let b01 = sym.tensor_vector(1);
        assert_eq!(sym.coordinates_of_tensor(&b01), Some(vec![q(0), q(1), q(0)]));
    }

    #[test]
    fn pq_symmetric_power_dimensions_for_function_algebras() {
        // dim S^{1|1} C(X) = m² − m + 1.
        for (m, expected) in [(2, 3), (3, 7)] {
            let base = CommutativeAlgebra::function_algebra(&space(m));
            let pq = pq_symmetric_power(&base, 1, 1).expect("under cap");
            assert_eq!(pq.dim(), expected, "dim S^{{1|1}} C({m})");
        }
    }

    #[test]
    fn pq_membership_is_the_contraction_condition() {
        let base = CommutativeAlgebra::function_algebra(&space(2));
        let pq = pq_symmetric_power(&base, 1, 1).expect("under cap");
        // w ∈ A⊗A lies in S^{1|1} iff its two diagonal coordinates agree.
        assert!(pq.contains_pair_vector(&[q(1), q(0), q(0), q(1)]));
        assert!(pq.contains_pair_vector(&[q(5), q(2), q(-7), q(5)]));
        assert!(!pq.contains_pair_vector(&[q(1), q(0), q(0), q(0)]));
    }

    #[test]
    fn pq_products_associate_in_the_induced_table() {
        let base = CommutativeAlgebra::function_algebra(&space(3));
        let pq = pq_symmetric_power(&base, 1, 1).expect("under cap");
        assert_eq!(pq.dim(), 7);
        let a = pq.algebra();
        for (i, j, k) in [(0, 1, 2), (1, 3, 5), (2, 2, 6), (0, 4, 4)] {
            let ij = a.mul_in(&a.basis_element(i).into_coords(), &a.basis_element(j).into_coords());
            let jk = a.mul_in(&a.basis_element(j).into_coords(), &a.basis_element(k).into_coords());
            let lhs = a.mul_in(&ij, &a.basis_element(k).into_coords());
            let rhs = a.mul_in(&a.basis_element(i).into_coords(), &jk);
            assert_eq!(lhs, rhs, "associativity at ({i}, {j}, {k})");
        }
    }

    #[test]
    fn pq_power_requires_both_parts_positive() {
        let base = CommutativeAlgebra::function_algebra(&space(2));
        assert_eq!(
            pq_symmetric_power(&base, 2, 0).unwrap_err(),
            AlgebraError::InvalidPqPower { p: 2, q: 0 }
        );
    }

    #[test]
    fn enumerate_homomorphisms_of_function_algebras() {
        let a = CommutativeAlgebra::function_algebra(&space(3));
        let ground = CommutativeAlgebra::ground();
        let characters = enumerate_homomorphisms(&a, &ground).expect("function form");
        assert_eq!(characters.len(), 3);
        for (i, h) in characters.iter().enumerate() {
            assert!(h.is_homomorphism(&a, &ground));
            assert_eq!(h.functional_value(&[q(10), q(20), q(30)]), q(10 * (i as i64 + 1)));
        }

        let b = CommutativeAlgebra::function_algebra(&space(2));
        let maps = enumerate_homomorphisms(&b, &b).expect("function form");
        assert_eq!(maps.len(), 4);
        for h in &maps {
            assert!(h.is_homomorphism(&b, &b));
        }
        assert!(maps.contains(&LinearMap::identity(2)));
    }

    #[test]
    fn enumerate_homomorphisms_needs_function_form() {
        let err = enumerate_homomorphisms(&dual_numbers(), &CommutativeAlgebra::ground()).unwrap_err();
        assert_eq!(err, AlgebraError::FunctionFormRequired);
    }

    #[test]
    fn homomorphism_failure_reports_the_first_broken_axiom() {
        let a = CommutativeAlgebra::function_algebra(&space(2));
        let bad_unit = LinearMap::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]]);
        assert_eq!(
            bad_unit.homomorphism_failure(&a, &a),
            Some(HomomorphismFailure::UnitMismatch)
        );
        // ε ↦ e₀ preserves the unit but not ε² = 0.
        let d = dual_numbers();
        let bad_product = LinearMap::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(0)]]);
        assert_eq!(
            bad_product.homomorphism_failure(&d, &a),
            Some(HomomorphismFailure::ProductMismatch { i: 1, j: 1 })
        );
    }

    #[test]
    fn span_solver_membership_and_rejection() {
        let columns = vec![
            vec![q(1), q(0), q(1)],
            vec![q(0), q(1), q(1)],
        ];
        let solver = SpanSolver::from_dense(&columns).expect("independent");
        assert_eq!(solver.coordinates(&[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert!(!solver.contains(&[q(1), q(0), q(0)]));

        let dependent = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(
            SpanSolver::from_dense(&dependent).unwrap_err(),
            AlgebraError::DependentSpan
        );
    }

    #[test]
    fn multiset_utilities() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(2, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(distinct_permutations(&[0, 0, 1]).len(), 3);
        assert_eq!(multiset_repetition_factorial(&[0, 0, 0, 2]), q(6));
        assert_eq!(tensor_digits(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(tensor_index(&[1, 0, 1], 2), 5);
    }

    #[test]
    fn configuration_type_and_functional() {
        let c = Configuration::new(space(2), vec![2, -1]).expect("lengths match");
        assert_eq!(c.chi(), 1);
        assert_eq!(c.rational_type(), (2, 1));
        let f = c.functional();
        assert_eq!(f.functional_value(&[q(10), q(100)]), q(-80));
        assert!(Configuration::new(space(2), vec![1]).is_err());
    }

    #[test]
    fn finite_space_serde_round_trip_and_validation() {
        let s = space(2);
        let json = serde_json::to_string(&s).expect("serialize");
        assert_eq!(json, r#"{"points":["x1","x2"]}"#);
        let back: FiniteSpace = serde_json::from_str(&json).expect("deserialize");
        assert_eq!(back, s);
        let dup: Result<FiniteSpace, _> = serde_json::from_str(r#"{"points":["a","a"]}"#);
        assert!(dup.is_err());
        let c = Configuration::new(s, vec![1, -2]).expect("lengths match");
        let cj = serde_json::to_string(&c).expect("serialize");
        let cback: Configuration = serde_json::from_str(&cj).expect("deserialize");
        assert_eq!(cback, c);
    }

    #[test]
    fn evaluation_functionals_are_characters() {
        let a = CommutativeAlgebra::function_algebra(&space(3));
        let ground = CommutativeAlgebra::ground();
        for i in 0..3 {
            let ev = LinearMap::evaluation(3, i);
            assert!(ev.is_homomorphism(&a, &ground));
        }
    }
}
