//! Seeded random inputs for the check suites: integer elements, point
//! configurations, and even block matrices over ℚ or a Grassmann algebra.
//!
//! Everything is driven by one 64-bit seed. Each numbered case gets its own
//! independent stream of the same generator, so case k's data does not depend
//! on how many draws case k−1 made, and a single (seed, case) pair pins every
//! input exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grassmann::Grassmann;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::superlinalg::{SuperDims, SuperMatrix};

/// A root seed that hands out one generator per case.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The generator for one numbered case: same seed and case, same draws.
    pub fn case(&self, case: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case);
        rng
    }
}

/// A coordinate vector with integer entries in [−bound, bound].
pub fn element(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<Rational> {
    assert!(bound >= 0, "bound must be nonnegative");
    (0..dim)
        .map(|_| Rational::from_integer(rng.gen_range(-bound..=bound)))
        .collect()
}

/// A coordinate vector with nonzero integer entries in [−bound, bound] — the
/// invertible elements, when the coordinates are point values of a function.
pub fn nonvanishing_element(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<Rational> {
    assert!(bound >= 1, "bound must be at least 1");
    (0..dim)
        .map(|_| loop {
            let v = rng.gen_range(-bound..=bound);
            if v != 0 {
                return Rational::from_integer(v);
            }
        })
        .collect()
}

/// Pairwise distinct positive integer coordinates, drawn from 1..=3·dim.
/// Distinct values keep product factors (1 + a_α z) from colliding, which is
/// what "generic" means for the probes that feed determinant tests.
pub fn distinct_positive_element(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    let mut pool: Vec<i64> = (1..=3 * dim as i64).collect();
    for i in 0..dim {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool[..dim].iter().map(|&v| Rational::from_integer(v)).collect()
}

/// `total` balls dropped independently into `parts` boxes: a random
/// composition of `total` into nonnegative parts.
pub fn composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<i64> {
    assert!(parts > 0 || total == 0, "cannot split into zero parts");
    let mut out = vec![0i64; parts];
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// Signed multiplicities with positive weight `p` and negative weight `q`
/// before cancellation. A point can receive balls of both signs; the visible
/// type of the resulting functional is then smaller than p|q.
pub fn signed_multiplicities(rng: &mut ChaCha8Rng, parts: usize, p: usize, q: usize) -> Vec<i64> {
    let plus = composition(rng, p, parts);
    let minus = composition(rng, q, parts);
    plus.iter().zip(minus.iter()).map(|(a, b)| a - b).collect()
}

/// Point indices in 0..points, one per slot — the data of a diagonal action.
pub fn point_assignment(rng: &mut ChaCha8Rng, points: usize, count: usize) -> Vec<usize> {
    assert!(points > 0, "need at least one point");
    (0..count).map(|_| rng.gen_range(0..points)).collect()
}

fn rational_block(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| Rational::from_integer(rng.gen_range(-bound..=bound)))
}

/// A random even p|q matrix over ℚ. Over a purely even ring the off-diagonal
/// blocks of an even matrix are forced to vanish, so this is block diagonal;
/// the odd-odd block is redrawn until it is invertible.
pub fn even_supermatrix_rational(
    rng: &mut ChaCha8Rng,
    p: usize,
    q: usize,
    bound: i64,
) -> SuperMatrix<Rational> {
    let dims = SuperDims::new(p, q).expect("p + q ≥ 1");
    let a00 = rational_block(rng, p, p, bound);
    let a11 = loop {
        let candidate = rational_block(rng, q, q, bound);
        if q == 0 || candidate.inverse_adjugate().is_some() {
            break candidate;
        }
    };
    SuperMatrix::from_blocks(dims, a00, Matrix::zeros(p, q), Matrix::zeros(q, p), a11)
        .expect("block-diagonal rational matrices are even")
}

fn even_entry(rng: &mut ChaCha8Rng, gens: usize, bound: i64) -> Grassmann {
    let mut out = Grassmann::constant(Rational::from_integer(rng.gen_range(-bound..=bound)))
        .with_generator_count(gens)
        .expect("generator count within range");
    if gens >= 2 {
        for _ in 0..rng.gen_range(0..=2u32) {
            let i = rng.gen_range(1..=gens - 1);
            let j = rng.gen_range(i + 1..=gens);
            let coeff = Rational::from_integer(rng.gen_range(-bound..=bound));
            let term = Grassmann::monomial(&[i, j], coeff, gens).expect("ascending pair");
            out = out.try_add(&term).expect("matching generator counts");
        }
    }
    out
}

fn odd_entry(rng: &mut ChaCha8Rng, gens: usize, bound: i64) -> Grassmann {
    let mut out = Grassmann::zero_in(gens).expect("generator count within range");
    for _ in 0..rng.gen_range(1..=2u32) {
        let i = rng.gen_range(1..=gens);
        let coeff = Rational::from_integer(rng.gen_range(-bound..=bound));
        let term = Grassmann::monomial(&[i], coeff, gens).expect("single generator");
        out = out.try_add(&term).expect("matching generator counts");
    }
    out
}

/// A random even p|q matrix over the Grassmann algebra on `gens` generators:
/// even entries (constant plus quadratic terms) on the diagonal blocks, odd
/// entries off the diagonal. The odd-odd block is redrawn until its constant
/// part is invertible, which is exactly when the block itself is.
pub fn even_supermatrix_grassmann(
    rng: &mut ChaCha8Rng,
    p: usize,
    q: usize,
    gens: usize,
    bound: i64,
) -> SuperMatrix<Grassmann> {
    assert!(gens >= 1, "need at least one generator for odd entries");
    let dims = SuperDims::new(p, q).expect("p + q ≥ 1");
    let a00 = Matrix::from_fn(p, p, |_, _| even_entry(rng, gens, bound));
    let a01 = Matrix::from_fn(p, q, |_, _| odd_entry(rng, gens, bound));
    let a10 = Matrix::from_fn(q, p, |_, _| odd_entry(rng, gens, bound));
    let a11 = loop {
        let candidate = Matrix::from_fn(q, q, |_, _| even_entry(rng, gens, bound));
        let body = Matrix::from_fn(q, q, |i, j| candidate[(i, j)].body());
        if q == 0 || body.inverse_adjugate().is_some() {
            break candidate;
        }
    };
    SuperMatrix::from_blocks(dims, a00, a01, a10, a11)
        .expect("entries were drawn with the parity of their block")
}
