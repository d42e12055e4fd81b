//! The named property suites behind `suite <name>` and `suite all`. Each
//! suite appends cases to a report; randomized families draw every case from
//! its own generator stream, so adding cases to one family never shifts the
//! draws of another, and a fixed seed fixes every input exactly.

use pqhom::sampling::{self, Sampler};
use pqhom::scalar::Scalar;
use pqhom::superlinalg::{berezinian_block, char_function_series, hankel_recurrence_check};
use pqhom::{
    ber_via_hankel, char_series, classify, diagonal_phi_identity_check, diagonal_representation,
    enumerate_homomorphisms, functional_from_representation, is_n_homomorphism, liouville_check,
    moments, multisets, n_hom_from_sym_hom, pq_hom_from_sym_hom, pq_symmetric_power,
    recover_configuration, representation_image, symmetric_power, br_lift, CommutativeAlgebra,
    Configuration, Element, FiniteSpace, HomType, LinearMap, Matrix, Rational, SuperError,
    SuperMatrix,
};

use crate::report::{digest, CheckReport};

pub const SUITE_NAMES: &[&str] = &[
    "newton", "homs", "lift", "classify", "closure", "series", "super", "bridge", "geometry",
];

/// Run one named suite, or all of them under the name "all". Unknown names
/// return None so the caller can report the command as malformed.
pub fn run(name: &str, seed: u64) -> Option<CheckReport> {
    let mut report = CheckReport::new(name, seed);
    match name {
        "newton" => newton(&mut report),
        "homs" => homs(&mut report),
        "lift" => lift(&mut report),
        "classify" => classify_suite(&mut report, seed),
        "closure" => closure(&mut report, seed),
        "series" => series(&mut report, seed),
        "super" => super_suite(&mut report, seed),
        "bridge" => bridge(&mut report, seed),
        "geometry" => geometry(&mut report),
        "all" => {
            newton(&mut report);
            homs(&mut report);
            lift(&mut report);
            classify_suite(&mut report, seed);
            closure(&mut report, seed);
            series(&mut report, seed);
            super_suite(&mut report, seed);
            bridge(&mut report, seed);
            geometry(&mut report);
        }
        _ => return None,
    }
    Some(report.finish())
}

// Generator stream bases, one block per randomized family.
const CLASSIFY_STREAM: u64 = 300;
const CLOSURE_STREAM: u64 = 400;
const SERIES_STREAM: u64 = 600;
const SUPER_STREAM: u64 = 700;
const BRIDGE_STREAM: u64 = 800;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn qs(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| q(v)).collect()
}

fn c_of(m: usize) -> CommutativeAlgebra {
    CommutativeAlgebra::function_algebra(&FiniteSpace::numbered(m).unwrap())
}

fn ground() -> CommutativeAlgebra {
    CommutativeAlgebra::ground()
}

/// All integer vectors of length `m` with Σ|nᵢ| ≤ radius.
fn signed_ball(m: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().map(|n: &i64| n.abs()).sum();
            for n in -(radius - used)..=(radius - used) {
                let mut w = v.clone();
                w.push(n);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn net_type(config: &[i64]) -> (usize, usize) {
    let p: i64 = config.iter().filter(|&&n| n > 0).sum();
    let neg: i64 = config.iter().filter(|&&n| n < 0).sum();
    (p as usize, (-neg) as usize)
}

/// The 3×3 determinant in the moments of the two-point counting functional
/// vanishes on a full interpolation grid, one case per grid row.
fn newton(report: &mut CheckReport) {
    let algebra = c_of(2);
    let f = LinearMap::functional(qs(&[1, 1]));
    for x1 in 0..=6i64 {
        let result = (0..=6i64).try_for_each(|x2| {
            let a = Element::new(qs(&[x1, x2]));
            let s = moments(&f, &algebra, &a, 3);
            let (s1, s2, s3) = (s.value(1).clone(), s.value(2).clone(), s.value(3).clone());
            let det = Matrix::from_rows(vec![
                vec![s1.clone(), q(1), q(0)],
                vec![s2.clone(), s1.clone(), q(2)],
                vec![s3, s2, s1],
            ])
            .det();
            if det == q(0) {
                Ok(())
            } else {
                Err(format!("determinant {det} at a = ({x1}, {x2})"))
            }
        });
        report.push(
            format!("newton/{x1:03}"),
            format!("moment determinant vanishes along a = ({x1}, t), t = 0..6"),
            digest(&["newton", &x1.to_string()]),
            result,
        );
    }
}

/// Homomorphisms of a function algebra are exactly the point evaluations.
fn homs(report: &mut CheckReport) {
    for m in 1..=6usize {
        let algebra = c_of(m);
        let result = (|| {
            let found = enumerate_homomorphisms(&algebra, &ground()).map_err(|e| e.to_string())?;
            if found.len() != m {
                return Err(format!("{} homomorphisms", found.len()));
            }
            let mut rows: Vec<Vec<Rational>> =
                found.iter().map(|h| h.matrix().row(0).to_vec()).collect();
            rows.sort();
            let mut expected: Vec<Vec<Rational>> = (0..m)
                .map(|i| LinearMap::evaluation(m, i).matrix().row(0).to_vec())
                .collect();
            expected.sort();
            if rows != expected {
                return Err("the homomorphisms are not the point evaluations".into());
            }
            Ok(())
        })();
        report.push(
            format!("homs/{:03}", m - 1),
            format!("{m} points: homomorphisms to the scalars are the {m} evaluations"),
            digest(&["homs", &m.to_string()]),
            result,
        );
    }
}

/// Two-point counting functionals lift onto the homomorphisms of the
/// symmetric square, and the power-sum pullback undoes the lift.
fn lift(report: &mut CheckReport) {
    for m in 1..=3usize {
        let result = (|| {
            let base = c_of(m);
            let power = symmetric_power(&base, 2).map_err(|e| e.to_string())?;
            let mut lifted: Vec<Vec<Rational>> = Vec::new();
            for pair in multisets(m, 2) {
                let mut weights = vec![0i64; m];
                for &x in &pair {
                    weights[x] += 1;
                }
                let f = LinearMap::functional(qs(&weights));
                let h = br_lift(&f, &base, &ground(), &power).map_err(|e| e.to_string())?;
                if !h.is_homomorphism(power.algebra(), &ground()) {
                    return Err(format!("lift of {weights:?} is not a homomorphism"));
                }
                let back =
                    n_hom_from_sym_hom(&h, &base, &power, &ground()).map_err(|e| e.to_string())?;
                if back != f {
                    return Err(format!("pullback does not undo the lift of {weights:?}"));
                }
                lifted.push(h.matrix().row(0).to_vec());
            }
            lifted.sort();
            let homs =
                enumerate_homomorphisms(power.algebra(), &ground()).map_err(|e| e.to_string())?;
            let mut rows: Vec<Vec<Rational>> =
                homs.iter().map(|h| h.matrix().row(0).to_vec()).collect();
            rows.sort();
            if lifted != rows {
                return Err(format!(
                    "{} lifts but {} homomorphisms of the square",
                    lifted.len(),
                    rows.len()
                ));
            }
            Ok(())
        })();
        report.push(
            format!("lift/{:03}", m - 1),
            format!("{m} points: pair functionals lift onto the homomorphisms of the square"),
            digest(&["lift", &m.to_string()]),
            result,
        );
    }
}

/// Seeded classification: random signed multiplicities classify to their net
/// type inside a 4|4 search box.
fn classify_suite(report: &mut CheckReport, seed: u64) {
    let sampler = Sampler::new(seed);
    for case in 0..40u64 {
        let mut rng = sampler.case(CLASSIFY_STREAM + case);
        let m = sampling::point_assignment(&mut rng, 4, 1)[0] + 1;
        let plus = sampling::point_assignment(&mut rng, 3, 1)[0];
        let minus = sampling::point_assignment(&mut rng, 3, 1)[0];
        let config = sampling::signed_multiplicities(&mut rng, m, plus, minus);
        let (p, q_ty) = net_type(&config);
        let expected = if q_ty == 0 {
            HomType::NHomomorphism { n: p }
        } else {
            HomType::PqHomomorphism { p, q: q_ty }
        };
        let algebra = c_of(m);
        let f = LinearMap::functional(qs(&config));
        let result = match classify(&f, &algebra, 4, 4) {
            Ok(verdict) if verdict == expected => Ok(()),
            Ok(verdict) => Err(format!("classified as {verdict}, expected {expected}")),
            Err(e) => Err(e.to_string()),
        };
        report.push(
            format!("classify/{case:03}"),
            format!("multiplicities {config:?} on {m} points have type ({p},{q_ty})"),
            digest(&["classify", &format!("{m} {config:?}")]),
            result,
        );
    }
}

/// Seeded closure laws: sums add the counts, compositions multiply them.
fn closure(report: &mut CheckReport, seed: u64) {
    let sampler = Sampler::new(seed);
    for case in 0..30u64 {
        let mut rng = sampler.case(CLOSURE_STREAM + case);
        let m = sampling::point_assignment(&mut rng, 3, 1)[0] + 1;
        let n1 = sampling::point_assignment(&mut rng, 4, 1)[0];
        let n2 = sampling::point_assignment(&mut rng, 4, 1)[0];
        let c1 = sampling::composition(&mut rng, n1, m);
        let c2 = sampling::composition(&mut rng, n2, m);
        let f = LinearMap::functional(qs(&c1));
        let g = LinearMap::functional(qs(&c2));
        let result = match is_n_homomorphism(&f.add(&g), &c_of(m), &ground(), n1 + n2) {
            Ok(HomType::NHomomorphism { n }) if n == n1 + n2 => Ok(()),
            Ok(v) => Err(format!("sum gave {v}")),
            Err(e) => Err(e.to_string()),
        };
        report.push(
            format!("closure/{case:03}"),
            format!("sum of {c1:?} and {c2:?} counts {}", n1 + n2),
            digest(&["closure-sum", &format!("{c1:?} {c2:?}")]),
            result,
        );
    }
    for case in 30..60u64 {
        let mut rng = sampler.case(CLOSURE_STREAM + case);
        let mx = sampling::point_assignment(&mut rng, 3, 1)[0] + 1;
        let my = sampling::point_assignment(&mut rng, 2, 1)[0] + 1;
        let n = sampling::point_assignment(&mut rng, 3, 1)[0];
        let w = sampling::point_assignment(&mut rng, 3, 1)[0];
        let rows: Vec<Vec<Rational>> = (0..my)
            .map(|_| qs(&sampling::composition(&mut rng, n, mx)))
            .collect();
        let f = LinearMap::from_rows(rows);
        let g = LinearMap::functional(qs(&sampling::composition(&mut rng, w, my)));
        let result = (|| {
            match is_n_homomorphism(&f, &c_of(mx), &c_of(my), n).map_err(|e| e.to_string())? {
                HomType::NHomomorphism { n: got } if got == n => {}
                v => return Err(format!("inner map gave {v}")),
            }
            match is_n_homomorphism(&g.compose(&f), &c_of(mx), &ground(), n * w)
                .map_err(|e| e.to_string())?
            {
                HomType::NHomomorphism { n: got } if got == n * w => Ok(()),
                v => Err(format!("composite gave {v}")),
            }
        })();
        report.push(
            format!("closure/{case:03}"),
            format!("composite of an {n}-map into {my} points and a {w}-functional counts {}", n * w),
            digest(&["closure-compose", &format!("{mx} {my} {n} {w}")]),
            result,
        );
    }
}

/// Seeded series identities: the characteristic series of a sum is the
/// product of the series, and diagonal values reduce to determinants.
fn series(report: &mut CheckReport, seed: u64) {
    let sampler = Sampler::new(seed);
    for case in 0..30u64 {
        let mut rng = sampler.case(SERIES_STREAM + case);
        let m = sampling::point_assignment(&mut rng, 3, 1)[0] + 1;
        let algebra = c_of(m);
        let f = LinearMap::functional(sampling::element(&mut rng, m, 3));
        let g = LinearMap::functional(sampling::element(&mut rng, m, 3));
        let a = Element::new(sampling::element(&mut rng, m, 3));
        let result = (|| {
            let left = char_series(&f.add(&g), &algebra, &a, 6);
            let right = char_series(&f, &algebra, &a, 6) * char_series(&g, &algebra, &a, 6);
            if left != right {
                return Err("series of the sum differs from the product".into());
            }
            if !diagonal_phi_identity_check(&f, &algebra, &a, 5) {
                return Err("diagonal values do not reduce to determinants".into());
            }
            Ok(())
        })();
        report.push(
            format!("series/{case:03}"),
            format!("series identities at a random element on {m} points"),
            digest(&["series", &format!("{case}")]),
            result,
        );
    }
}

/// Ring-generic body of one block-matrix case: dual-route series, Hankel
/// recurrences, the minor-ratio value, and multiplicativity.
fn super_case<R: Scalar>(m: &SuperMatrix<R>, n: &SuperMatrix<R>) -> Result<(), String> {
    char_function_series(m, 8).map_err(|e| e.to_string())?;
    let (p, q_dim) = (m.dims().p as isize, m.dims().q as isize);
    let window = hankel_recurrence_check(m, p - q_dim + 3).map_err(|e| e.to_string())?;
    if !window.all_vanish {
        return Err("a required Hankel determinant is nonzero".into());
    }
    match ber_via_hankel(m) {
        Ok(_) | Err(SuperError::IndeterminateRatio) => {}
        Err(e) => return Err(e.to_string()),
    }
    let left = berezinian_block(&m.mul(n)).map_err(|e| e.to_string())?;
    let right = berezinian_block(m).map_err(|e| e.to_string())?
        * berezinian_block(n).map_err(|e| e.to_string())?;
    if left != right {
        return Err("the Berezinian is not multiplicative".into());
    }
    if q_dim == 0 && berezinian_block(m).map_err(|e| e.to_string())? != m.block(0, 0).det() {
        return Err("q = 0 value differs from the determinant".into());
    }
    Ok(())
}

/// Seeded even block matrices over the rationals and over Grassmann
/// coefficient rings, alternating case by case.
fn super_suite(report: &mut CheckReport, seed: u64) {
    let sampler = Sampler::new(seed);
    for case in 0..30u64 {
        let mut rng = sampler.case(SUPER_STREAM + case);
        let grassmann = case % 2 == 1;
        let (p, q_dim) = loop {
            let p = sampling::point_assignment(&mut rng, 4, 1)[0];
            let q_dim = sampling::point_assignment(&mut rng, 4, 1)[0];
            if p + q_dim >= 1 {
                break (p, q_dim);
            }
        };
        let (ring, result) = if grassmann {
            let gens = sampling::point_assignment(&mut rng, 4, 1)[0] + 1;
            let m = sampling::even_supermatrix_grassmann(&mut rng, p, q_dim, gens, 2);
            let n = sampling::even_supermatrix_grassmann(&mut rng, p, q_dim, gens, 2);
            (format!("grassmann:{gens}"), super_case(&m, &n))
        } else {
            let m = sampling::even_supermatrix_rational(&mut rng, p, q_dim, 4);
            let n = sampling::even_supermatrix_rational(&mut rng, p, q_dim, 4);
            let result = super_case(&m, &n).and_then(|()| {
                let relation = liouville_check(&m, 6).map_err(|e| e.to_string())?;
                if relation.agree {
                    Ok(())
                } else {
                    Err("the Liouville relation fails".into())
                }
            });
            ("rational".into(), result)
        };
        report.push(
            format!("super/{case:03}"),
            format!("block matrix of dims {p}|{q_dim} over {ring}: series, recurrences, values"),
            digest(&["super", &format!("{case} {p} {q_dim} {ring}")]),
            result,
        );
    }
}

/// Seeded diagonal actions: the characteristic series of the supertrace
/// functional matches the coefficient sequence of the acting matrix.
fn bridge(report: &mut CheckReport, seed: u64) {
    let sampler = Sampler::new(seed);
    for case in 0..20u64 {
        let mut rng = sampler.case(BRIDGE_STREAM + case);
        let m = sampling::point_assignment(&mut rng, 3, 1)[0] + 1;
        let algebra = c_of(m);
        let p = sampling::point_assignment(&mut rng, 3, 1)[0] + 1;
        let q_dim = sampling::point_assignment(&mut rng, 3, 1)[0];
        let evens = sampling::point_assignment(&mut rng, m, p);
        let odds = sampling::point_assignment(&mut rng, m, q_dim);
        let a = Element::new(sampling::element(&mut rng, m, 4));
        let result = (|| {
            let images = diagonal_representation(m, &evens, &odds);
            let f = functional_from_representation(&algebra, &images).map_err(|e| e.to_string())?;
            let series = char_series(&f, &algebra, &a, 6);
            let traces = char_function_series(&representation_image(&images, &a), 6)
                .map_err(|e| e.to_string())?;
            for k in 0..=6usize {
                if series.coefficient(k) != traces.value(k as isize) {
                    return Err(format!("coefficient {k} differs between the two routes"));
                }
            }
            Ok(())
        })();
        report.push(
            format!("bridge/{case:03}"),
            format!("diagonal action of dims {p}|{q_dim} on {m} points: the two series agree"),
            digest(&["bridge", &format!("{case} {m} {p} {q_dim}")]),
            result,
        );
    }
}

/// The 1|1 power's dimension count, pullback of restricted evaluations, and
/// exact recovery of configurations from their functionals.
fn geometry(report: &mut CheckReport) {
    for m in 2..=4usize {
        let result = pq_symmetric_power(&c_of(m), 1, 1)
            .map_err(|e| e.to_string())
            .and_then(|power| {
                if power.dim() == m * m - m + 1 {
                    Ok(())
                } else {
                    Err(format!("dimension {}", power.dim()))
                }
            });
        report.push(
            format!("geometry/{:03}", m - 2),
            format!("1|1 power on {m} points has dimension {}", m * m - m + 1),
            digest(&["geometry-dim", &m.to_string()]),
            result,
        );
    }
    for m in 2..=3usize {
        let result = (|| {
            let base = c_of(m);
            let power = pq_symmetric_power(&base, 1, 1).map_err(|e| e.to_string())?;
            for x in 0..m {
                for y in 0..m {
                    let row: Vec<Rational> = (0..power.dim())
                        .map(|i| power.pair_vector(i)[x * m + y].clone())
                        .collect();
                    let h = LinearMap::functional(row);
                    let back = pq_hom_from_sym_hom(&h, &base, &power, &ground())
                        .map_err(|e| e.to_string())?;
                    let mut weights = vec![0i64; m];
                    weights[x] += 1;
                    weights[y] -= 1;
                    if back != LinearMap::functional(qs(&weights)) {
                        return Err(format!("({x}, {y}) does not pull back to a difference"));
                    }
                }
            }
            Ok(())
        })();
        report.push(
            format!("geometry/{:03}", m + 1),
            format!("{m} points: restricted evaluations pull back to evaluation differences"),
            digest(&["geometry-pullback", &m.to_string()]),
            result,
        );
    }
    for m in 1..=3usize {
        let result = (|| {
            let algebra = c_of(m);
            let space = FiniteSpace::numbered(m).unwrap();
            for config in signed_ball(m, 2) {
                let config = Configuration::new(space.clone(), config).unwrap();
                let recovered = recover_configuration(&config.functional(), &algebra);
                if recovered.as_ref() != Some(&config) {
                    return Err(format!("{:?} recovered wrongly", config.multiplicities()));
                }
            }
            Ok(())
        })();
        report.push(
            format!("geometry/{:03}", m + 5),
            format!("{m} points: configurations are recovered from their functionals"),
            digest(&["geometry-recover", &m.to_string()]),
            result,
        );
    }
}
