//! Hand-derived example values recomputed by independent means: closed-form
//! closures evaluated at random rational points, plain `i64` matrix
//! arithmetic, and brute-force lattice enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use retract_core::endo::Endomorphism;
use retract_core::lattice::{fixed_lattice_basis, kernel_basis, solve_in_lattice, IntMatrix, SummandDecomposition};
use retract_core::retract::{
    analyze, classify, compute_y_variables, quotient_mod_j, quotient_ring, rationality_verdict, transcendence_degree,
    ClassificationVerdict, Rationality, TrDeg,
};
use retract_core::{parse_poly, parse_problem, DomainDescriptor, MixedPoly, Ring};

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Evaluates a polynomial from its terms, independently of the library's
/// own evaluator.
fn eval(p: &MixedPoly, pt: &[Q]) -> Q {
    let mut acc = Q::zero();
    for t in p.terms() {
        let mut v = t.coeff.clone();
        for (x, &e) in pt.iter().zip(t.exp.entries()) {
            let base = if e < 0 { x.recip() } else { x.clone() };
            for _ in 0..e.unsigned_abs() {
                v *= &base;
            }
        }
        acc += v;
    }
    acc
}

fn random_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let mut a = rng.gen_range(-40i64..=40);
                    if a == 0 {
                        a = 7;
                    }
                    q(a, rng.gen_range(1..=9))
                })
                .collect()
        })
        .collect()
}

fn agrees(p: &MixedPoly, f: impl Fn(&[Q]) -> Q) {
    for pt in random_points(p.ring().n(), 25, 17) {
        assert_eq!(eval(p, &pt), f(&pt), "{p} at {pt:?}");
    }
}

fn ring(header: &str) -> Ring {
    parse_problem(header).unwrap().ring().clone()
}

fn poly(r: &Ring, s: &str) -> MixedPoly {
    parse_poly(s, r).unwrap()
}

#[test]
fn polynomial_arithmetic_values() {
    let r = ring("ring QQ[x1^±, x2]\nx1 -> x1\nx2 -> x2");
    let u = poly(&r, "x1 + x1^-1");
    let sq = &u * &u;
    agrees(&sq, |x| {
        let s = &x[0] + x[0].recip();
        &s * &s
    });
    assert_eq!(sq.to_string(), "x1^2 + 2 + x1^-2");

    let d = sq.partial_derivative(0);
    agrees(&d, |x| q(2, 1) * &x[0] - q(2, 1) / (&x[0] * &x[0] * &x[0]));
    assert_eq!(d.to_string(), "2*x1 - 2*x1^-3");

    assert_eq!(u.evaluate(&[q(2, 1), q(0, 1)]).unwrap(), q(5, 2));
}

#[test]
fn apply_values() {
    let r = ring("ring QQ[x1^±, x2]\nx1 -> x1\nx2 -> x2");
    let phi = Endomorphism::new(&r, vec![poly(&r, "x1"), poly(&r, "x1 + x1^-1")]).unwrap();
    let img = phi.apply(&poly(&r, "x2^2")).unwrap();
    agrees(&img, |x| {
        let s = &x[0] + x[0].recip();
        &s * &s
    });

    let e1 = parse_problem("ring QQ[x1^±,x2^±]\nx1 -> x1*x2\nx2 -> 1").unwrap().endomorphism;
    let r2 = e1.ring().clone();
    let img = e1.apply(&poly(&r2, "x1^-1")).unwrap();
    agrees(&img, |x| (&x[0] * &x[1]).recip());
    assert_eq!(e1.compose(&e1).unwrap(), e1);
}

#[test]
fn substitution_matches_pointwise_composition() {
    // φ(p)(pt) = p(φ(x)(pt)) for random p.
    let r = ring("ring QQ[x1^±, x2^±, x3]\nx1 -> x1\nx2 -> x2\nx3 -> x3");
    let images = vec![poly(&r, "x1"), poly(&r, "1"), poly(&r, "x3 + x2 - 1")];
    let phi = Endomorphism::new(&r, images.clone()).unwrap();
    let p = poly(&r, "x1^-2*x3^2 - 3*x2*x3 + 1/5*x1*x2^-1");
    let img = phi.apply(&p).unwrap();
    for pt in random_points(3, 20, 5) {
        let mapped: Vec<Q> = images.iter().map(|g| eval(g, &pt)).collect();
        assert_eq!(eval(&img, &pt), eval(&p, &mapped));
    }
}

fn mat2_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn mat2_inverse(a: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!(det == 1 || det == -1);
    [[a[1][1] * det, -a[0][1] * det], [-a[1][0] * det, a[0][0] * det]]
}

fn as_rows(m: &IntMatrix) -> [[i64; 2]; 2] {
    let r = m.to_i64_rows().unwrap();
    [[r[0][0], r[0][1]], [r[1][0], r[1][1]]]
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// All `v` in a box with `M v = target(v)`, found by enumeration.
fn enumerate(m: [[i64; 2]; 2], pred: impl Fn([i64; 2], [i64; 2]) -> bool) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for a in -6..=6 {
        for b in -6..=6 {
            let v = [a, b];
            let mv = [m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b];
            if pred(v, mv) {
                out.push(v);
            }
        }
    }
    out
}

fn spans(basis: &[Vec<BigInt>], vectors: &[[i64; 2]]) {
    for v in vectors {
        assert!(solve_in_lattice(&big(v), basis).is_some(), "{v:?} not in span of {basis:?}");
    }
}

#[test]
fn lattice_values() {
    let m = [[1, 0], [1, 0]];
    assert_eq!(mat2_mul(m, m), m);
    let im = IntMatrix::from_rows_i64(&[vec![1, 0], vec![1, 0]]);
    let fixed = fixed_lattice_basis(&im).unwrap();
    let kernel = kernel_basis(&im).unwrap();
    assert_eq!(fixed, vec![big(&[1, 1])]);
    assert_eq!(kernel, vec![big(&[0, 1])]);
    spans(&fixed, &enumerate(m, |v, mv| v == mv));
    spans(&kernel, &enumerate(m, |_, mv| mv == [0, 0]));

    let m2 = [[1, -2], [0, 0]];
    let k2 = kernel_basis(&IntMatrix::from_rows_i64(&[vec![1, -2], vec![0, 0]])).unwrap();
    assert_eq!(k2, vec![big(&[2, 1])]);
    spans(&k2, &enumerate(m2, |_, mv| mv == [0, 0]));

    let dec = SummandDecomposition::new(&im).unwrap();
    let y = as_rows(&dec.y);
    assert_eq!(y, [[1, 0], [1, 1]]);
    assert_eq!(as_rows(&dec.t), mat2_inverse(y));
    assert_eq!(mat2_inverse(y), [[1, 0], [-1, 1]]);

    let dec2 = SummandDecomposition::new(&IntMatrix::from_rows_i64(&[vec![1, -2], vec![0, 0]])).unwrap();
    assert_eq!(as_rows(&dec2.y), [[1, 2], [0, 1]]);
    assert_eq!(as_rows(&dec2.t), mat2_inverse([[1, 2], [0, 1]]));

    let c = solve_in_lattice(&big(&[3, 1]), &[big(&[1, 1]), big(&[2, 0])]).unwrap();
    assert_eq!(c, big(&[1, 1]));
}

#[test]
fn y_variable_values() {
    let phi = parse_problem("ring QQ[x1^±,x2^±]\nx1 -> x1\nx2 -> 3").unwrap().endomorphism;
    let r = phi.ring().clone();
    let (dec, ys) = compute_y_variables(&phi).unwrap();
    assert_eq!(ys[0].element(&r).to_string(), "x1");
    assert_eq!(ys[1].element(&r), poly(&r, "1/3*x2"));
    assert_eq!(ys[1].normalizer, q(3, 1));
    // φ(y2) = 1 at every point.
    let img = phi.apply(&ys[1].element(&r)).unwrap();
    agrees(&img, |_| Q::one());

    let e1 = parse_problem("ring QQ[x1^±,x2^±]\nx1 -> x1*x2\nx2 -> 1").unwrap().endomorphism;
    let (dec1, ys1) = compute_y_variables(&e1).unwrap();
    let target = quotient_ring(e1.ring(), dec1.r).unwrap();
    let r1 = e1.ring();
    assert!(quotient_mod_j(&poly(r1, "x2"), &dec1, &ys1, &target).unwrap().is_one());
    assert_eq!(quotient_mod_j(&poly(r1, "x1*x2"), &dec1, &ys1, &target).unwrap(), poly(&target, "y1"));
    assert_eq!(dec.r, 1);
}

/// Rank of a matrix of rationals by plain elimination.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in 0..cols {
                    let s = &f * &rows[r][j];
                    rows[i][j] -= s;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn transcendence_degree_values() {
    // Jacobian of (x1, x1 + x1^-1) is [[1, 0], [1 - x1^-2, 0]].
    let r = ring("ring QQ[x1^±, x2]\nx1 -> x1\nx2 -> x2");
    let gens = vec![poly(&r, "x1"), poly(&r, "x1 + x1^-1")];
    for pt in random_points(2, 5, 9) {
        let jac = vec![vec![Q::one(), Q::zero()], vec![Q::one() - (&pt[0] * &pt[0]).recip(), Q::zero()]];
        assert_eq!(rank(jac), 1);
    }
    assert_eq!(transcendence_degree(&gens, &r, 1).unwrap(), TrDeg::Exact(1));

    let r3 = ring("ring QQ[x1^±, x2^±, x3]\nx1 -> x1\nx2 -> x2\nx3 -> x3");
    let gens = vec![poly(&r3, "x1"), poly(&r3, "x3 + x2 - 1")];
    let jac = vec![vec![Q::one(), Q::zero(), Q::zero()], vec![Q::zero(), Q::one(), Q::one()]];
    assert_eq!(rank(jac), 2);
    assert_eq!(transcendence_degree(&gens, &r3, 1).unwrap(), TrDeg::Exact(2));
}

#[test]
fn classification_table_values() {
    let qq = DomainDescriptor::rationals();
    assert_eq!(
        classify(2, 2, 1, TrDeg::Exact(1), &qq).unwrap(),
        ClassificationVerdict::PureLaurent { r: 1 }
    );
    assert!(matches!(
        classify(3, 1, 1, TrDeg::Exact(2), &qq).unwrap(),
        ClassificationVerdict::UfdClassified { r: 1, s: 1, .. }
    ));
    for (n, d, r) in [(1, 1, 0), (3, 1, 0), (4, 2, 0)] {
        assert_eq!(classify(n, d, r, TrDeg::Exact(0), &qq).unwrap(), ClassificationVerdict::CoefficientRing);
    }
    assert_eq!(rationality_verdict(3, 1, 1, TrDeg::Exact(2), &qq).unwrap(), Rationality::Rational);
    assert_eq!(rationality_verdict(5, 1, 1, TrDeg::Exact(1), &qq).unwrap(), Rationality::Rational);
    assert_eq!(rationality_verdict(5, 1, 1, TrDeg::Exact(3), &qq).unwrap(), Rationality::Unknown);
}

#[test]
fn pipeline_values() {
    let e1 = analyze(&parse_problem("ring QQ[x1^±,x2^±]\nx1 -> x1*x2\nx2 -> 1").unwrap().endomorphism).unwrap();
    assert_eq!((e1.r, e1.trdeg), (1, TrDeg::Exact(1)));
    assert_eq!(e1.classification, ClassificationVerdict::PureLaurent { r: 1 });
    assert_eq!(e1.generators, vec![poly(&e1.ring, "x1*x2")]);

    let e7 = analyze(
        &parse_problem("ring QQ[x1^±,x2^±,x3]\nx1 -> x1\nx2 -> 1\nx3 -> x3 + x2 - 1")
            .unwrap()
            .endomorphism,
    )
    .unwrap();
    assert_eq!((e7.r, e7.trdeg), (1, TrDeg::Exact(2)));
    assert_eq!(e7.generators, vec![poly(&e7.ring, "x1"), poly(&e7.ring, "x3 + x2 - 1")]);
    assert_eq!(e7.classification, ClassificationVerdict::LaurentTensorPoly { r: 1, s: 1 });
}
