//! Jacobian rank of a list of ring elements.
//!
//! In characteristic zero the rank of `(∂g_i/∂x_j)` over the fraction field
//! equals the transcendence degree of the `g_i`. The exact path runs
//! fraction-free (Bareiss) elimination directly on polynomial entries; a
//! random-point evaluation gives a cheap lower bound used as a cross-check.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::domain::Coeff;
use crate::poly::MixedPoly;
use crate::ring::ExponentVector;

/// The Jacobian matrix, one row per generator, each row multiplied by a
/// monomial so that no entry carries a negative exponent.
pub fn jacobian_matrix(generators: &[MixedPoly]) -> Vec<Vec<MixedPoly>> {
    generators
        .iter()
        .map(|g| {
            let n = g.ring().n();
            let row: Vec<MixedPoly> = (0..n).map(|j| g.partial_derivative(j)).collect();
            let mut lo = vec![0i64; n];
            for entry in &row {
                for t in entry.terms() {
                    for (k, &e) in t.exp.entries().iter().enumerate() {
                        lo[k] = lo[k].min(e);
                    }
                }
            }
            let shift = ExponentVector::from_vec(lo.iter().map(|&v| -v).collect());
            let one = g.ring().domain().one();
            row.iter().map(|p| p.shift(&one, &shift)).collect()
        })
        .collect()
}

/// Rank of a matrix of ring elements by fraction-free elimination.
pub fn bareiss_rank(mut a: Vec<Vec<MixedPoly>>) -> usize {
    let rows = a.len();
    let Some(cols) = a.first().map(Vec::len) else {
        return 0;
    };
    let ring = a[0][0].ring().clone();
    let mut prev = MixedPoly::one(&ring);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].len())
        else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
            a[i][c] = MixedPoly::zero(&ring);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact Jacobian rank of `generators` over the fraction field.
pub fn jacobian_rank(generators: &[MixedPoly]) -> usize {
    if generators.is_empty() || generators[0].ring().n() == 0 {
        return 0;
    }
    bareiss_rank(jacobian_matrix(generators))
}

/// Rank of the Jacobian evaluated at `point`; `None` when the point is a
/// pole of some entry.
pub fn jacobian_rank_at(generators: &[MixedPoly], point: &[Coeff]) -> Option<usize> {
    let Some(first) = generators.first() else {
        return Some(0);
    };
    let dom = first.ring().domain().clone();
    let n = first.ring().n();
    let mut rows: Vec<Vec<Coeff>> = Vec::with_capacity(generators.len());
    for g in generators {
        let row = (0..n)
            .map(|j| g.partial_derivative(j).evaluate(point).ok())
            .collect::<Option<Vec<_>>>()?;
        rows.push(row);
    }
    // Plain Gaussian elimination over the coefficient field.
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = dom.inv(&rows[rank][c])?;
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = dom.mul(&rows[i][c], &inv);
            for j in c..n {
                let sub = dom.mul(&f, &rows[rank][j]);
                rows[i][j] = dom.sub(&rows[i][j], &sub);
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Random-point rank with up to three fresh points; falls back to the
/// exact computation when no point reaches the generic upper bound.
pub fn jacobian_rank_probabilistic<R: Rng>(generators: &[MixedPoly], rng: &mut R) -> usize {
    let Some(first) = generators.first() else {
        return 0;
    };
    let n = first.ring().n();
    let dom = first.ring().domain().clone();
    let bound = generators.len().min(n);
    for _ in 0..3 {
        let point: Vec<Coeff> = (0..n)
            .map(|_| {
                let mut v = rng.gen_range(-1000i64..=1000);
                if v == 0 {
                    v = 1;
                }
                dom.coerce(&BigRational::from_integer(v.into()))
                    .unwrap_or_else(|_| dom.one())
            })
            .collect();
        if point.iter().any(Zero::is_zero) {
            continue;
        }
        if jacobian_rank_at(generators, &point) == Some(bound) {
            return bound;
        }
    }
    jacobian_rank(generators)
}
