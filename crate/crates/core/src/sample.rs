//! Small random ring elements, used for sampled certificates and tests.

use num_rational::BigRational;
use rand::Rng;

use crate::poly::MixedPoly;
use crate::ring::{ExponentVector, Ring};

/// A random element with up to `terms` terms, Laurent exponents in
/// `[-max_exp, max_exp]`, polynomial exponents in `[0, max_exp]` and nonzero
/// integer coefficients in `[-max_coeff, max_coeff]`.
pub fn random_element<R: Rng>(ring: &Ring, rng: &mut R, terms: usize, max_exp: i64, max_coeff: i64) -> MixedPoly {
    let n = ring.n();
    let d = ring.d();
    let raw: Vec<_> = (0..terms)
        .map(|_| {
            let e: Vec<i64> = (0..n)
                .map(|i| {
                    if i < d {
                        rng.gen_range(-max_exp..=max_exp)
                    } else {
                        rng.gen_range(0..=max_exp)
                    }
                })
                .collect();
            let mut c = rng.gen_range(-max_coeff..=max_coeff);
            if c == 0 {
                c = 1;
            }
            (
                ring.domain().from_i64(c),
                ExponentVector::from_vec(e),
            )
        })
        .collect();
    MixedPoly::from_terms(ring, raw).expect("exponents respect the signature")
}

/// A random nonzero unit scalar of the domain.
pub fn random_unit_scalar<R: Rng>(ring: &Ring, rng: &mut R, max: i64) -> BigRational {
    let dom = ring.domain();
    loop {
        let c = if dom.is_field() {
            let num = rng.gen_range(-max..=max);
            let den = rng.gen_range(1..=max);
            match dom.coerce(&BigRational::new(num.into(), den.into())) {
                Ok(v) => v,
                Err(_) => continue,
            }
        } else if rng.gen_bool(0.5) {
            dom.from_i64(1)
        } else {
            dom.from_i64(-1)
        };
        if dom.is_unit(&c) {
            return c;
        }
    }
}
