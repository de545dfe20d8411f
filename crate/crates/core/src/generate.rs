//! Seeded random idempotent endomorphisms.
//!
//! A standard projection is conjugated by random automorphisms of `B`:
//! unimodular monomial maps with unit scalars on the Laurent block, scalings
//! of the polynomial variables, and triangular shifts
//! `x_j ↦ x_j + q(x_1..x_{j-1})`. Conjugates of idempotents are idempotent,
//! and the unit-lattice rank of the result equals the number of Laurent
//! variables kept by the projection.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{Coeff, DomainDescriptor};
use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::poly::MixedPoly;
use crate::problem::ProblemFile;
use crate::ring::{ExponentVector, Ring, RingSignature};
use crate::sample::random_unit_scalar;

/// Name of the random source, recorded in generated problem files.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub seed: u64,
    pub complexity: usize,
    pub domain: DomainDescriptor,
}

impl GeneratorSpec {
    pub fn new(n: usize, d: usize, r: usize, seed: u64, complexity: usize) -> Self {
        GeneratorSpec {
            n,
            d,
            r,
            seed,
            complexity,
            domain: DomainDescriptor::rationals(),
        }
    }

    pub fn with_domain(mut self, domain: DomainDescriptor) -> Self {
        self.domain = domain;
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.r > self.d || self.d > self.n {
            return Err(Error::InvalidSignature(format!(
                "need r <= d <= n, got r={}, d={}, n={}",
                self.r, self.d, self.n
            )));
        }
        Ok(())
    }
}

/// A unimodular `d×d` matrix built from random elementary column operations.
fn random_unimodular(rng: &mut ChaCha8Rng, d: usize, steps: usize) -> IntMatrix {
    let mut c = IntMatrix::identity(d);
    if d == 0 {
        return c;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..d);
        match rng.gen_range(0..4) {
            0 if d > 1 => {
                let mut j = rng.gen_range(0..d - 1);
                if j >= i {
                    j += 1;
                }
                let k = BigInt::from([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
                for row in 0..d {
                    let add = &c[(row, j)] * &k;
                    c[(row, i)] += add;
                }
            }
            1 => {
                for row in 0..d {
                    c[(row, i)] = -c[(row, i)].clone();
                }
            }
            2 if d > 1 => {
                let j = rng.gen_range(0..d);
                for row in 0..d {
                    let a = c[(row, i)].clone();
                    c[(row, i)] = c[(row, j)].clone();
                    c[(row, j)] = a;
                }
            }
            _ => {}
        }
    }
    c
}

fn laurent_monomial(ring: &Ring, coeff: Coeff, column: &[BigInt]) -> Result<MixedPoly> {
    let mut e = vec![0i64; ring.n()];
    for (slot, v) in e.iter_mut().zip(column) {
        *slot = i64::try_from(v).map_err(|_| Error::Dimension("exponent out of range".into()))?;
    }
    MixedPoly::monomial(ring, coeff, ExponentVector::from_vec(e))
}

/// `α: x_i ↦ μ_i·x^{C e_i}` on the Laurent block and `x_j ↦ ρ_j·x_j` on the
/// polynomial block, with its exact inverse.
fn random_monomial_automorphism(ring: &Ring, rng: &mut ChaCha8Rng, complexity: usize) -> Result<(Endomorphism, Endomorphism)> {
    let (n, d) = (ring.n(), ring.d());
    let dom = ring.domain().clone();
    let c = random_unimodular(rng, d, 1 + complexity.min(3));
    let c_inv = c.inverse_unimodular().expect("elementary operations are unimodular");
    let max = 1 + complexity.min(2) as i64;
    let mu: Vec<Coeff> = (0..d).map(|_| random_unit_scalar(ring, rng, max)).collect();
    let mut fwd = Vec::with_capacity(n);
    let mut inv = Vec::with_capacity(n);
    for i in 0..d {
        fwd.push(laurent_monomial(ring, mu[i].clone(), &c.column(i))?);
        // ν_i = ∏_j μ_j^{-(C⁻¹)_{ji}} makes α(α⁻¹(x_i)) = x_i.
        let col = c_inv.column(i);
        let mut nu = dom.one();
        for (j, e) in col.iter().enumerate() {
            let e = i64::try_from(e).map_err(|_| Error::Dimension("exponent out of range".into()))?;
            nu = dom.mul(&nu, &dom.pow(&mu[j], -e).expect("unit scalar"));
        }
        inv.push(laurent_monomial(ring, nu, &col)?);
    }
    for j in d..n {
        let rho = random_unit_scalar(ring, rng, max);
        let rho_inv = dom.inv(&rho).expect("unit scalar");
        fwd.push(MixedPoly::var(ring, j).scale(&rho));
        inv.push(MixedPoly::var(ring, j).scale(&rho_inv));
    }
    Ok((Endomorphism::new(ring, fwd)?, Endomorphism::new(ring, inv)?))
}

/// `x_j ↦ x_j + q` with `q` in the variables before `x_j`, and its inverse.
fn random_shift(ring: &Ring, rng: &mut ChaCha8Rng, complexity: usize) -> Result<(Endomorphism, Endomorphism)> {
    let (n, d) = (ring.n(), ring.d());
    let j = rng.gen_range(d..n);
    let terms = rng.gen_range(1..=1 + complexity.min(2));
    let max_coeff = 1 + complexity.min(2) as i64;
    let raw: Vec<(Coeff, ExponentVector)> = (0..terms)
        .map(|_| {
            let e: Vec<i64> = (0..n)
                .map(|i| match i {
                    _ if i >= j => 0,
                    _ if i < d => rng.gen_range(-1..=1),
                    _ => rng.gen_range(0..=1),
                })
                .collect();
            let mut c = rng.gen_range(-max_coeff..=max_coeff);
            if c == 0 {
                c = 1;
            }
            (ring.domain().from_i64(c), ExponentVector::from_vec(e))
        })
        .collect();
    let q = MixedPoly::from_terms(ring, raw)?;
    let mut fwd = Endomorphism::identity(ring).images().to_vec();
    let mut inv = fwd.clone();
    fwd[j] = &fwd[j] + &q;
    inv[j] = &inv[j] - &q;
    Ok((Endomorphism::new(ring, fwd)?, Endomorphism::new(ring, inv)?))
}

/// A random idempotent endomorphism of unit-lattice rank `spec.r`,
/// determined by the spec.
pub fn gen_random_idempotent(spec: &GeneratorSpec) -> Result<Endomorphism> {
    spec.check()?;
    let ring = RingSignature::standard(spec.domain.clone(), spec.n, spec.d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let keep_laurent = sample(&mut rng, spec.d, spec.r).into_vec();
    let keep_poly: Vec<usize> = (spec.d..spec.n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut phi = Endomorphism::standard_projection(&ring, &keep_laurent, &keep_poly);
    for _ in 0..spec.complexity {
        if spec.d > 0 {
            let (a, a_inv) = random_monomial_automorphism(&ring, &mut rng, spec.complexity)?;
            phi = phi.conjugate(&a, &a_inv)?;
        }
        if spec.n > spec.d {
            let (a, a_inv) = random_shift(&ring, &mut rng, spec.complexity)?;
            phi = phi.conjugate(&a, &a_inv)?;
        }
    }
    Ok(phi)
}

/// The generated instance as a problem file whose header comment records
/// the random source and the spec.
pub fn gen_problem_file(spec: &GeneratorSpec) -> Result<ProblemFile> {
    let phi = gen_random_idempotent(spec)?;
    let mut pf = ProblemFile::new(phi);
    pf.comments.push(format!(
        "generated rng={RNG_ALGORITHM} seed={} n={} d={} r={} complexity={} domain={}",
        spec.seed,
        spec.n,
        spec.d,
        spec.r,
        spec.complexity,
        spec.domain.name()
    ));
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;
    use crate::retract::analyze;

    #[test]
    fn complexity_zero_is_a_standard_projection() {
        for seed in 0..10 {
            let phi = gen_random_idempotent(&GeneratorSpec::new(4, 2, 1, seed, 0)).unwrap();
            for (i, img) in phi.images().iter().enumerate() {
                let x = MixedPoly::var(phi.ring(), i);
                assert!(img == &x || img.is_one() || img.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_pure_is_identity() {
        for seed in 0..10 {
            let phi = gen_random_idempotent(&GeneratorSpec::new(2, 2, 2, seed, 3)).unwrap();
            assert!(phi.is_identity());
        }
    }

    #[test]
    fn hand_conjugation_example() {
        let ring = RingSignature::standard(DomainDescriptor::rationals(), 2, 2).unwrap();
        let x = |i| MixedPoly::var(&ring, i);
        let pi = Endomorphism::standard_projection(&ring, &[0], &[]);
        let alpha = Endomorphism::new(&ring, vec![x(0), &x(0).pow(2).unwrap() * &x(1)]).unwrap();
        let alpha_inv = Endomorphism::new(&ring, vec![x(0), &x(0).pow(-2).unwrap() * &x(1)]).unwrap();
        let phi = pi.conjugate(&alpha, &alpha_inv).unwrap();
        assert_eq!(phi.image(0), &x(0));
        assert_eq!(phi.image(1), &x(0).pow(-2).unwrap());
    }

    #[test]
    fn generated_maps_are_idempotent_with_requested_rank() {
        for seed in 0..40 {
            let n = 1 + (seed as usize % 4);
            let d = seed as usize % (n + 1);
            let r = (seed as usize / 3) % (d + 1);
            let spec = GeneratorSpec::new(n, d, r, seed, 1 + seed as usize % 3);
            let phi = gen_random_idempotent(&spec).unwrap();
            assert!(phi.is_idempotent(), "{spec:?}\n{phi}");
            assert_eq!(analyze(&phi).unwrap().r, r);
        }
    }

    #[test]
    fn prime_field_and_integers() {
        for seed in 0..10 {
            let spec = GeneratorSpec::new(3, 2, 1, seed, 2)
                .with_domain(DomainDescriptor::prime_field(5).unwrap());
            assert!(gen_random_idempotent(&spec).unwrap().is_idempotent());
            let spec = GeneratorSpec::new(3, 2, 1, seed, 2).with_domain(DomainDescriptor::integers());
            assert!(gen_random_idempotent(&spec).unwrap().is_idempotent());
        }
    }

    #[test]
    fn deterministic_files() {
        let spec = GeneratorSpec::new(4, 2, 1, 99, 3);
        let a = gen_problem_file(&spec).unwrap().to_string();
        let b = gen_problem_file(&spec).unwrap().to_string();
        assert_eq!(a, b);
        assert!(a.starts_with("# generated rng=ChaCha8Rng seed=99 n=4 d=2 r=1 complexity=3 domain=QQ\n"));
        let back = parse_problem(&a).unwrap();
        assert_eq!(back.endomorphism, gen_random_idempotent(&spec).unwrap());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(gen_random_idempotent(&GeneratorSpec::new(2, 3, 0, 0, 0)).is_err());
        assert!(gen_random_idempotent(&GeneratorSpec::new(2, 1, 2, 0, 0)).is_err());
    }
}
