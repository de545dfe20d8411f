//! `R`-algebra endomorphisms of `B`, given by the images of the variables.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::domain::{Coeff, DomainDescriptor};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::poly::MixedPoly;
use crate::ring::{ExponentVector, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    ring: Ring,
    images: Vec<MixedPoly>,
}

/// The action of a valid endomorphism on the unit lattice: column `i` of `m`
/// is the Laurent exponent of `φ(x_i)` and `lambdas[i]` its scalar, so that
/// `φ(x_i) = λ_i·x^{M e_i}` for `i < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialData {
    pub m: IntMatrix,
    pub lambdas: Vec<Coeff>,
}

impl MonomialData {
    /// Idempotency of the monomial map `x_i ↦ λ_i·x^{M e_i}` read off the
    /// data: `M² = M` and `∏_j λ_j^{M_{ji}} = 1` for every `i`.
    pub fn is_idempotent(&self, domain: &DomainDescriptor) -> bool {
        if !crate::lattice::mat_is_idempotent(&self.m).unwrap_or(false) {
            return false;
        }
        let d = self.lambdas.len();
        (0..d).all(|i| {
            let mut acc = domain.one();
            for (j, lambda) in self.lambdas.iter().enumerate() {
                let Some(e) = self.m[(j, i)].to_i64() else {
                    return false;
                };
                match domain.pow(lambda, e) {
                    Some(f) => acc = domain.mul(&acc, &f),
                    None => return false,
                }
            }
            acc == domain.one()
        })
    }
}

/// First variable on which `φ∘φ` and `φ` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotencyDefect {
    pub variable: usize,
    pub phi_squared: MixedPoly,
    pub phi: MixedPoly,
}

impl Endomorphism {
    /// Images must live in `ring`, one per variable. Unit constraints on the
    /// Laurent block are checked by [`Endomorphism::validate`].
    pub fn new(ring: &Ring, images: Vec<MixedPoly>) -> Result<Self> {
        if images.len() != ring.n() {
            return Err(Error::Arity {
                expected: ring.n(),
                got: images.len(),
            });
        }
        if images.iter().any(|p| p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Endomorphism {
            ring: ring.clone(),
            images,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        Endomorphism {
            ring: ring.clone(),
            images: (0..ring.n()).map(|i| MixedPoly::var(ring, i)).collect(),
        }
    }

    /// Keeps the listed variables (zero-based indices); other Laurent
    /// variables go to 1 and other polynomial variables to 0.
    pub fn standard_projection(ring: &Ring, keep_laurent: &[usize], keep_poly: &[usize]) -> Self {
        let images = (0..ring.n())
            .map(|i| {
                let kept = if ring.is_laurent(i) {
                    keep_laurent.contains(&i)
                } else {
                    keep_poly.contains(&i)
                };
                if kept {
                    MixedPoly::var(ring, i)
                } else if ring.is_laurent(i) {
                    MixedPoly::one(ring)
                } else {
                    MixedPoly::zero(ring)
                }
            })
            .collect();
        Endomorphism {
            ring: ring.clone(),
            images,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn images(&self) -> &[MixedPoly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &MixedPoly {
        &self.images[i]
    }

    /// True iff every Laurent variable maps to a unit.
    pub fn validate(&self) -> bool {
        self.check_valid().is_ok()
    }

    pub fn check_valid(&self) -> Result<()> {
        for i in 0..self.ring.d() {
            if self.images[i].is_unit().is_none() {
                return Err(Error::InvalidEndomorphism {
                    variable: self.ring.name(i).to_string(),
                    image: self.images[i].to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn apply(&self, p: &MixedPoly) -> Result<MixedPoly> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        p.substitute(&self.ring, &self.images)
    }

    /// `self ∘ other`: `x_i ↦ self(other(x_i))`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism {
            ring: self.ring.clone(),
            images,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| *p == MixedPoly::var(&self.ring, i))
    }

    pub fn idempotency_defect(&self) -> Result<Option<IdempotencyDefect>> {
        let sq = self.compose(self)?;
        Ok(sq
            .images
            .into_iter()
            .zip(&self.images)
            .enumerate()
            .find(|(_, (a, b))| a != *b)
            .map(|(variable, (phi_squared, phi))| IdempotencyDefect {
                variable,
                phi_squared,
                phi: phi.clone(),
            }))
    }

    /// Decided by full symbolic composition.
    pub fn is_idempotent(&self) -> bool {
        self.check_valid().is_ok() && matches!(self.idempotency_defect(), Ok(None))
    }

    /// Validity plus idempotency, reporting the first offending variable.
    pub fn require_idempotent(&self) -> Result<()> {
        self.check_valid()?;
        match self.idempotency_defect()? {
            None => Ok(()),
            Some(defect) => Err(Error::NotIdempotent {
                variable: self.ring.name(defect.variable).to_string(),
                phi_squared: defect.phi_squared.to_string(),
                phi: defect.phi.to_string(),
            }),
        }
    }

    pub fn monomial_part(&self) -> Result<MonomialData> {
        self.check_valid()?;
        let d = self.ring.d();
        let mut m = IntMatrix::zeros(d, d);
        let mut lambdas = Vec::with_capacity(d);
        for i in 0..d {
            let (lambda, e) = self.images[i].is_unit().expect("validated");
            for (j, &v) in e.entries()[..d].iter().enumerate() {
                m[(j, i)] = BigInt::from(v);
            }
            lambdas.push(lambda);
        }
        Ok(MonomialData { m, lambdas })
    }

    /// `α ∘ self ∘ α⁻¹`, given a two-sided inverse.
    pub fn conjugate(&self, alpha: &Endomorphism, alpha_inv: &Endomorphism) -> Result<Endomorphism> {
        self.check_valid()?;
        if !alpha.compose(alpha_inv)?.is_identity() || !alpha_inv.compose(alpha)?.is_identity() {
            return Err(Error::NotInverse);
        }
        let out = alpha.compose(&self.compose(alpha_inv)?)?;
        debug_assert_eq!(out.is_idempotent(), self.is_idempotent());
        Ok(out)
    }

    /// The same map on a ring with `m` extra Laurent variables (named
    /// `prefix1..prefixm`, inserted after the existing Laurent block), each
    /// fixed.
    pub fn extend_fixing_fresh_laurent(&self, m: usize, prefix: &str) -> Result<Endomorphism> {
        let (n, d) = (self.ring.n(), self.ring.d());
        let mut names: Vec<String> = self.ring.names()[..d].to_vec();
        let mut k = 1;
        while names.len() < d + m {
            let name = format!("{prefix}{k}");
            k += 1;
            if self.ring.index_of(&name).is_none() {
                names.push(name);
            }
        }
        names.extend_from_slice(&self.ring.names()[d..]);
        let target = crate::ring::RingSignature::new(self.ring.domain().clone(), names, d + m)?;
        let index: Vec<usize> = (0..n).map(|i| if i < d { i } else { i + m }).collect();
        let embed = |p: &MixedPoly| -> Result<MixedPoly> {
            MixedPoly::from_terms(
                &target,
                p.terms().iter().map(|t| {
                    let mut e = vec![0; n + m];
                    for (i, &v) in t.exp.entries().iter().enumerate() {
                        e[index[i]] = v;
                    }
                    (t.coeff.clone(), ExponentVector::from_vec(e))
                }),
            )
        };
        let mut images = Vec::with_capacity(n + m);
        for i in 0..d {
            images.push(embed(&self.images[i])?);
        }
        for j in 0..m {
            images.push(MixedPoly::var(&target, d + j));
        }
        for i in d..n {
            images.push(embed(&self.images[i])?);
        }
        Endomorphism::new(&target, images)
    }
}

impl fmt::Display for Endomorphism {
    /// One `v -> image` line per variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", self.ring.name(i), p)?;
        }
        Ok(())
    }
}
