//! Exact coefficient domains: the rationals, the integers and prime fields.
//!
//! Every coefficient is stored as a [`BigRational`]. Over the integers the
//! denominator is always one; over `GF(p)` the value is the least nonnegative
//! residue. All arithmetic goes through a [`DomainDescriptor`] so results stay
//! in canonical form for the domain.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A coefficient value. Canonical form depends on the domain it belongs to.
pub type Coeff = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DomainKind {
    Rationals,
    Integers,
    PrimeField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainDescriptor {
    kind: DomainKind,
    characteristic: u64,
    is_field: bool,
    is_ufd: bool,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl DomainDescriptor {
    pub fn rationals() -> Self {
        DomainDescriptor {
            kind: DomainKind::Rationals,
            characteristic: 0,
            is_field: true,
            is_ufd: true,
        }
    }

    pub fn integers() -> Self {
        DomainDescriptor {
            kind: DomainKind::Integers,
            characteristic: 0,
            is_field: false,
            is_ufd: true,
        }
    }

    /// `GF(p)`; `p` is checked for primality by trial division.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(DomainDescriptor {
            kind: DomainKind::PrimeField(p),
            characteristic: p,
            is_field: true,
            is_ufd: true,
        })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }

    pub fn is_ufd(&self) -> bool {
        self.is_ufd
    }

    /// Name used by the problem-file grammar: `QQ`, `ZZ` or `GF(p)`.
    pub fn name(&self) -> String {
        match self.kind {
            DomainKind::Rationals => "QQ".to_string(),
            DomainKind::Integers => "ZZ".to_string(),
            DomainKind::PrimeField(p) => format!("GF({p})"),
        }
    }

    fn modulus(&self) -> Option<BigInt> {
        match self.kind {
            DomainKind::PrimeField(p) => Some(BigInt::from(p)),
            _ => None,
        }
    }

    /// Brings an arbitrary rational into canonical form for this domain.
    ///
    /// Over `ZZ` a non-integer is rejected; over `GF(p)` a denominator
    /// divisible by `p` is rejected.
    pub fn coerce(&self, c: &BigRational) -> Result<Coeff> {
        match self.kind {
            DomainKind::Rationals => Ok(c.clone()),
            DomainKind::Integers => {
                if c.is_integer() {
                    Ok(c.clone())
                } else {
                    Err(Error::NotInDomain {
                        value: c.to_string(),
                        domain: self.name(),
                    })
                }
            }
            DomainKind::PrimeField(_) => {
                let p = self.modulus().unwrap();
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::NotInDomain {
                        value: c.to_string(),
                        domain: self.name(),
                    });
                }
                let inv = mod_inverse(&den, &p);
                let num = (c.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(num))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.reduce(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    // Only valid for values already known to lie in the domain (or its
    // integer subring, for GF(p)).
    fn reduce(&self, c: BigRational) -> Coeff {
        match self.modulus() {
            Some(p) if c.is_integer() => BigRational::from_integer(c.numer().mod_floor(&p)),
            Some(_) => self.coerce(&c).expect("coefficient outside prime field"),
            None => c,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    /// True iff `c` lies in the unit group of the domain.
    pub fn is_unit(&self, c: &Coeff) -> bool {
        match self.kind {
            DomainKind::Integers => c.is_integer() && c.numer().abs().is_one(),
            _ => !c.is_zero(),
        }
    }

    pub fn inv(&self, c: &Coeff) -> Option<Coeff> {
        if !self.is_unit(c) {
            return None;
        }
        match self.kind {
            DomainKind::PrimeField(_) => {
                let p = self.modulus().unwrap();
                Some(BigRational::from_integer(mod_inverse(c.numer(), &p)))
            }
            _ => Some(c.recip()),
        }
    }

    /// Exact quotient `a / b`, if it exists in the domain.
    pub fn div(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if b.is_zero() {
            return None;
        }
        match self.kind {
            DomainKind::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| BigRational::from_integer(q))
            }
            DomainKind::Rationals => Some(a / b),
            DomainKind::PrimeField(_) => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    /// `c^e`; negative exponents require `c` to be a unit.
    pub fn pow(&self, c: &Coeff, e: i64) -> Option<Coeff> {
        let base = if e < 0 { self.inv(c)? } else { c.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    /// Multiplies a coefficient by a natural number, as in `e * c` for the
    /// power rule of differentiation.
    pub fn scale_int(&self, c: &Coeff, k: i64) -> Coeff {
        self.reduce(c * BigRational::from_integer(BigInt::from(k)))
    }
}

impl fmt::Display for DomainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

impl std::str::FromStr for DomainDescriptor {
    type Err = Error;

    /// Accepts `QQ`, `ZZ` and `GF(p)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "QQ" => Ok(Self::rationals()),
            "ZZ" => Ok(Self::integers()),
            _ => {
                let p = s
                    .strip_prefix("GF(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .and_then(|p| p.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidSignature(format!("unknown domain {s}")))?;
                Self::prime_field(p)
            }
        }
    }
}

/// Canonical text form: integers as-is, rationals as `a/b` in lowest terms
/// with positive denominator.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Converts a coefficient to `f64`-free integer if it is a small integer.
pub fn coeff_to_i64(c: &Coeff) -> Option<i64> {
    if c.is_integer() {
        c.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_names_parse() {
        assert_eq!("QQ".parse::<DomainDescriptor>().unwrap(), DomainDescriptor::rationals());
        assert_eq!("GF(7)".parse::<DomainDescriptor>().unwrap().name(), "GF(7)");
        assert_eq!("GF(9)".parse::<DomainDescriptor>(), Err(Error::NotPrime(9)));
        assert!("RR".parse::<DomainDescriptor>().is_err());
    }

    fn q(n: i64, d: i64) -> Coeff {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn unit_recognition() {
        let zz = DomainDescriptor::integers();
        let qq = DomainDescriptor::rationals();
        assert!(zz.is_unit(&q(1, 1)));
        assert!(zz.is_unit(&q(-1, 1)));
        assert!(!zz.is_unit(&q(2, 1)));
        assert!(qq.is_unit(&q(2, 3)));
        assert!(!qq.is_unit(&q(0, 1)));
        let f5 = DomainDescriptor::prime_field(5).unwrap();
        assert!(f5.is_unit(&q(3, 1)));
        assert!(!f5.is_unit(&f5.from_i64(10)));
    }

    #[test]
    fn prime_field_construction() {
        assert!(DomainDescriptor::prime_field(7).is_ok());
        assert!(matches!(DomainDescriptor::prime_field(9), Err(Error::NotPrime(9))));
        assert!(DomainDescriptor::prime_field(1).is_err());
        let f = DomainDescriptor::prime_field(2).unwrap();
        assert!(f.is_field() && f.is_ufd());
        assert_eq!(f.characteristic(), 2);
        let z = DomainDescriptor::integers();
        assert!(!z.is_field() && z.is_ufd());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = DomainDescriptor::prime_field(5).unwrap();
        assert_eq!(f.from_i64(-1), q(4, 1));
        assert_eq!(f.coerce(&q(1, 3)).unwrap(), q(2, 1));
        assert_eq!(f.inv(&q(2, 1)).unwrap(), q(3, 1));
        assert!(f.coerce(&q(1, 5)).is_err());
        assert_eq!(f.pow(&q(2, 1), -1).unwrap(), q(3, 1));
        assert_eq!(f.pow(&q(2, 1), 4).unwrap(), q(1, 1));
    }

    #[test]
    fn integer_division_is_exact_only() {
        let z = DomainDescriptor::integers();
        assert_eq!(z.div(&q(6, 1), &q(3, 1)), Some(q(2, 1)));
        assert_eq!(z.div(&q(6, 1), &q(4, 1)), None);
        assert!(z.coerce(&q(1, 2)).is_err());
        assert_eq!(z.inv(&q(-1, 1)), Some(q(-1, 1)));
        assert_eq!(z.inv(&q(2, 1)), None);
    }

    #[test]
    fn coefficient_printing() {
        assert_eq!(format_coeff(&q(-2, 4)), "-1/2");
        assert_eq!(format_coeff(&q(6, 3)), "2");
    }
}
