//! Elements of `R[x1^±,…,xd^±, x_{d+1},…,xn]` in canonical sparse form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::domain::{format_coeff, Coeff};
use crate::error::{Error, Result};
use crate::ring::{ExponentVector, Ring, RingSignature};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub exp: ExponentVector,
}

/// A mixed Laurent polynomial.
///
/// Terms are kept sorted in strictly decreasing graded-lex order with no
/// zero coefficients, so two values are equal exactly when their term lists
/// are. The zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct MixedPoly {
    ring: Ring,
    terms: Vec<Term>,
}

fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for MixedPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MixedPoly {}

impl MixedPoly {
    pub fn zero(ring: &Ring) -> Self {
        MixedPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Coeff::one())
    }

    /// A constant; the value must already be canonical for the domain.
    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term {
                coeff: c,
                exp: ExponentVector::zero(ring.n()),
            }]
        };
        MixedPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Self {
        Self::constant(ring, ring.domain().from_i64(v))
    }

    /// The variable `x_{i+1}` (indices are zero based).
    pub fn var(ring: &Ring, i: usize) -> Self {
        MixedPoly {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: Coeff::one(),
                exp: ExponentVector::unit(ring.n(), i),
            }],
        }
    }

    pub fn monomial(ring: &Ring, coeff: Coeff, exp: ExponentVector) -> Result<Self> {
        Self::from_terms(ring, [(coeff, exp)])
    }

    /// Builds the canonical form of an arbitrary list of terms: coefficients
    /// are coerced into the domain, equal exponents merged, zeros dropped.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coeff, ExponentVector)>,
    {
        let dom = ring.domain();
        let mut acc: BTreeMap<ExponentVector, Coeff> = BTreeMap::new();
        for (c, e) in terms {
            e.check(ring)?;
            let c = dom.coerce(&c)?;
            match acc.get_mut(&e) {
                Some(v) => *v = dom.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: BTreeMap<ExponentVector, Coeff>) -> Self {
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        MixedPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if this is a constant (zero included).
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [t] if t.exp.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// True iff some term has a nonzero exponent on a polynomial variable.
    pub fn involves_polynomial_variables(&self) -> bool {
        let d = self.ring.d();
        self.terms
            .iter()
            .any(|t| t.exp.entries()[d..].iter().any(|&e| e != 0))
    }

    /// Reinterprets the same terms over another ring with the same shape.
    pub fn with_ring(&self, ring: &Ring) -> Result<Self> {
        if ring.n() != self.ring.n() || ring.d() != self.ring.d() {
            return Err(Error::RingMismatch);
        }
        Self::from_terms(ring, self.terms.iter().map(|t| (t.coeff.clone(), t.exp.clone())))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let dom = self.ring.domain();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Coeff| if negate { dom.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.exp.cmp(&b.exp) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(Term {
                        coeff: rhs(&b.coeff),
                        exp: b.exp.clone(),
                    });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = dom.add(&a.coeff, &rhs(&b.coeff));
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            exp: a.exp.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|t| Term {
            coeff: rhs(&t.coeff),
            exp: t.exp.clone(),
        }));
        MixedPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        let dom = self.ring.domain();
        let mut acc: BTreeMap<ExponentVector, Coeff> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exp.add(&b.exp);
                let c = dom.mul(&a.coeff, &b.coeff);
                match acc.get_mut(&e) {
                    Some(v) => *v = dom.add(v, &c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let out = Self::from_map(&self.ring, acc);
        debug_assert!(
            self.is_zero() || other.is_zero() || !out.is_zero(),
            "zero divisor in a domain"
        );
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let dom = self.ring.domain();
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let v = dom.mul(&t.coeff, c);
                (!v.is_zero()).then(|| Term {
                    coeff: v,
                    exp: t.exp.clone(),
                })
            })
            .collect();
        MixedPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Multiplies by the monomial `c * x^e` (`e` may be any Laurent shift
    /// that keeps the polynomial block nonnegative).
    pub fn shift(&self, c: &Coeff, e: &ExponentVector) -> Self {
        let dom = self.ring.domain();
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let v = dom.mul(&t.coeff, c);
                (!v.is_zero()).then(|| Term {
                    coeff: v,
                    exp: t.exp.add(e),
                })
            })
            .collect();
        MixedPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self^k`; negative powers only for units.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert_unit()?.pow(-k);
        }
        let mut exp = k as u64;
        if let [t] = self.terms.as_slice() {
            let dom = self.ring.domain();
            let c = dom.pow(&t.coeff, k).expect("nonnegative power");
            return Ok(MixedPoly {
                ring: self.ring.clone(),
                terms: if c.is_zero() {
                    Vec::new()
                } else {
                    vec![Term {
                        coeff: c,
                        exp: t.exp.scale(k),
                    }]
                },
            });
        }
        let mut acc = Self::one(&self.ring);
        let mut sq = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.product(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.product(&sq);
            }
        }
        Ok(acc)
    }

    /// If this is a unit `λ·x^e` of the ring (λ a unit scalar, `e`
    /// supported on the Laurent block), returns `(λ, e)`.
    pub fn is_unit(&self) -> Option<(Coeff, ExponentVector)> {
        match self.terms.as_slice() {
            [t] if self.ring.domain().is_unit(&t.coeff)
                && t.exp.entries()[self.ring.d()..].iter().all(|&e| e == 0) =>
            {
                Some((t.coeff.clone(), t.exp.clone()))
            }
            _ => None,
        }
    }

    pub fn invert_unit(&self) -> Result<Self> {
        let (c, e) = self.is_unit().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let inv = self.ring.domain().inv(&c).expect("unit scalar");
        Ok(MixedPoly {
            ring: self.ring.clone(),
            terms: vec![Term {
                coeff: inv,
                exp: e.neg(),
            }],
        })
    }

    /// Applies the ring homomorphism `x_i ↦ images[i]` into `target`.
    pub fn substitute(&self, target: &Ring, images: &[MixedPoly]) -> Result<Self> {
        let n = self.ring.n();
        if images.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: images.len(),
            });
        }
        if images.iter().any(|p| !same_ring(&p.ring, target)) {
            return Err(Error::RingMismatch);
        }
        if target.domain() != self.ring.domain() {
            return Err(Error::RingMismatch);
        }
        let mut cache: Vec<HashMap<i64, MixedPoly>> = vec![HashMap::new(); n];
        let mut inverses: Vec<Option<MixedPoly>> = vec![None; n];
        let mut out = Self::zero(target);
        for t in &self.terms {
            let mut acc = Self::constant(target, t.coeff.clone());
            for (i, &e) in t.exp.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache[i].contains_key(&e) {
                    let p = if e > 0 {
                        images[i].pow(e)?
                    } else {
                        if inverses[i].is_none() {
                            let inv = images[i].invert_unit().map_err(|_| Error::NonUnitImage {
                                variable: self.ring.name(i).to_string(),
                                image: images[i].to_string(),
                            })?;
                            inverses[i] = Some(inv);
                        }
                        inverses[i].as_ref().unwrap().pow(-e)?
                    };
                    cache[i].insert(e, p);
                }
                acc = acc.product(&cache[i][&e]);
            }
            out = out.merge(&acc, false);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `x_{i+1}`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let dom = self.ring.domain();
        let mut acc = BTreeMap::new();
        for t in &self.terms {
            let e = t.exp.entries()[i];
            if e == 0 {
                continue;
            }
            let c = dom.scale_int(&t.coeff, e);
            if c.is_zero() {
                continue;
            }
            let mut exp = t.exp.entries().to_vec();
            exp[i] -= 1;
            acc.insert(ExponentVector::from_vec(exp), c);
        }
        Self::from_map(&self.ring, acc)
    }

    /// Exact value at a point; Laurent coordinates with negative exponents
    /// must be nonzero.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        let n = self.ring.n();
        if point.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: point.len(),
            });
        }
        let dom = self.ring.domain();
        let point: Vec<Coeff> = point.iter().map(|c| dom.coerce(c)).collect::<Result<_>>()?;
        let mut sum = Coeff::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.exp.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = dom
                    .pow(&point[i], e)
                    .ok_or_else(|| Error::Pole(self.ring.name(i).to_string()))?;
                v = dom.mul(&v, &p);
            }
            sum = dom.add(&sum, &v);
        }
        Ok(sum)
    }

    fn exponent_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.ring.n();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for t in &self.terms {
            for (k, &e) in t.exp.entries().iter().enumerate() {
                lo[k] = lo[k].min(e);
                hi[k] = hi[k].max(e);
            }
        }
        (lo, hi)
    }

    /// Exact quotient `self / divisor` in the ring, or `None` when the
    /// division does not come out exactly.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || !same_ring(&self.ring, &divisor.ring) {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let dom = self.ring.domain();
        // Per-variable exponent ranges are additive under multiplication in
        // a domain, which bounds every quotient exponent.
        let (plo, phi) = self.exponent_bounds();
        let (qlo, qhi) = divisor.exponent_bounds();
        let lead = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some(t) = rem.leading_term() {
            let e = t.exp.sub(&lead.exp);
            let in_box = e
                .entries()
                .iter()
                .enumerate()
                .all(|(k, &v)| v >= plo[k] - qlo[k] && v <= phi[k] - qhi[k]);
            if !in_box || e.check(&self.ring).is_err() {
                return None;
            }
            let c = dom.div(&t.coeff, &lead.coeff)?;
            rem = rem.merge(&divisor.shift(&c, &e), true);
            quot.insert(e, c);
        }
        Some(Self::from_map(&self.ring, quot))
    }

    /// Text of the monomial `x^e` with this ring's variable names.
    pub fn format_monomial(ring: &RingSignature, e: &ExponentVector) -> String {
        let parts: Vec<String> = e
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| {
                if k == 1 {
                    ring.name(i).to_string()
                } else {
                    format!("{}^{}", ring.name(i), k)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let body = if t.exp.is_zero() {
                format_coeff(&t.coeff)
            } else {
                let mono = Self::format_monomial(&self.ring, &t.exp);
                if t.coeff.is_one() {
                    mono
                } else if (-&t.coeff).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{}*{}", format_coeff(&t.coeff), mono)
                }
            };
            match (k, body.strip_prefix('-')) {
                (0, _) => f.write_str(&body)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched rings; use the `try_*` methods when the
// operands are not known to share a ring.
impl Add for &MixedPoly {
    type Output = MixedPoly;
    fn add(self, rhs: &MixedPoly) -> MixedPoly {
        self.try_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for &MixedPoly {
    type Output = MixedPoly;
    fn sub(self, rhs: &MixedPoly) -> MixedPoly {
        self.try_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for &MixedPoly {
    type Output = MixedPoly;
    fn mul(self, rhs: &MixedPoly) -> MixedPoly {
        self.try_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &MixedPoly {
    type Output = MixedPoly;
    fn neg(self) -> MixedPoly {
        let dom = self.ring.domain();
        MixedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: dom.neg(&t.coeff),
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainDescriptor;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> Coeff {
        BigRational::new(n.into(), d.into())
    }

    fn ring(n: usize, d: usize) -> Ring {
        RingSignature::standard(DomainDescriptor::rationals(), n, d).unwrap()
    }

    fn mono(r: &Ring, c: Coeff, e: &[i64]) -> MixedPoly {
        MixedPoly::monomial(r, c, ExponentVector::from_vec(e.to_vec())).unwrap()
    }

    #[test]
    fn addition_examples() {
        let r = ring(1, 1);
        let x = MixedPoly::var(&r, 0);
        assert!((&x + &(-&x)).is_zero());
        let one = MixedPoly::one(&r);
        assert_eq!((&(&x + &one) + &x).to_string(), "2*x1 + 1");
        let xi = x.invert_unit().unwrap();
        let s = &xi + &x;
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "x1 + x1^-1");
    }

    #[test]
    fn multiplication_examples() {
        let r = ring(1, 1);
        let x = MixedPoly::var(&r, 0);
        let xi = x.invert_unit().unwrap();
        assert!((&x * &xi).is_one());
        let s = &x + &xi;
        let sq = &s * &s;
        // (x + 1/x)^2 = x^2 + 2 + x^-2
        let expect = &(&mono(&r, q(1, 1), &[2]) + &MixedPoly::from_i64(&r, 2)) + &mono(&r, q(1, 1), &[-2]);
        assert_eq!(sq, expect);
        assert_eq!(sq.to_string(), "x1^2 + 2 + x1^-2");
        assert!((&MixedPoly::zero(&r) * &s).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = MixedPoly::var(&ring(1, 1), 0);
        let b = MixedPoly::var(&ring(1, 0), 0);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn unit_detection() {
        let r = ring(2, 2);
        let u = mono(&r, q(3, 1), &[-2, 1]);
        assert_eq!(u.is_unit(), Some((q(3, 1), ExponentVector::from_vec(vec![-2, 1]))));
        let r1 = ring(1, 1);
        let x = MixedPoly::var(&r1, 0);
        assert!((&x + &MixedPoly::one(&r1)).is_unit().is_none());
        let mixed = ring(2, 1);
        assert!(MixedPoly::var(&mixed, 1).is_unit().is_none());
        assert!(MixedPoly::zero(&mixed).is_unit().is_none());
        let zz = RingSignature::standard(DomainDescriptor::integers(), 1, 1).unwrap();
        assert!(MixedPoly::from_i64(&zz, 2).is_unit().is_none());
    }

    #[test]
    fn unit_inversion() {
        let r = ring(1, 1);
        let x = MixedPoly::var(&r, 0);
        assert_eq!(x.invert_unit().unwrap().to_string(), "x1^-1");
        let three_x = x.scale(&q(3, 1));
        assert_eq!(three_x.invert_unit().unwrap().to_string(), "1/3*x1^-1");
        let zz = RingSignature::standard(DomainDescriptor::integers(), 2, 2).unwrap();
        let u = mono(&zz, q(-1, 1), &[1, -1]);
        assert_eq!(u.invert_unit().unwrap().to_string(), "-x1^-1*x2");
        assert!(matches!(
            (&x + &MixedPoly::one(&r)).invert_unit(),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let r = ring(2, 1);
        let x1 = MixedPoly::var(&r, 0);
        let x2 = MixedPoly::var(&r, 1);
        let s = &x1 + &x1.invert_unit().unwrap();
        let p = x2.pow(2).unwrap();
        let img = p.substitute(&r, &[x1.clone(), s]).unwrap();
        assert_eq!(img.to_string(), "x1^2 + 2 + x1^-2");
        let q2 = &(&p + &x1) * &x2;
        assert_eq!(q2.substitute(&r, &[x1.clone(), x2.clone()]).unwrap(), q2);

        let l = ring(2, 2);
        let y1 = MixedPoly::var(&l, 0);
        let y2 = MixedPoly::var(&l, 1);
        let inv = y1.invert_unit().unwrap();
        let out = inv.substitute(&l, &[&y1 * &y2, y2.clone()]).unwrap();
        assert_eq!(out.to_string(), "x1^-1*x2^-1");
    }

    #[test]
    fn substitution_needs_unit_for_negative_power() {
        let r = ring(1, 1);
        let x = MixedPoly::var(&r, 0);
        let err = x
            .invert_unit()
            .unwrap()
            .substitute(&r, &[&x + &MixedPoly::one(&r)])
            .unwrap_err();
        assert!(matches!(err, Error::NonUnitImage { .. }));
    }

    #[test]
    fn derivative_examples() {
        let r = ring(2, 1);
        let x1 = MixedPoly::var(&r, 0);
        let x2 = MixedPoly::var(&r, 1);
        assert_eq!(x1.invert_unit().unwrap().partial_derivative(0).to_string(), "-x1^-2");
        assert_eq!((&x1 * &x2).partial_derivative(1), x1);
        let l = ring(1, 1);
        let y = MixedPoly::var(&l, 0);
        let s = &y + &y.invert_unit().unwrap();
        let sq = &s * &s;
        assert_eq!(sq.partial_derivative(0).to_string(), "2*x1 - 2*x1^-3");
    }

    #[test]
    fn derivative_in_positive_characteristic() {
        let f5 = RingSignature::standard(DomainDescriptor::prime_field(5).unwrap(), 1, 1).unwrap();
        let x = MixedPoly::var(&f5, 0);
        assert!(x.pow(5).unwrap().partial_derivative(0).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let r = ring(1, 1);
        let x = MixedPoly::var(&r, 0);
        let xi = x.invert_unit().unwrap();
        assert_eq!((&x + &xi).evaluate(&[q(2, 1)]).unwrap(), q(5, 2));
        assert_eq!(MixedPoly::zero(&r).evaluate(&[q(7, 1)]).unwrap(), q(0, 1));
        assert_eq!(xi.evaluate(&[q(0, 1)]), Err(Error::Pole("x1".into())));
    }

    #[test]
    fn negative_exponent_rejected_on_polynomial_block() {
        let r = ring(2, 1);
        assert!(matches!(
            MixedPoly::monomial(&r, q(1, 1), ExponentVector::from_vec(vec![0, -1])),
            Err(Error::NegativeExponent(_))
        ));
    }

    #[test]
    fn exact_division() {
        let r = ring(2, 1);
        let x1 = MixedPoly::var(&r, 0);
        let x2 = MixedPoly::var(&r, 1);
        let a = &(&x1 + &x2.pow(2).unwrap()) + &x1.invert_unit().unwrap();
        let b = &(&x2 - &x1.pow(-3).unwrap()) + &MixedPoly::from_i64(&r, 4);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!((&prod + &MixedPoly::one(&r)).div_exact(&b).is_none());
        assert!(x1.div_exact(&x2).is_none());
    }
}
