//! From an idempotent endomorphism `φ` of `B` to a presentation of its image
//! `A = φ(B)`.
//!
//! The pipeline reads the unit-lattice matrix `M` of `φ`, splits
//! `Z^d = im M ⊕ ker M`, and turns the two bases into new Laurent
//! coordinates `y_1..y_d` with `φ(y_i) = y_i` for the first `r` and
//! `φ(y_i) = 1` (after normalizing by a unit scalar) for the rest. The image
//! is then generated by `y_1..y_r` and the images of the polynomial
//! variables, and it embeds into `B/J` with `J = (y_{r+1}-1, …, y_d-1)`.
//! Its transcendence degree `t` satisfies `r ≤ t ≤ r + n - d`, which drives
//! the classification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domain::{Coeff, DomainDescriptor};
use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::jacobian::jacobian_rank;
use crate::lattice::{solve_in_lattice, IntVector, SummandDecomposition};
use crate::poly::MixedPoly;
use crate::ring::{ExponentVector, Ring, RingSignature};
use crate::sample::random_element;

// Sampled certificates are seeded so reports are reproducible.
const CERTIFICATE_SEED: u64 = 0x7265_7472_6163_7431;
const J_COMBINATIONS: usize = 20;
const INJECTIVITY_SAMPLES: usize = 10;
const SCALAR_SAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum YKind {
    Fixed,
    Killed,
}

/// `y_i = normalizer⁻¹ · x^exponent`, with `φ(y_i) = y_i` when fixed and
/// `φ(y_i) = 1` when killed. Fixed variables always have normalizer 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YVariable {
    pub exponent: ExponentVector,
    pub normalizer: Coeff,
    pub kind: YKind,
}

impl YVariable {
    /// The bare monomial `x^exponent`.
    pub fn monomial(&self, ring: &Ring) -> MixedPoly {
        MixedPoly::monomial(ring, ring.domain().one(), self.exponent.clone())
            .expect("Laurent-block exponent")
    }

    /// The normalized element `normalizer⁻¹ · x^exponent`.
    pub fn element(&self, ring: &Ring) -> MixedPoly {
        let inv = ring.domain().inv(&self.normalizer).expect("unit normalizer");
        self.monomial(ring).scale(&inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TrDeg {
    Exact(usize),
    Interval(usize, usize),
}

impl TrDeg {
    pub fn bounds(&self) -> (usize, usize) {
        match *self {
            TrDeg::Exact(t) => (t, t),
            TrDeg::Interval(lo, hi) => (lo, hi),
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            TrDeg::Exact(t) => Some(t),
            TrDeg::Interval(..) => None,
        }
    }
}

impl fmt::Display for TrDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrDeg::Exact(t) => write!(f, "{t}"),
            TrDeg::Interval(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// Isomorphism type of the retract `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum ClassificationVerdict {
    /// `A = R`.
    CoefficientRing,
    /// `A = B`.
    WholeRing,
    /// `A ≅ R^{[±r]}`.
    PureLaurent { r: usize },
    /// `A ≅ R^{[±r]} ⊗ R^{[s]}` with `s = n - d`.
    LaurentTensorPoly { r: usize, s: usize },
    /// `A ≅ R^{[±r]} ⊗ R^{[s]}` via the two-variable UFD theorem; the
    /// polynomial generators are only known explicitly when
    /// `generators_explicit` is set.
    #[serde(rename = "UFDClassified")]
    UfdClassified {
        r: usize,
        s: usize,
        #[serde(rename = "generatorsExplicit")]
        generators_explicit: bool,
    },
    /// Only `lo ≤ tr.deg A ≤ hi` is known.
    BoundsOnly { lo: usize, hi: usize },
}

impl ClassificationVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassificationVerdict::CoefficientRing => "CoefficientRing",
            ClassificationVerdict::WholeRing => "WholeRing",
            ClassificationVerdict::PureLaurent { .. } => "PureLaurent",
            ClassificationVerdict::LaurentTensorPoly { .. } => "LaurentTensorPoly",
            ClassificationVerdict::UfdClassified { .. } => "UFDClassified",
            ClassificationVerdict::BoundsOnly { .. } => "BoundsOnly",
        }
    }
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClassificationVerdict::CoefficientRing => write!(f, "CoefficientRing"),
            ClassificationVerdict::WholeRing => write!(f, "WholeRing"),
            ClassificationVerdict::PureLaurent { r } => write!(f, "PureLaurent(r={r})"),
            ClassificationVerdict::LaurentTensorPoly { r, s } => {
                write!(f, "LaurentTensorPoly(r={r}, s={s})")
            }
            ClassificationVerdict::UfdClassified {
                r,
                s,
                generators_explicit,
            } => write!(
                f,
                "UFDClassified(r={r}, s={s}, generatorsExplicit={generators_explicit})"
            ),
            ClassificationVerdict::BoundsOnly { lo, hi } => write!(f, "BoundsOnly(lo={lo}, hi={hi})"),
        }
    }
}

/// Whether the fraction field of `A` is known to be rational over the base
/// field. `NotApplicable` is used for non-field coefficient domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rationality {
    Rational,
    Unknown,
    NotApplicable,
}

impl fmt::Display for Rationality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rationality::Rational => "Rational",
            Rationality::Unknown => "Unknown",
            Rationality::NotApplicable => "NotApplicable",
        })
    }
}

/// The exact checks run by [`analyze`]. Every field is `true` in a returned
/// report; a failing check aborts the analysis instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificates {
    pub idempotent: bool,
    pub unit_matrix_idempotent: bool,
    pub unimodular_basis: bool,
    pub inverse_basis: bool,
    pub summand_splitting: bool,
    pub fixed_y_variables: bool,
    pub killed_y_variables: bool,
    pub scalar_fixedness: bool,
    pub image_lattice_membership: bool,
    pub generators_fixed: bool,
    pub j_annihilated: bool,
    pub quotient_injective: bool,
    pub trdeg_bounds: bool,
}

#[derive(Clone, Debug)]
pub struct RetractReport {
    pub ring: Ring,
    pub r: usize,
    pub decomposition: SummandDecomposition,
    pub y_variables: Vec<YVariable>,
    /// `y_1..y_r` followed by `φ(x_j)` for the polynomial variables.
    pub generators: Vec<MixedPoly>,
    /// Images of the generators in `B/J ≅ S[x_{d+1},…,x_n]`.
    pub quotient_generators: Vec<MixedPoly>,
    pub trdeg: TrDeg,
    pub classification: ClassificationVerdict,
    pub rationality: Rationality,
    pub certificates: Certificates,
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::certificate("exponentRange", format!("exponent {v} out of range")))
}

fn laurent_exponent(ring: &Ring, b: &[BigInt]) -> Result<ExponentVector> {
    let mut e = vec![0i64; ring.n()];
    for (slot, v) in e.iter_mut().zip(b) {
        *slot = to_i64(v)?;
    }
    Ok(ExponentVector::from_vec(e))
}

/// Adapted Laurent coordinates for an idempotent `φ`.
pub fn compute_y_variables(phi: &Endomorphism) -> Result<(SummandDecomposition, Vec<YVariable>)> {
    phi.require_idempotent()?;
    let ring = phi.ring();
    let md = phi.monomial_part()?;
    let dec = SummandDecomposition::new(&md.m).map_err(|e| match e {
        Error::MatrixNotIdempotent => Error::certificate(
            "unitMatrixIdempotent",
            format!("M = {} but phi is idempotent", md.m),
        ),
        other => other,
    })?;
    let mut ys = Vec::with_capacity(dec.d());
    for b in &dec.fixed_basis {
        let y = YVariable {
            exponent: laurent_exponent(ring, b)?,
            normalizer: ring.domain().one(),
            kind: YKind::Fixed,
        };
        let mono = y.monomial(ring);
        let img = phi.apply(&mono)?;
        if img != mono {
            return Err(Error::certificate(
                "fixedYVariables",
                format!("phi({mono}) = {img}"),
            ));
        }
        ys.push(y);
    }
    for b in &dec.kernel_basis {
        let exponent = laurent_exponent(ring, b)?;
        let mono = MixedPoly::monomial(ring, ring.domain().one(), exponent.clone())?;
        let img = phi.apply(&mono)?;
        let lambda = match img.constant_value() {
            Some(c) if ring.domain().is_unit(&c) => c,
            _ => {
                return Err(Error::certificate(
                    "killedYVariables",
                    format!("phi({mono}) = {img} is not a unit scalar"),
                ))
            }
        };
        let y = YVariable {
            exponent,
            normalizer: lambda,
            kind: YKind::Killed,
        };
        let check = phi.apply(&y.element(ring))?;
        if !check.is_one() {
            return Err(Error::certificate(
                "killedYVariables",
                format!("phi({}) = {check}", y.element(ring)),
            ));
        }
        ys.push(y);
    }
    Ok((dec, ys))
}

/// The ring `S[x_{d+1},…,x_n]` modelling `B/J`: Laurent variables
/// `y1..yr` followed by the polynomial variables of `ring`.
pub fn quotient_ring(ring: &Ring, r: usize) -> Result<Ring> {
    let poly_names = &ring.names()[ring.d()..];
    let mut names = Vec::with_capacity(r + poly_names.len());
    let mut k = 1;
    while names.len() < r {
        let candidate = format!("y{k}");
        k += 1;
        if !poly_names.contains(&candidate) {
            names.push(candidate);
        }
    }
    names.extend_from_slice(poly_names);
    RingSignature::new(ring.domain().clone(), names, r)
}

/// Image of `p` in `B/J`, written in the coordinates of [`quotient_ring`].
pub fn quotient_mod_j(
    p: &MixedPoly,
    decomposition: &SummandDecomposition,
    y_variables: &[YVariable],
    target: &Ring,
) -> Result<MixedPoly> {
    let ring = p.ring();
    let (n, d, r) = (ring.n(), ring.d(), decomposition.r);
    if decomposition.d() != d || y_variables.len() != d || target.d() != r || target.n() != r + n - d {
        return Err(Error::Dimension("decomposition does not match the ring".into()));
    }
    let dom = ring.domain();
    let mut terms = Vec::with_capacity(p.len());
    for t in p.terms() {
        let v: IntVector = t.exp.entries()[..d].iter().map(|&e| BigInt::from(e)).collect();
        let c = decomposition.coordinates(&v);
        let mut coeff = t.coeff.clone();
        for (ci, y) in c.iter().zip(y_variables).skip(r) {
            if ci.is_zero() {
                continue;
            }
            let f = dom
                .pow(&y.normalizer, to_i64(ci)?)
                .expect("normalizers are units");
            coeff = dom.mul(&coeff, &f);
        }
        let mut e = Vec::with_capacity(r + n - d);
        for ci in &c[..r] {
            e.push(to_i64(ci)?);
        }
        e.extend_from_slice(&t.exp.entries()[d..]);
        terms.push((coeff, ExponentVector::from_vec(e)));
    }
    MixedPoly::from_terms(target, terms)
}

/// Transcendence degree of the algebra generated by `generators`.
///
/// Exact in characteristic zero (Jacobian rank). In characteristic `p` the
/// Jacobian rank is only a lower bound, so the result is the interval
/// `[max(r, rank), r + n - d]`, collapsed when `d = n` or when the bounds
/// meet.
pub fn transcendence_degree(generators: &[MixedPoly], ring: &Ring, unit_rank: usize) -> Result<TrDeg> {
    if generators.is_empty() {
        return Ok(TrDeg::Exact(0));
    }
    if generators.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let dom = ring.domain();
    if dom.characteristic() == 0 {
        let lifted = if dom.is_field() {
            generators.to_vec()
        } else {
            let qq = ring.with_domain(DomainDescriptor::rationals());
            generators
                .iter()
                .map(|g| g.with_ring(&qq))
                .collect::<Result<Vec<_>>>()?
        };
        return Ok(TrDeg::Exact(jacobian_rank(&lifted)));
    }
    let hi = unit_rank + ring.n() - ring.d();
    if ring.n() == ring.d() {
        return Ok(TrDeg::Exact(unit_rank));
    }
    let lo = unit_rank.max(jacobian_rank(generators)).min(hi);
    Ok(if lo == hi {
        TrDeg::Exact(lo)
    } else {
        TrDeg::Interval(lo, hi)
    })
}

/// Classifies `A` from `(n, d, r)` and its transcendence degree.
pub fn classify(
    n: usize,
    d: usize,
    r: usize,
    trdeg: TrDeg,
    domain: &DomainDescriptor,
) -> Result<ClassificationVerdict> {
    let (lo, hi) = trdeg.bounds();
    if r > d || d > n || lo > hi || lo < r || hi > r + n - d {
        return Err(Error::Inconsistent(format!(
            "n={n}, d={d}, r={r}, trdeg={trdeg}"
        )));
    }
    let Some(t) = trdeg.exact() else {
        return Ok(ClassificationVerdict::BoundsOnly { lo, hi });
    };
    Ok(if t == 0 {
        ClassificationVerdict::CoefficientRing
    } else if t == n {
        ClassificationVerdict::WholeRing
    } else if t == r {
        ClassificationVerdict::PureLaurent { r }
    } else if t == r + n - d {
        ClassificationVerdict::LaurentTensorPoly { r, s: n - d }
    } else {
        assert!(n - d >= 2, "intermediate trdeg needs at least two polynomial variables");
        if n - d == 2 && domain.is_ufd() {
            ClassificationVerdict::UfdClassified {
                r,
                s: t - r,
                generators_explicit: false,
            }
        } else {
            ClassificationVerdict::BoundsOnly { lo: r, hi: r + n - d }
        }
    })
}

/// Rationality of `Q(A)` over a field: rational when the transcendence
/// degree is 0, 1 or `n`, when `d ≥ n - 2`, or when `n ≤ 3`.
pub fn rationality_verdict(
    n: usize,
    d: usize,
    _r: usize,
    trdeg: TrDeg,
    domain: &DomainDescriptor,
) -> Result<Rationality> {
    if !domain.is_field() {
        return Err(Error::NotAField(domain.name()));
    }
    let (lo, hi) = trdeg.bounds();
    let trdeg_ok = (lo..=hi).all(|t| t == 0 || t == 1 || t == n);
    Ok(if trdeg_ok || d + 2 >= n || n <= 3 {
        Rationality::Rational
    } else {
        Rationality::Unknown
    })
}

fn in_fixed_lattice(p: &MixedPoly, dec: &SummandDecomposition) -> bool {
    let d = dec.d();
    !p.involves_polynomial_variables()
        && p.terms().iter().all(|t| {
            let v: IntVector = t.exp.entries()[..d].iter().map(|&e| BigInt::from(e)).collect();
            solve_in_lattice(&v, &dec.fixed_basis).is_some()
        })
}

fn fail(name: &str, detail: impl Into<String>) -> Error {
    Error::certificate(name, detail)
}

/// Full analysis of an idempotent endomorphism.
pub fn analyze(phi: &Endomorphism) -> Result<RetractReport> {
    let ring = phi.ring().clone();
    let (n, d) = (ring.n(), ring.d());
    let (dec, ys) = compute_y_variables(phi)?;
    let r = dec.r;

    if !dec.splits_matrix() {
        return Err(fail("summandSplitting", format!("M = {}, Y = {}", dec.m, dec.y)));
    }
    if !dec.inverse_holds() {
        return Err(fail("inverseBasis", format!("Y = {}, T = {}", dec.y, dec.t)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATE_SEED);

    // Fixed lattice elements are fixed with scalar exactly 1.
    let fixed_monos: Vec<MixedPoly> = ys[..r].iter().map(|y| y.monomial(&ring)).collect();
    let samples = if r == 0 { 0 } else { SCALAR_SAMPLES };
    for _ in 0..samples {
        let mut acc = MixedPoly::one(&ring);
        for y in &fixed_monos {
            acc = &acc * &y.pow(rand::Rng::gen_range(&mut rng, -2..=2))?;
        }
        let img = phi.apply(&acc)?;
        if img != acc {
            return Err(fail("scalarFixedness", format!("phi({acc}) = {img}")));
        }
    }

    // Images of Laurent variables have exponents in the fixed lattice.
    for i in 0..d {
        let col = dec.m.column(i);
        if solve_in_lattice(&col, &dec.fixed_basis).is_none() {
            return Err(fail(
                "imageLatticeMembership",
                format!("exponent of phi({}) not in the fixed lattice", ring.name(i)),
            ));
        }
    }

    let mut generators = fixed_monos.clone();
    for j in d..n {
        generators.push(phi.image(j).clone());
    }
    for g in &generators {
        let img = phi.apply(g)?;
        if img != *g {
            return Err(fail("generatorsFixed", format!("phi({g}) = {img}")));
        }
    }

    // φ(J) = 0 on the generators of J and on random B-combinations of them.
    let j_gens: Vec<MixedPoly> = ys[r..]
        .iter()
        .map(|y| &y.element(&ring) - &MixedPoly::one(&ring))
        .collect();
    for g in &j_gens {
        let img = phi.apply(g)?;
        if !img.is_zero() {
            return Err(fail("jAnnihilated", format!("phi({g}) = {img}")));
        }
    }
    if !j_gens.is_empty() {
        for _ in 0..J_COMBINATIONS {
            let mut comb = MixedPoly::zero(&ring);
            for g in &j_gens {
                comb = &comb + &(&random_element(&ring, &mut rng, 2, 1, 3) * g);
            }
            let img = phi.apply(&comb)?;
            if !img.is_zero() {
                return Err(fail("jAnnihilated", format!("phi({comb}) = {img}")));
            }
        }
    }

    let qring = quotient_ring(&ring, r)?;
    let quotient_generators = generators
        .iter()
        .map(|g| quotient_mod_j(g, &dec, &ys, &qring))
        .collect::<Result<Vec<_>>>()?;

    // π restricted to A is injective.
    for _ in 0..INJECTIVITY_SAMPLES {
        let b = random_element(&ring, &mut rng, 3, 1, 3);
        let a = phi.apply(&b)?;
        if !a.is_zero() && quotient_mod_j(&a, &dec, &ys, &qring)?.is_zero() {
            return Err(fail("quotientInjective", format!("phi({b}) = {a} maps to 0 mod J")));
        }
    }

    let trdeg = transcendence_degree(&generators, &ring, r)?;
    let (lo, hi) = trdeg.bounds();
    if !(r <= lo && hi <= r + n - d) {
        return Err(fail("trdegBounds", format!("r={r}, trdeg={trdeg}, n={n}, d={d}")));
    }

    let mut classification = classify(n, d, r, trdeg, ring.domain())?;
    if let ClassificationVerdict::UfdClassified {
        s,
        ref mut generators_explicit,
        ..
    } = classification
    {
        let mut distinct: Vec<&MixedPoly> = Vec::new();
        for g in &generators[r..] {
            if g.constant_value().is_none() && !in_fixed_lattice(g, &dec) && !distinct.contains(&g) {
                distinct.push(g);
            }
        }
        *generators_explicit = distinct.len() == s;
    }
    let rationality = if ring.domain().is_field() {
        rationality_verdict(n, d, r, trdeg, ring.domain())?
    } else {
        Rationality::NotApplicable
    };

    Ok(RetractReport {
        r,
        decomposition: dec,
        y_variables: ys,
        generators,
        quotient_generators,
        trdeg,
        classification,
        rationality,
        certificates: Certificates {
            idempotent: true,
            unit_matrix_idempotent: true,
            unimodular_basis: true,
            inverse_basis: true,
            summand_splitting: true,
            fixed_y_variables: true,
            killed_y_variables: true,
            scalar_fixedness: true,
            image_lattice_membership: true,
            generators_fixed: true,
            j_annihilated: true,
            quotient_injective: true,
            trdeg_bounds: true,
        },
        ring,
    })
}

impl RetractReport {
    pub fn quotient_ring(&self) -> Result<Ring> {
        quotient_ring(&self.ring, self.r)
    }
}
