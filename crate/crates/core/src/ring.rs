//! Ring signatures `R[x1^±,…,xd^±, x_{d+1},…,xn]` and exponent vectors.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::domain::DomainDescriptor;
use crate::error::{Error, Result};

/// Shared handle to a ring signature; polynomials carry one of these.
pub type Ring = Arc<RingSignature>;

/// The ring `B`: `n` variables over a coefficient domain, the first `d` of
/// them inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSignature {
    domain: DomainDescriptor,
    names: Vec<String>,
    d: usize,
}

impl RingSignature {
    pub fn new(domain: DomainDescriptor, names: Vec<String>, d: usize) -> Result<Ring> {
        if d > names.len() {
            return Err(Error::InvalidSignature(format!(
                "{} Laurent variables but only {} variables",
                d,
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSignature(format!("duplicate variable {name}")));
            }
        }
        Ok(Arc::new(RingSignature { domain, names, d }))
    }

    /// Variables named `x1..xn`, the first `d` inverted.
    pub fn standard(domain: DomainDescriptor, n: usize, d: usize) -> Result<Ring> {
        Self::new(domain, (1..=n).map(|i| format!("x{i}")).collect(), d)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.domain
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        i < self.d
    }

    /// Same variables over a different coefficient domain.
    pub fn with_domain(&self, domain: DomainDescriptor) -> Ring {
        Arc::new(RingSignature {
            domain,
            names: self.names.clone(),
            d: self.d,
        })
    }

    /// Problem-file header, e.g. `ring QQ[x1^±,x2]`.
    pub fn header(&self) -> String {
        let vars: Vec<String> = self
            .names
            .iter()
            .enumerate()
            .map(|(i, v)| if i < self.d { format!("{v}^±") } else { v.clone() })
            .collect();
        format!("ring {}[{}]", self.domain.name(), vars.join(","))
    }
}

impl fmt::Display for RingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header()["ring ".len()..])
    }
}

/// Dense exponent vector of length `n`.
///
/// Ordered graded-lexicographically: total degree first, then the entries
/// left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn from_vec(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Checks the polynomial block (indices `>= d`) is nonnegative.
    pub fn check(&self, ring: &RingSignature) -> Result<()> {
        if self.0.len() != ring.n() {
            return Err(Error::Arity {
                expected: ring.n(),
                got: self.0.len(),
            });
        }
        match self.0[ring.d()..].iter().position(|&e| e < 0) {
            Some(i) => Err(Error::NegativeExponent(ring.name(ring.d() + i).to_string())),
            None => Ok(()),
        }
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
