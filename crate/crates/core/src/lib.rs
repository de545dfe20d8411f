//! Retracts of localized polynomial rings `R[x1^±,…,xd^±, x_{d+1},…,xn]`.
//!
//! Given an idempotent `R`-algebra endomorphism `φ` of such a ring, the
//! crate builds the unit-lattice summand decomposition, the adapted Laurent
//! coordinates `y_i`, the quotient model of the image, its transcendence
//! degree, and a classification of the image ring, together with exact
//! certificates for every step.

pub mod corpus;
pub mod domain;
pub mod endo;
pub mod generate;
pub mod error;
pub mod jacobian;
pub mod lattice;
pub mod poly;
pub mod problem;
pub mod report;
pub mod retract;
pub mod ring;
pub mod sample;
pub mod selftest;

pub use domain::{Coeff, DomainDescriptor, DomainKind};
pub use error::{Error, Result};
pub use poly::{MixedPoly, Term};
pub use problem::{parse_poly, parse_problem, ProblemFile};
pub use ring::{ExponentVector, Ring, RingSignature};
