//! Exact polyhedral geometry of blow-ups of P^1 x P^n at general points: Mori, nef, movable
//! and effective cones, the Cox ring presentation for n + 1 points, and the Mori chamber
//! decomposition of the effective cone computed as a GIT fan.

pub mod bitset;
pub mod cli;
pub mod cones;
pub mod coxring;
pub mod error;
pub mod geometry;
pub mod gitfan;
pub mod lattice;
pub mod linalg;
pub mod scalar;
pub mod verify;

pub use cones::RationalCone;
pub use error::{Error, Result};
pub use lattice::Signature;

/// Default integer backend.
pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::Ratio<Int>;
pub type Cone = RationalCone<Int>;
pub type Divisor = lattice::DivisorVector<Int>;
pub type Curve = lattice::CurveVector<Int>;
pub type Presentation = coxring::CoxPresentation<Int>;
pub type Chambers = gitfan::ChamberSet<Int>;
