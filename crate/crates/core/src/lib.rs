//! Exact computations in graded polynomial rings over `Q` and `F_p`.
//!
//! The crate covers:
//!
//! * sparse multivariate arithmetic with codegree bookkeeping ([`ring`], [`poly`]);
//! * Buchberger Groebner bases, ideal and radical membership, Hilbert series
//!   and Krull dimension of graded quotients ([`groebner`]);
//! * graded module presentations, bounded complexes of shifted free modules,
//!   degreewise homology, tensor products, cones and free graded-commutative
//!   dg algebras ([`module`], [`complex`], [`dga`]);
//! * supports over coordinate primes, Koszul complexes, power torsion and
//!   regular sequences ([`support`], [`torsion`], [`regseq`]);
//! * Stanley-Reisner ideals, the complete intersection test and the
//!   spherical fibration tower ([`stanley_reisner`]);
//! * thick subcategory classification by supports and generalized Adams
//!   resolutions ([`thick`], [`adams`]).
//!
//! Everything is exact. The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod adams;
pub mod complex;
pub mod dga;
mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod regseq;
pub mod ring;
pub mod stanley_reisner;
pub mod support;
pub mod thick;
pub mod torsion;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::Polynomial;
pub use ring::{GradedPolyRing, Monomial, RingRef, Variable};
