//! Exact-arithmetic toolkit for finite point configurations in P^4: builds
//! the configurations studied in this problem domain, computes their Hilbert
//! functions and h-vectors, and produces machine-checkable certificates that
//! the projection of a configuration from a sampled point is a full
//! intersection of a curve and a surface in P^3.
//!
//! All arithmetic is exact (arbitrary-precision rationals or prime fields),
//! so every certificate check is a rank or vanishing statement with no
//! tolerance. Randomness only chooses candidate witnesses; each emitted
//! certificate is re-verified deterministically.

pub mod certify;
pub mod constructions;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod ideals;
pub mod oracle;
pub mod projgeom;
pub mod reproduce;
pub mod serial;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, RandomSource};
