//! Exact computation of Kazhdan-Lusztig polynomials of matroids.
//!
//! The crate is organized around the lattice of flats of a loopless matroid:
//!
//! * [`matroid`] builds the lattice from several encodings and provides the
//!   Möbius function, characteristic polynomials, minors and Whitney numbers;
//! * [`kl`] computes `P_M(t)` by the defining recursion, together with
//!   closed-form oracles for the low coefficients;
//! * [`families`] has fast recursions for uniform and braid matroids plus
//!   truncated-series verification of their generating-function identities;
//! * [`algebra`] implements the q-deformed Möbius algebra, its
//!   Kazhdan-Lusztig basis and structure constants;
//! * [`bc`] computes the h-polynomial of the broken circuit complex and the
//!   dominance comparison against `P_M(t)`.
//!
//! All arithmetic is exact: polynomial coefficients are arbitrary-precision
//! integers throughout.

pub mod algebra;
pub mod bc;
mod error;
pub mod families;
pub mod golden;
pub mod kl;
pub mod laurent;
pub mod matroid;
pub mod poly;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use matroid::{Flat, FlatLattice, MatroidSpec};
pub use poly::IntPoly;
