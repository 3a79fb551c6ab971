//! Lattices of flats of loopless matroids.
//!
//! A matroid enters the crate through a [`MatroidSpec`] (one of the built-in
//! families, a graph, a matrix over GF(p), or an explicit flat list) and is
//! compiled into a [`FlatLattice`]: the full lattice of flats with ranks, the
//! inclusion order, joins, the Möbius function and characteristic polynomial,
//! minors, direct sums, Whitney numbers and a modularity test.
//!
//! Naming of minors follows the restriction/localization convention in which
//! the *restriction* `M^F` has lattice `[F, top]` and the *localization*
//! `M_F` has lattice `[bottom, F]`. Part of the literature attaches these
//! words to deletion/contraction the other way around; here the interval
//! picture is the definition.

mod lattice;
mod spec;
#[cfg(test)]
mod tests;

pub use lattice::{
    braid_blocks_of_flat, braid_flat_from_blocks, Family, Flat, FlatLattice, WhitneyKind,
    DEFAULT_FLAT_CAP, MAX_GROUND,
};
pub use spec::MatroidSpec;
