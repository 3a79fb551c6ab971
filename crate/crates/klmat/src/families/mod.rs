//! Family-specific recursions for uniform and braid matroids.
//!
//! These compute the same polynomials as the generic engine in [`crate::kl`]
//! but never enumerate a lattice: the uniform recursion runs over coefficient
//! indices, the braid recursion over integer partitions. Both are memoized
//! behind write-once caches so table generation can run concurrently.

pub mod braid;
pub mod counting;
pub mod partitions;
pub mod series;
pub mod uniform;

pub use braid::{braid_cubic, braid_kl, braid_whitney, gf_check_braid};
pub use counting::{stirling, StirlingKind};
pub use partitions::{m_count, Partition};
pub use series::Series2;
pub use uniform::{gf_check_uniform, uniform_coeff_closed, uniform_kl};
