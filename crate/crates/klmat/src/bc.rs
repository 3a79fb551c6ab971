//! The h-polynomial of the broken circuit complex and the dominance
//! comparison against the Kazhdan-Lusztig polynomial.
//!
//! By Whitney's theorem the face numbers of the broken circuit complex are
//! the unsigned coefficients of the characteristic polynomial, so the
//! f-vector here is computed from `chi_M` and is independent of any element
//! ordering. A direct enumeration of the complex exists in the test suite
//! as an oracle for this shortcut.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::kl::kl_poly;
use crate::matroid::FlatLattice;
use crate::poly::IntPoly;

/// Face counts of the broken circuit complex: `counts[i]` is the number of
/// `(i-1)`-dimensional faces, i.e. faces with `i` elements, with
/// `counts[0] = f_{-1} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<BigInt>,
}

/// `f_{i-1} = |[t^(d-i)] chi_M(t)|`.
pub fn bc_f_vector(lat: &FlatLattice) -> FVector {
    let chi = lat.char_poly();
    let d = lat.rank();
    let counts = (0..=d).map(|i| chi.coeff(d - i).abs()).collect();
    FVector { counts }
}

/// `h(t) = sum_i f_{i-1} t^i (1-t)^(d-i)`.
///
/// The broken circuit complex is shellable, so every coefficient is
/// non-negative; a negative coefficient signals an upstream bug and is
/// reported as an error rather than returned.
pub fn bc_h_poly(lat: &FlatLattice) -> Result<IntPoly> {
    let f = bc_f_vector(lat);
    let d = lat.rank();
    let one_minus_t = IntPoly::from(vec![1, -1]);
    let mut h = IntPoly::zero();
    for (i, count) in f.counts.iter().enumerate() {
        let term = one_minus_t.pow(d - i);
        h.add_scaled(count, &(&IntPoly::monomial(BigInt::from(1), i) * &term));
    }
    if !h.is_nonnegative() {
        return Err(Error::NegativeHCoefficient(h.to_string()));
    }
    Ok(h)
}

/// Comparison of the broken-circuit h-polynomial against `P_M(t)`: degree
/// equality and coefficientwise domination, the two properties that hold
/// for covexillary Schubert varieties.
#[derive(Clone, Debug)]
pub struct DominanceReport {
    pub h: IntPoly,
    pub kl: IntPoly,
    pub h_degree: usize,
    pub kl_degree: usize,
    pub degrees_equal: bool,
    /// Every coefficient of `h` is at least the matching coefficient of `P`.
    pub coefficientwise: bool,
}

impl DominanceReport {
    /// Both properties at once.
    pub fn dominates(&self) -> bool {
        self.degrees_equal && self.coefficientwise
    }
}

pub fn dominance_report(lat: &FlatLattice) -> Result<DominanceReport> {
    let h = bc_h_poly(lat)?;
    let kl = kl_poly(lat)?.poly;
    let h_degree = h.degree().unwrap_or(0);
    let kl_degree = kl.degree().unwrap_or(0);
    let span = h_degree.max(kl_degree);
    let coefficientwise = (0..=span).all(|i| h.coeff(i) >= kl.coeff(i));
    Ok(DominanceReport {
        degrees_equal: h_degree == kl_degree,
        coefficientwise,
        h,
        kl,
        h_degree,
        kl_degree,
    })
}
