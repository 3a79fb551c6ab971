//! The Kazhdan-Lusztig polynomial of a matroid by the defining recursion.
//!
//! `P_M(t)` is the unique polynomial family with `P_M = 1` in rank zero,
//! `deg P_M < rk M / 2` in positive rank, and
//! `t^rk M P_M(1/t) = sum_F chi_{M_F}(t) P_{M^F}(t)`.
//!
//! The engine processes flats from the top of the lattice down, computing
//! the polynomial of every upper interval `[F, top]` exactly once and
//! assembling `R_M = sum_{F != bottom} chi_{M_F} P_{M^F}`. The antisymmetry
//! `t^rk R(1/t) = -R` always runs as an internal assertion before `P_M` is
//! read off the low-degree half.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matroid::{FlatLattice, WhitneyKind};
use crate::poly::IntPoly;

/// Result of a Kazhdan-Lusztig computation.
#[derive(Clone, Debug)]
pub struct KLResult {
    pub poly: IntPoly,
    /// Number of flats of the lattice the recursion ran over.
    pub lattice_size: usize,
    /// Lookups served by the per-flat cache of upper-interval polynomials.
    pub cache_hits: u64,
}

/// Checks `t^d r(1/t) = -r(t)` and extracts the polynomial `p` with
/// `deg p < d/2` and `t^d p(1/t) - p(t) = r(t)`.
pub(crate) fn extract_from_r(r: &IntPoly, d: usize) -> Result<IntPoly> {
    let reversed = r.reversed(d).map_err(|_| {
        Error::AntisymmetryViolated(format!(
            "R has degree {} above the rank {d}",
            r.degree().unwrap_or(0)
        ))
    })?;
    if reversed != -r {
        return Err(Error::AntisymmetryViolated(format!(
            "t^{d} R(1/t) != -R(t) for R = {r}"
        )));
    }
    // strictly below d/2: indices 0 ..= ceil(d/2) - 1
    let half = d.div_ceil(2);
    let p = IntPoly::from_coeffs((0..half).map(|i| -r.coeff(i)).collect());
    assert!(p.coeff(0).is_one(), "constant term of P must be 1, got {p}");
    Ok(p)
}

/// Kazhdan-Lusztig polynomials of all upper intervals `[F, top]`, indexed by
/// flat id. Shared by `kl_poly` and the identity checks.
pub(crate) fn kl_upper_table(lat: &FlatLattice) -> Result<(Vec<IntPoly>, u64)> {
    let n = lat.flat_count();
    let top_rank = lat.rank() as u32;
    let mut table: Vec<IntPoly> = vec![IntPoly::zero(); n];
    let mut hits = 0u64;
    for f in (0..n as u32).rev() {
        let d = (top_rank - lat.rank_by_id(f)) as usize;
        if d == 0 {
            table[f as usize] = IntPoly::one();
            continue;
        }
        let up = lat.upset_ids(f);
        // Möbius row of the interval [f, top]
        let mut mu = vec![BigInt::zero(); up.len()];
        mu[0] = BigInt::one();
        for k in 1..up.len() {
            let mut s = BigInt::zero();
            for j in 0..k {
                if lat.leq_ids(up[j], up[k]) {
                    s += &mu[j];
                }
            }
            mu[k] = -s;
        }
        // R = sum over g > f of chi_[f,g] * P_[g, top]
        let mut r = IntPoly::zero();
        for (k, &g) in up.iter().enumerate().skip(1) {
            let span = (lat.rank_by_id(g) - lat.rank_by_id(f)) as usize;
            let mut chi = vec![BigInt::zero(); span + 1];
            for (j, &e) in up[..=k].iter().enumerate() {
                if lat.leq_ids(e, g) {
                    chi[(lat.rank_by_id(g) - lat.rank_by_id(e)) as usize] += &mu[j];
                }
            }
            let chi = IntPoly::from_coeffs(chi);
            hits += 1;
            r += &(&chi * &table[g as usize]);
        }
        table[f as usize] = extract_from_r(&r, d)?;
    }
    Ok((table, hits))
}

/// Computes `P_M(t)` for the matroid of the given lattice.
///
/// ```
/// use klmat::matroid::MatroidSpec;
/// let lat = MatroidSpec::parse("braid:4")?.build()?;
/// let result = klmat::kl::kl_poly(&lat)?;
/// assert_eq!(result.poly.to_string(), "1 + t");
/// # Ok::<(), klmat::Error>(())
/// ```
pub fn kl_poly(lat: &FlatLattice) -> Result<KLResult> {
    let (table, cache_hits) = kl_upper_table(lat)?;
    let poly = table.into_iter().next().unwrap();
    debug_assert!(poly.degree().unwrap_or(0) * 2 < lat.rank().max(1) || lat.rank() == 0);
    Ok(KLResult {
        poly,
        lattice_size: lat.flat_count(),
        cache_hits,
    })
}

/// True iff `t^rk M p(1/t) = sum_F chi_{M_F}(t) P_{M^F}(t)` with `p`
/// substituted for `P_M` in the `F = bottom` term.
pub fn check_defining_identity(lat: &FlatLattice, p: &IntPoly) -> Result<bool> {
    let d = lat.rank();
    let Ok(lhs) = p.reversed(d) else {
        return Ok(false); // deg p > rk M: the identity cannot hold
    };
    let (table, _) = kl_upper_table(lat)?;
    let row = lat.mobius_row(0);
    // bottom term: chi of the rank-0 localization is 1
    let mut rhs = p.clone();
    for g in 1..lat.flat_count() as u32 {
        let span = lat.rank_by_id(g) as usize;
        let mut chi = vec![BigInt::zero(); span + 1];
        for e in 0..=g {
            if lat.leq_ids(e, g) {
                chi[span - lat.rank_by_id(e) as usize] += &row[e as usize];
            }
        }
        rhs += &(&IntPoly::from_coeffs(chi) * &table[g as usize]);
    }
    Ok(lhs == rhs)
}

/// Evaluates `sum_F t^rk F chi_{M_F}(1/t) chi_{M^F}(t)` exactly and reports
/// whether it vanishes. Requires positive rank (in rank zero the sum is 1).
pub fn cancellation_check(lat: &FlatLattice) -> Result<bool> {
    if lat.rank() == 0 {
        return Err(Error::RankZero);
    }
    let bottom_row = lat.mobius_row(0);
    let n = lat.flat_count() as u32;
    let mut total = IntPoly::zero();
    for f in 0..n {
        // t^rk F * chi_{M_F}(1/t) = sum_{E <= F} mu(bottom, E) t^rk E
        let rank_f = lat.rank_by_id(f) as usize;
        let mut low = vec![BigInt::zero(); rank_f + 1];
        for e in 0..=f {
            if lat.leq_ids(e, f) {
                low[lat.rank_by_id(e) as usize] += &bottom_row[e as usize];
            }
        }
        // chi_{M^F}(t) = sum_{G >= F} mu(F, G) t^(rk M - rk G)
        let row_f = lat.mobius_row(f);
        let mut high = vec![BigInt::zero(); lat.rank() - rank_f + 1];
        for g in f..n {
            if lat.leq_ids(f, g) {
                high[lat.rank() - lat.rank_by_id(g) as usize] += &row_f[g as usize];
            }
        }
        total += &(&IntPoly::from_coeffs(low) * &IntPoly::from_coeffs(high));
    }
    Ok(total.is_zero())
}

/// Closed formulas for the first four coefficients of `P_M(t)`, independent
/// of the recursion.
///
/// Whitney numbers with out-of-range indices are taken to be zero, which is
/// what makes the printed formulas correct for small ranks.
pub fn kl_coeff_closed(lat: &FlatLattice, i: usize) -> Result<BigInt> {
    let d = lat.rank() as i64;
    let w1 = |i, j| lat.whitney_unchecked(WhitneyKind::First, i, j);
    let w2 = |i, j| lat.whitney_unchecked(WhitneyKind::Second, i, j);
    match i {
        0 => Ok(BigInt::one()),
        1 => Ok(w2(0, d - 1) - w2(0, 1)),
        2 => Ok(w1(0, 2) - w2(1, d - 1) + w2(0, d - 2) - w2(d - 3, d - 2) + w2(d - 3, d - 1)),
        3 => {
            let mut total = w1(0, 3) - w2(d - 4, d - 3) + w2(d - 4, d - 1) - w2(1, d - 2)
                + w2(0, d - 3);
            for f in lat.flats() {
                let rank = lat.rank_of(&f)? as i64;
                if rank == d - 1 {
                    let loc = lat.localization(&f)?;
                    total += loc.whitney_unchecked(WhitneyKind::First, 0, 2);
                } else if rank == d - 3 && d >= 3 {
                    let loc = lat.localization(&f)?;
                    let res = lat.restriction(&f)?;
                    let w01_loc = loc.whitney_unchecked(WhitneyKind::Second, 0, 1);
                    let w02_res = res.whitney_unchecked(WhitneyKind::Second, 0, 2);
                    let w01_res = res.whitney_unchecked(WhitneyKind::Second, 0, 1);
                    total -= w01_loc * (w02_res - w01_res);
                } else if rank == d - 5 && d >= 5 {
                    let res = lat.restriction(&f)?;
                    let rw1 = |i, j| res.whitney_unchecked(WhitneyKind::First, i, j);
                    let rw2 = |i, j| res.whitney_unchecked(WhitneyKind::Second, i, j);
                    total += rw1(0, 2) - rw2(1, 4) + rw2(0, 3) + rw2(2, 4) - rw2(2, 3);
                }
            }
            Ok(total)
        }
        _ => Err(Error::UnsupportedIndex(i)),
    }
}

/// Per-polynomial conjecture report: non-negativity, log-concavity and the
/// absence of internal zeros of the coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub coefficients: Vec<BigInt>,
    pub nonnegative: bool,
    pub log_concave: bool,
    pub no_internal_zeros: bool,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.nonnegative && self.log_concave && self.no_internal_zeros
    }

    pub fn for_poly(p: &IntPoly) -> ConjectureReport {
        let coeffs = p.coeffs().to_vec();
        let nonnegative = p.is_nonnegative();
        let log_concave = (1..coeffs.len().saturating_sub(1))
            .all(|i| &coeffs[i - 1] * &coeffs[i + 1] <= &coeffs[i] * &coeffs[i]);
        let nonzero: Vec<usize> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        let no_internal_zeros = match (nonzero.first(), nonzero.last()) {
            (Some(&a), Some(&b)) => b - a + 1 == nonzero.len(),
            _ => true,
        };
        ConjectureReport {
            coefficients: coeffs,
            nonnegative,
            log_concave,
            no_internal_zeros,
        }
    }
}

/// Runs the conjecture report on `P_M(t)` of the given lattice.
pub fn conjecture_report(lat: &FlatLattice) -> Result<ConjectureReport> {
    Ok(ConjectureReport::for_poly(&kl_poly(lat)?.poly))
}
