//! Kazhdan-Lusztig polynomials of braid matroids.
//!
//! `M_n` is the matroid of the complete graph on `n` vertices; its lattice
//! of flats is the partition lattice of `[n]`. Grouping flats by type turns
//! the defining recursion into a sum over integer partitions of `n`:
//!
//! `t^(n-1) P_n(1/t) = sum_{lambda |- n} m(lambda) P_{l(lambda)}(t)
//!  prod_{j=1}^{lambda_1 - 1} (t - j)^(lambda^t_{j+1})`,
//!
//! which `braid_kl` solves for `P_n` without ever enumerating the `Bell(n)`
//! flats.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kl::extract_from_r;
use crate::poly::IntPoly;

use super::counting::{binomial, stirling1_signed, stirling2};
use super::partitions::{m_count, partitions_of, Partition};
use super::series::Series2;

fn cache() -> &'static Mutex<HashMap<usize, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Characteristic polynomial of the localization at a flat of type `lambda`:
/// `prod_{j=1}^{lambda_1 - 1} (t - j)^(lambda^t_{j+1})`.
pub fn braid_localization_chi(lam: &Partition) -> IntPoly {
    let t = lam.transpose();
    let mut chi = IntPoly::one();
    for j in 1..lam.part(1) {
        let factor = IntPoly::from(vec![-(j as i64), 1]);
        for _ in 0..t.part(j + 1) {
            chi = &chi * &factor;
        }
    }
    chi
}

/// `P_n(t)` for the braid matroid on `n` vertices, memoized on `n`.
///
/// `P_0 = 0` by convention, so the empty partition contributes nothing to
/// the generating-function identity.
pub fn braid_kl(n: usize) -> IntPoly {
    if n == 0 {
        return IntPoly::zero();
    }
    if n <= 2 {
        return IntPoly::one();
    }
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let d = n - 1;
    let mut r = IntPoly::zero();
    for lam in partitions_of(n) {
        if lam.len() == n {
            continue; // the all-singletons type carries the unknown P_n
        }
        let term = &braid_localization_chi(&lam) * &braid_kl(lam.len());
        r.add_scaled(&m_count(&lam), &term);
    }
    let p = extract_from_r(&r, d).expect("braid recursion must be antisymmetric");
    cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| p.clone());
    p
}

/// `W_{i,j}(M_n) = S(n, n-i) S(n-i, n-j)` for `0 <= i <= j <= n-1`.
pub fn braid_whitney(n: usize, i: usize, j: usize) -> Result<BigInt> {
    if n == 0 || i > j || j > n - 1 {
        return Err(Error::IndexOutOfRange(format!(
            "braid Whitney indices need 0 <= i <= j <= n-1, got ({i}, {j}) for n = {n}"
        )));
    }
    Ok(stirling2(n, (n - i) as i64) * stirling2(n - i, (n - j) as i64))
}

/// The coefficient of `t^3` in `P_n(t)` through Stirling numbers and sums
/// over partitions of `n`, independent of `braid_kl`.
///
/// This instantiates the general cubic-coefficient formula with the braid
/// dictionary `w_{0,j} = s(n, n-j)`, `W_{i,j} = S(n, n-i) S(n-i, n-j)` and
/// the Whitney product rule for direct sums:
///
/// * flats of corank 1 are the two-block partitions; the bracketed
///   S-products are `w_{0,2}` of the localization `M_(l1) + M_(l2)`;
/// * flats of corank 3 are the four-block partitions, whose localizations
///   have `W_{0,1} = sum C(l_i, 2)` atoms, weighted by
///   `-(W_{0,2} - W_{0,1})` of the corank-3 restriction, which is `-1`;
/// * flats of corank 5 contribute a fixed factor 15 per flat.
pub fn braid_cubic(n: usize) -> BigInt {
    assert!(n >= 1);
    let s2 = |a: usize, b: i64| stirling2(a, b);
    let mut total = stirling1_signed(n, n as i64 - 3);
    total -= s2(n, n as i64 - 1) * s2(n - 1, 3);
    total += s2(n, 4);
    total += BigInt::from(5) * s2(n, 5) + BigInt::from(15) * s2(n, 6);
    for lam in partitions_of(n) {
        match lam.len() {
            2 => {
                let (l1, l2) = (lam.part(1), lam.part(2));
                let bracket = s2(l1, l1 as i64 - 1) * s2(l1 - 1, l1 as i64 - 2)
                    + s2(l2, l2 as i64 - 1) * s2(l1, l1 as i64 - 1)
                    + s2(l2, l2 as i64 - 1) * s2(l2 - 1, l2 as i64 - 2)
                    - s2(l1, l1 as i64 - 2)
                    - s2(l2, l2 as i64 - 2);
                total += m_count(&lam) * bracket;
            }
            4 => {
                let pairs: BigInt =
                    (1..=4).map(|k| binomial(lam.part(k) as u64, 2)).sum();
                total -= m_count(&lam) * pairs;
            }
            _ => {}
        }
    }
    total
}

/// Verifies the generating-function identity
/// `Psi(1/t, tu) = sum_nu m(~nu) u^(|~nu|-1) prod_{j=1}^{nu_1} (t-j)^(nu^t_j)
///  * (d/du)^|~nu|/|~nu|! (u^(|nu|+1) Psi(t,u))`
/// as an exact equality of truncations up to `u^order`, where
/// `Psi(t,u) = sum_{n>=1} P_n(t) u^(n-1)` and `~nu` adds 1 to every part.
pub fn gf_check_braid(order: usize) -> bool {
    assert!(order >= 1);
    let psi_order = order + 1;
    let psi = Series2::from_u_coeffs(
        psi_order,
        (0..=psi_order).map(|s| braid_kl(s + 1)).collect(),
    );
    let lhs = Series2::from_u_coeffs(
        order,
        (0..=order)
            .map(|s| braid_kl(s + 1).reversed(s).expect("degree bound"))
            .collect(),
    );
    let mut rhs = Series2::zero(order);
    for size in 0..=order {
        for nu in partitions_of(size) {
            let nu_tilde = nu.add_one_to_each();
            let k = nu_tilde.size();
            let term = if k == 0 {
                // empty partition: u^-1 * (d/du)^0 (u Psi) = Psi
                psi.clone()
            } else {
                psi.shift_up(nu.size() + 1)
                    .deriv_div_factorial(k)
                    .shift_up(k - 1)
            };
            // prod_{j=1}^{nu_1} (t-j)^(nu^t_j)
            let nu_t = nu.transpose();
            let mut chi = IntPoly::one();
            for j in 1..=nu.part(1) {
                let factor = IntPoly::from(vec![-(j as i64), 1]);
                for _ in 0..nu_t.part(j) {
                    chi = &chi * &factor;
                }
            }
            rhs = rhs.add(&term.scale(&chi).scale_int(&m_count(&nu_tilde)));
        }
    }
    lhs.agrees_up_to(&rhs, order)
}
