//! Kazhdan-Lusztig polynomials of uniform matroids.
//!
//! `M(m,d)` is the uniform matroid of rank `d` on `m + d` elements. For a
//! fixed `m` the defining recursion collapses to a double recursion on the
//! coefficients `c^i_{m,d}`, which is what `uniform_kl` runs; no lattice is
//! ever built.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

use super::counting::{binomial, multinomial};
use super::series::Series2;

fn cache() -> &'static Mutex<HashMap<(usize, usize), IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P_{m,d}(t)` by the coefficient recursion
/// `c^i_{m,d} = (-1)^i C(m+d, i)
///  + sum_{j=0}^{i-1} sum_{k=2j+1}^{i+j} (-1)^(i+j+k) C(m+d; m+k, i+j-k, d-i-j) c^j_{m,k}`,
/// memoized on `(m, d)`.
pub fn uniform_kl(m: usize, d: usize) -> IntPoly {
    if d == 0 {
        return IntPoly::one();
    }
    if let Some(p) = cache().lock().unwrap().get(&(m, d)) {
        return p.clone();
    }
    let n = (m + d) as u64;
    let half = d.div_ceil(2); // coefficients with 2i < d
    let mut coeffs = Vec::with_capacity(half);
    for i in 0..half {
        let mut c = sign(i) * binomial(n, i as i64);
        for j in 0..i {
            for k in (2 * j + 1)..=(i + j) {
                let tri = multinomial(
                    m + d,
                    &[(m + k) as i64, (i + j - k) as i64, (d - i - j) as i64],
                );
                if tri.is_zero() {
                    continue;
                }
                c += sign(i + j + k) * tri * uniform_kl(m, k).coeff(j);
            }
        }
        coeffs.push(c);
    }
    let p = IntPoly::from_coeffs(coeffs);
    debug_assert!(p.coeff(0).is_one());
    cache()
        .lock()
        .unwrap()
        .entry((m, d))
        .or_insert_with(|| p.clone());
    p
}

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        BigInt::from(-1)
    }
}

/// Closed formulas for `c^i_{m,d}`, `i <= 3`, independent of the recursion.
///
/// The printed formulas are signed sums of multinomials with `m + d` on top;
/// a multinomial with a negative lower index is zero. They describe the
/// coefficient only where the degree bound `2i < d` allows it to be nonzero,
/// so outside that range the result is zero directly.
pub fn uniform_coeff_closed(m: usize, d: usize, i: usize) -> Result<BigInt> {
    if i > 3 {
        return Err(Error::UnsupportedIndex(i));
    }
    if i == 0 {
        return Ok(BigInt::one());
    }
    if 2 * i >= d {
        return Ok(BigInt::zero());
    }
    let n = m + d;
    let (m, d) = (m as i64, d as i64);
    let tri = |a: i64, b: i64, c: i64| multinomial(n, &[a, b, c]);
    let quad = |a: i64, b: i64, c: i64, e: i64| multinomial(n, &[a, b, c, e]);
    Ok(match i {
        1 => binomial(n as u64, m + 1) - binomial(n as u64, 1),
        2 => {
            tri(m + 1, d - 3, 2) - tri(m + 1, d - 2, 1) + tri(m + 2, d - 2, 0)
                - tri(m + 2, d - 3, 1)
                + binomial(n as u64, 2)
        }
        _ => {
            quad(m + 1, d - 3, 2, 0) - quad(m + 1, d - 4, 2, 1) + quad(m + 1, d - 4, 3, 0)
                - quad(m + 1, d - 5, 3, 1)
                + quad(m + 1, d - 5, 2, 2)
                - quad(m + 2, d - 3, 1, 0)
                + quad(m + 2, d - 4, 1, 1)
                - quad(m + 2, d - 5, 2, 1)
                + quad(m + 2, d - 5, 3, 0)
                + quad(m + 3, d - 3, 0, 0)
                - quad(m + 3, d - 4, 1, 0)
                + quad(m + 3, d - 5, 2, 0)
                - binomial(n as u64, 3)
        }
    })
}

/// Verifies the generating-function identity
/// `Phi_m(1/t, tu) = (tu-u) / ((1-tu+u)(1+u)^m)
///  + (1-tu+u)^-(m+1) Phi_m(t, u/(1-tu+u))`
/// as an exact equality of truncations up to `u^order`, where
/// `Phi_m(t,u) = sum_{d>=1} P_{m,d}(t) u^d`.
pub fn gf_check_uniform(m: usize, order: usize) -> bool {
    assert!(order >= 1);
    // left side: the u^d coefficient of Phi_m(1/t, tu) is t^d P_{m,d}(1/t)
    let lhs_coeffs: Vec<IntPoly> = (0..=order)
        .map(|d| {
            if d == 0 {
                IntPoly::zero()
            } else {
                uniform_kl(m, d).reversed(d).expect("degree bound")
            }
        })
        .collect();
    let lhs = Series2::from_u_coeffs(order, lhs_coeffs);

    // x = (t-1)u, so 1 - tu + u = 1 - x
    let x = Series2::from_u_coeffs(order, vec![IntPoly::zero(), IntPoly::from(vec![-1, 1])]);
    let inv = Series2::geometric_inverse(&x); // 1/(1-tu+u)
    let minus_u = Series2::from_u_coeffs(order, vec![IntPoly::zero(), IntPoly::from(vec![-1])]);
    let inv_one_plus_u = Series2::geometric_inverse(&minus_u); // 1/(1+u)

    let term1 = x.mul(&inv).mul(&inv_one_plus_u.pow(m));

    // v = u/(1-tu+u) has valuation 1
    let v = inv.shift_up(1);
    let mut phi_v = Series2::zero(order);
    let mut v_pow = v.clone();
    for d in 1..=order {
        phi_v = phi_v.add(&v_pow.scale(&uniform_kl(m, d)));
        if d < order {
            v_pow = v_pow.mul(&v);
        }
    }
    let term2 = inv.pow(m + 1).mul(&phi_v);

    lhs.agrees_up_to(&term1.add(&term2), order)
}
