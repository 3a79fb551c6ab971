//! Factorials, binomials, multinomials, Stirling and Bell numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient `n! / (parts[0]! * parts[1]! * ...)`.
///
/// Zero when any lower index is negative or the parts do not sum to `n`;
/// this is the convention the coefficient formulas rely on at boundary
/// indices.
pub fn multinomial(n: usize, parts: &[i64]) -> BigInt {
    if parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != n as i64 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    let mut rest = n as u64;
    for &p in parts {
        acc *= binomial(rest, p);
        rest -= p as u64;
    }
    acc
}

/// Stirling numbers of the second kind, zero outside `0 <= k <= n`.
pub fn stirling2(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    if n == 0 {
        return BigInt::one(); // S(0,0)
    }
    if k == 0 {
        return BigInt::zero();
    }
    let mut prev = vec![BigInt::zero(); k + 1];
    prev[0] = BigInt::one();
    for i in 1..=n {
        let mut cur = vec![BigInt::zero(); k + 1];
        for j in 1..=k.min(i) {
            cur[j] = &prev[j] * j + &prev[j - 1];
        }
        prev = cur;
    }
    prev[k].clone()
}

/// Signed Stirling numbers of the first kind, zero outside `0 <= k <= n`.
pub fn stirling1_signed(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    if n == 0 {
        return BigInt::one();
    }
    if k == 0 {
        return BigInt::zero();
    }
    let mut prev = vec![BigInt::zero(); k + 1];
    prev[0] = BigInt::one();
    for i in 1..=n {
        let mut cur = vec![BigInt::zero(); k + 1];
        for j in 1..=k.min(i) {
            cur[j] = &prev[j - 1] - &prev[j] * (i - 1);
        }
        prev = cur;
    }
    prev[k].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StirlingKind {
    /// Signed Stirling numbers of the first kind `s(n, k)`.
    First,
    /// Stirling numbers of the second kind `S(n, k)`.
    Second,
}

/// Stirling numbers with range checking: requires `0 <= k <= n`.
pub fn stirling(kind: StirlingKind, n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!(
            "stirling index k = {k} exceeds n = {n}"
        )));
    }
    Ok(match kind {
        StirlingKind::First => stirling1_signed(n, k as i64),
        StirlingKind::Second => stirling2(n, k as i64),
    })
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    row[0].clone()
}

/// Odd double factorial `n!! = n (n-2) (n-4) ...`, with `(-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Catalan number `C_k = C(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> BigInt {
    binomial(2 * k as u64, k as i64) / (k + 1)
}
