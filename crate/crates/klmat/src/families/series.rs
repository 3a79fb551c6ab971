//! Bivariate truncated power series in `(t, u)`.
//!
//! A `Series2` stores, for each power of `u` up to its truncation order, an
//! exact polynomial in `t`. Every operation tracks how far the result is
//! exact, so a comparison up to a requested order either has full precision
//! or panics.

use num_bigint::BigInt;

use crate::poly::IntPoly;

use super::counting::binomial;

#[derive(Clone, Debug)]
pub struct Series2 {
    /// Coefficients are exact for `u^0 ..= u^order`; `coeffs.len() == order + 1`.
    order: usize,
    coeffs: Vec<IntPoly>,
}

impl Series2 {
    pub fn zero(order: usize) -> Self {
        Series2 {
            order,
            coeffs: vec![IntPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series2::zero(order);
        s.coeffs[0] = IntPoly::one();
        s
    }

    /// Builds a series from `u`-coefficients, padded or truncated to `order`.
    pub fn from_u_coeffs(order: usize, mut coeffs: Vec<IntPoly>) -> Self {
        coeffs.resize(order + 1, IntPoly::zero());
        Series2 { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize) -> &IntPoly {
        &self.coeffs[j]
    }

    /// Lower bound for the `u`-valuation: index of the first stored nonzero
    /// coefficient, or `order + 1` when all stored coefficients vanish.
    fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order + 1)
    }

    pub fn add(&self, other: &Series2) -> Series2 {
        let order = self.order.min(other.order);
        Series2 {
            order,
            coeffs: (0..=order)
                .map(|j| &self.coeffs[j] + &other.coeffs[j])
                .collect(),
        }
    }

    pub fn mul(&self, other: &Series2) -> Series2 {
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut coeffs = vec![IntPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Series2 { order, coeffs }
    }

    pub fn pow(&self, e: usize) -> Series2 {
        let mut acc = Series2::one(self.order + self.valuation() * e.max(1));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, p: &IntPoly) -> Series2 {
        Series2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Series2 {
        Series2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| p.scaled(c)).collect(),
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift_up(&self, k: usize) -> Series2 {
        let mut coeffs = vec![IntPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series2 {
            order: self.order + k,
            coeffs,
        }
    }

    /// `(d/du)^k / k!` applied termwise: the coefficient of `u^s` becomes
    /// `C(s + k, k)` times the old coefficient of `u^(s + k)`.
    pub fn deriv_div_factorial(&self, k: usize) -> Series2 {
        assert!(k <= self.order, "derivative order exceeds truncation");
        let order = self.order - k;
        let coeffs = (0..=order)
            .map(|s| self.coeffs[s + k].scaled(&binomial((s + k) as u64, k as i64)))
            .collect();
        Series2 { order, coeffs }
    }

    /// `1 / (1 - x)` for a series `x` of positive `u`-valuation.
    pub fn geometric_inverse(x: &Series2) -> Series2 {
        assert!(x.valuation() >= 1, "geometric expansion needs valuation >= 1");
        let order = x.order;
        let mut coeffs = vec![IntPoly::zero(); order + 1];
        coeffs[0] = IntPoly::one();
        for s in 1..=order {
            let mut acc = IntPoly::zero();
            for i in 1..=s {
                if !x.coeffs[i].is_zero() {
                    acc += &(&x.coeffs[i] * &coeffs[s - i]);
                }
            }
            coeffs[s] = acc;
        }
        Series2 { order, coeffs }
    }

    /// Exact comparison of the truncations up to `u^upto`. Panics if either
    /// side is not exact that far.
    pub fn agrees_up_to(&self, other: &Series2, upto: usize) -> bool {
        assert!(
            self.order >= upto && other.order >= upto,
            "comparison beyond exact truncation"
        );
        (0..=upto).all(|j| self.coeffs[j] == other.coeffs[j])
    }
}
