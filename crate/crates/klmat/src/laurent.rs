//! Laurent polynomials in `q` with big-integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{fmt_poly, IntPoly};

/// A Laurent polynomial in `q`.
///
/// `coeffs[i]` is the coefficient of `q^(lowest + i)`. Canonical form: no
/// zero coefficients at either end; the zero element has an empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lowest: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigInt::one(), 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        LaurentPoly::new(exp, vec![c])
    }

    pub fn new(lowest: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { lowest, coeffs };
        p.normalize();
        p
    }

    /// Reads an ordinary polynomial in `q`, shifted by `q^shift`.
    pub fn from_poly(p: &IntPoly, shift: i64) -> Self {
        LaurentPoly::new(shift, p.coeffs().to_vec())
    }

    /// `q^shift * p(q^-2)`: the substitution used by the Kazhdan-Lusztig
    /// basis, where `p` is a polynomial in `t`.
    pub fn poly_at_q_inv_sq(p: &IntPoly, shift: i64) -> Self {
        let mut out = LaurentPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out += &LaurentPoly::monomial(c.clone(), shift - 2 * i as i64);
        }
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lowest += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lowest = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lowest == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lowest)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lowest + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        if exp < self.lowest {
            return BigInt::zero();
        }
        self.coeffs
            .get((exp - self.lowest) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.lowest + i as i64, c))
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add_scaled(&mut self, c: &BigInt, other: &LaurentPoly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let lo = self.lowest.min(other.lowest);
        let hi = (self.lowest + self.coeffs.len() as i64)
            .max(other.lowest + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[(self.lowest - lo) as usize + i] = a.clone();
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            coeffs[(other.lowest - lo) as usize + i] += b * c;
        }
        *self = LaurentPoly::new(lo, coeffs);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(&BigInt::one(), rhs);
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(&BigInt::from(-1), rhs);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::new(self.lowest, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lowest + rhs.lowest, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.coeffs, self.lowest, "q")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
