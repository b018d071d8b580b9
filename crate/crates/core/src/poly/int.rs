use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{write_terms, F2Poly, LaurentInt};
use crate::error::{Error, Result};

/// Dense polynomial in `z` over ℤ; `coeffs[k]` is the coefficient of `z^k`.
/// Trailing zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    /// `c * z^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// `1 + z + ... + z^(d-1)`, i.e. `(1 - z^d) / (1 - z)`; zero for `d = 0`.
    pub fn geometric(d: usize) -> Self {
        Self {
            coeffs: vec![BigInt::one(); d],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// True when the coefficient list reads the same backwards, i.e.
    /// `z^deg p(1/z) = p(z)`.
    pub fn is_palindrome(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient by `(1 - z)`.
    ///
    /// Synthetic division: `r_k = Σ_{j≤k} p_j`; the remainder `Σ p_j` must vanish.
    pub fn div_exact_one_minus_z(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        let mut acc = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            out.push(acc.clone());
        }
        acc += self.coeffs.last().unwrap();
        if !acc.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn mod2(&self) -> F2Poly {
        F2Poly::from_bits(self.coeffs.iter().map(|c| c.bit(0) as u8))
    }

    pub fn to_laurent(&self) -> LaurentInt {
        LaurentInt::new(0, self.coeffs.clone())
    }

    pub fn eval_i64(&self, z: i64) -> BigInt {
        let z = BigInt::from(z);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &z + c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            'z',
            self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)),
        )
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)))
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.iter().copied())
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert_eq!(p(&[1, 2, 2, 1]).mod2().to_string(), "1001");
        assert_eq!(&p(&[3, 0, 5]) + &IntPoly::zero(), p(&[3, 0, 5]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), IntPoly::zero());
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(IntPoly::geometric(0), IntPoly::zero());
        assert_eq!(IntPoly::geometric(1), IntPoly::one());
        assert_eq!(IntPoly::geometric(3), p(&[1, 1, 1]));
        let one_minus_z = p(&[1, -1]);
        for d in 0..=64usize {
            let lhs = &IntPoly::one() - &IntPoly::monomial(1, d);
            assert_eq!(lhs, &one_minus_z * &IntPoly::geometric(d), "d = {d}");
        }
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(
            p(&[1, 0, 0, -1]).div_exact_one_minus_z().unwrap(),
            p(&[1, 1, 1])
        );
        assert_eq!(
            IntPoly::zero().div_exact_one_minus_z().unwrap(),
            IntPoly::zero()
        );
        assert_eq!(p(&[1, 1]).div_exact_one_minus_z(), Err(Error::NotDivisible));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 2, 2, 1]).to_string(), "1 + 2*z + 2*z^2 + z^3");
        assert_eq!(p(&[1, 0, 0, -1]).to_string(), "1 - z^3");
        assert_eq!(p(&[0, -2]).to_string(), "-2*z");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = IntPoly::geometric(4).pow(60);
        assert_eq!(x.eval_i64(1), BigInt::from(4u8).pow(60));
        assert!(x.is_palindrome());
    }

    #[test]
    fn mod2_of_cube() {
        assert_eq!(p(&[1, 1]).pow(3).mod2(), IntPoly::geometric(4).mod2());
    }
}
