use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{write_terms, IntPoly};

/// Laurent polynomial `Σ_k coeffs[k] v^(low + k)` over ℤ.
///
/// Normalized: either zero (`low == 0`, no coefficients) or both end
/// coefficients are nonzero. The variable name is only used for display.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentInt {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentInt {
    pub fn new<C: Into<BigInt>>(low: i64, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self {
            low,
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(0, [c.into()])
    }

    /// `c * v^k`
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::new(k, [c.into()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        if self.coeffs.is_empty() {
            self.low = 0;
        } else {
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (`None` for zero).
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `v^pivot · p(1/v)`.
    pub fn substitute_inverse(&self, pivot: i64) -> Self {
        let Some(high) = self.high() else {
            return Self::zero();
        };
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            low: pivot - high,
            coeffs,
        }
    }

    /// Coefficients reduced to `{0, 1}`.
    pub fn reduce_mod2(&self) -> Self {
        Self::new(
            self.low,
            self.coeffs.iter().map(|c| BigInt::from(c.bit(0) as u8)),
        )
    }

    pub fn is_zero_mod2(&self) -> bool {
        self.coeffs.iter().all(|c| !c.bit(0))
    }

    /// Ordinary polynomial, if no negative exponents appear.
    pub fn to_poly(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        (self.low >= 0).then(|| {
            IntPoly::from_coeffs(
                std::iter::repeat_n(BigInt::zero(), self.low as usize)
                    .chain(self.coeffs.iter().cloned()),
            )
        })
    }

    /// Renders with an explicit variable name (`z` or `w`).
    pub fn display_in(&self, var: char) -> impl fmt::Display + '_ {
        struct D<'a>(&'a LaurentInt, char);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, self.1, self.0.terms())
            }
        }
        D(self, var)
    }

    fn combine(&self, rhs: &Self, sign: i8) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign > 0 { rhs.clone() } else { -rhs };
        }
        let low = self.low.min(rhs.low);
        let high = self.high().unwrap().max(rhs.high().unwrap());
        Self::new(
            low,
            (low..=high).map(|k| {
                if sign > 0 {
                    self.coeff(k) + rhs.coeff(k)
                } else {
                    self.coeff(k) - rhs.coeff(k)
                }
            }),
        )
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, 'z', self.terms())
    }
}

impl From<&IntPoly> for LaurentInt {
    fn from(p: &IntPoly) -> Self {
        p.to_laurent()
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        self.combine(rhs, 1)
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        self.combine(rhs, -1)
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        if self.is_zero() || rhs.is_zero() {
            return LaurentInt::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentInt::new(self.low + rhs.low, out)
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: LaurentInt) -> LaurentInt {
        &self + &rhs
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: LaurentInt) -> LaurentInt {
        &self - &rhs
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

impl One for LaurentInt {
    fn one() -> Self {
        LaurentInt::constant(1)
    }
}

impl Zero for LaurentInt {
    fn zero() -> Self {
        LaurentInt::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitute_inverse_examples() {
        let p = LaurentInt::new(0, [1, 1]);
        assert_eq!(p.substitute_inverse(1), p);
        assert_eq!(LaurentInt::one().substitute_inverse(0), LaurentInt::one());
        let q = LaurentInt::new(-3, [2, 0, 5, 7]);
        assert_eq!(q.substitute_inverse(4).substitute_inverse(4), q);
        // z^2 * (2 z^3 + 5 z^1 + 7 z^0 ... ) reversed
        assert_eq!(q.substitute_inverse(0), LaurentInt::new(0, [7, 5, 0, 2]));
    }

    #[test]
    fn arithmetic_with_negative_exponents() {
        let w = LaurentInt::monomial(1, 1);
        let winv = LaurentInt::monomial(1, -1);
        let s = &w + &winv;
        assert_eq!((&s * &s).to_string(), "z^-2 + 2 + z^2");
        assert!((&s - &s).is_zero());
        assert_eq!((&w * &winv), LaurentInt::one());
        assert_eq!(s.display_in('w').to_string(), "w^-1 + w");
    }

    #[test]
    fn normalization_and_mod2() {
        let p = LaurentInt::new(-2, [0, 0, 3, 2, 0]);
        assert_eq!((p.low(), p.high()), (Some(0), Some(1)));
        assert_eq!(p.reduce_mod2(), LaurentInt::one());
        assert!(LaurentInt::new(-4, [2, -4, 0]).is_zero_mod2());
        assert_eq!(
            LaurentInt::new(0, [1, 2]).to_poly(),
            Some(IntPoly::from_coeffs([1, 2]))
        );
        assert_eq!(LaurentInt::monomial(1, -1).to_poly(), None);
    }
}
