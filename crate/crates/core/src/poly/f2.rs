use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Polynomial over 𝔽₂, bit `k` of the packed words is the coefficient of `z^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct F2Poly {
    words: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// Builds from coefficient bits, lowest power first.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        let mut words = Vec::new();
        for (k, b) in bits.into_iter().enumerate() {
            if k % 64 == 0 {
                words.push(0);
            }
            if b & 1 == 1 {
                words[k / 64] |= 1 << (k % 64);
            }
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, k: usize) -> u8 {
        self.words
            .get(k / 64)
            .map_or(0, |w| ((w >> (k % 64)) & 1) as u8)
    }

    pub fn shift(&self, k: usize) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => {
                Self::from_bits((0..=d + k).map(|i| if i < k { 0 } else { self.bit(i - k) }))
            }
        }
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

    /// `1 + z`
    pub fn one_plus_z() -> Self {
        Self { words: vec![0b11] }
    }

    /// `1 + z + z^2`
    pub fn one_plus_z_plus_z2() -> Self {
        Self { words: vec![0b111] }
    }
}

impl fmt::Display for F2Poly {
    /// Bitstring, lowest power first; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            None => f.write_str("0"),
            Some(d) => {
                for k in 0..=d {
                    f.write_str(if self.bit(k) == 1 { "1" } else { "0" })?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for F2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, b) in s.bytes().enumerate() {
            match b {
                b'0' => bits.push(0),
                b'1' => bits.push(1),
                other => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("expected '0' or '1', found {:?}", other as char),
                    })
                }
            }
        }
        Ok(Self::from_bits(bits))
    }
}

impl Add for &F2Poly {
    type Output = F2Poly;

    fn add(self, rhs: &F2Poly) -> F2Poly {
        let n = self.words.len().max(rhs.words.len());
        let mut p = F2Poly {
            words: (0..n)
                .map(|i| self.words.get(i).unwrap_or(&0) ^ rhs.words.get(i).unwrap_or(&0))
                .collect(),
        };
        p.trim();
        p
    }
}

impl Mul for &F2Poly {
    type Output = F2Poly;

    /// Schoolbook carry-less product, one word of `rhs` shifted per set bit.
    fn mul(self, rhs: &F2Poly) -> F2Poly {
        if self.is_zero() || rhs.is_zero() {
            return F2Poly::zero();
        }
        let mut out = vec![0u64; self.words.len() + rhs.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            let mut a = a;
            while a != 0 {
                let s = a.trailing_zeros() as usize;
                a &= a - 1;
                for (j, &b) in rhs.words.iter().enumerate() {
                    out[i + j] ^= b << s;
                    if s > 0 {
                        out[i + j + 1] ^= b >> (64 - s);
                    }
                }
            }
        }
        let mut p = F2Poly { words: out };
        p.trim();
        p
    }
}

impl Add for F2Poly {
    type Output = F2Poly;
    fn add(self, rhs: F2Poly) -> F2Poly {
        &self + &rhs
    }
}

impl Mul for F2Poly {
    type Output = F2Poly;
    fn mul(self, rhs: F2Poly) -> F2Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> F2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(f("1001").to_string(), "1001");
        assert_eq!(f("0100").to_string(), "01");
        assert_eq!(F2Poly::zero().to_string(), "0");
        assert!(f("000").is_zero());
        assert!("10x".parse::<F2Poly>().is_err());
    }

    #[test]
    fn third_geometric_is_cube() {
        assert_eq!(F2Poly::one_plus_z().pow(3), f("1111"));
    }

    #[test]
    fn product_crosses_word_boundary() {
        let a = F2Poly::one_plus_z().pow(64);
        // (1+z)^64 = 1 + z^64 over F2
        assert_eq!(a.degree(), Some(64));
        assert_eq!((a.bit(0), a.bit(1), a.bit(64)), (1, 0, 1));
        let b = F2Poly::one_plus_z().pow(100);
        assert_eq!(&a * &F2Poly::one_plus_z().pow(36), b);
        assert_eq!(b.shift(70).degree(), Some(170));
    }

    #[test]
    fn addition_cancels() {
        let a = f("10110111");
        assert!((&a + &a).is_zero());
    }
}
