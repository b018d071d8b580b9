//! Exact polynomial arithmetic in one spectral variable.
//!
//! * [`IntPoly`]: dense polynomials over ℤ with arbitrary-precision coefficients.
//! * [`F2Poly`]: polynomials over 𝔽₂ packed into 64-bit words.
//! * [`LaurentInt`]: Laurent polynomials over ℤ (negative exponents allowed).

mod f2;
mod int;
mod laurent;

pub use f2::F2Poly;
pub use int::IntPoly;
pub use laurent::LaurentInt;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Writes `Σ c_k var^k` in ascending powers, e.g. `1 + 2*z + 2*z^2 + z^3`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    var: char,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        first = false;
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{mag}*{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{mag}*{var}^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
