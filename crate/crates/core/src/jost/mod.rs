//! Jost solutions of the gauge-transformed Schrödinger recursion
//!
//! ```text
//! x_{m-1} - (1 + z) x_m + z (1 - q_m) x_{m+1} = 0,   x_m = 1 for m >= kN
//! ```
//!
//! computed three ways: a descending sweep (the oracle), the closed product
//! over support gaps, and the product over defect measures. All three are
//! polynomials in `z` with non-negative integer coefficients.

pub mod measures;

use crate::error::{Error, Result};
use crate::poly::{F2Poly, IntPoly, LaurentInt};
use crate::state::{CaState, Site, SupportList};

pub use measures::{
    boundary_laws_check, default_i_max, f2, f2_profile, f_measures, f_measures_full,
    reconstruct_potential, shift_law_check, sum_rules_check, MeasureVector,
};

/// `x_m(z)` for every `m` in `[m_min, top]`; values right of `top` are 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JostTable {
    pub support: SupportList,
    m_min: Site,
    values: Vec<IntPoly>,
    one: IntPoly,
}

impl JostTable {
    pub fn m_min(&self) -> Site {
        self.m_min
    }

    /// Highest stored site, `kN + 1` (or `m_min` for the zero state).
    pub fn top(&self) -> Site {
        self.m_min + self.values.len() as Site - 1
    }

    pub fn get(&self, m: Site) -> Option<&IntPoly> {
        if m < self.m_min {
            None
        } else if m > self.top() {
            Some(&self.one)
        } else {
            Some(&self.values[(m - self.m_min) as usize])
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Site, &IntPoly)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, x)| (self.m_min + i as Site, x))
    }
}

/// `x_{m-1} - (1 + z) x_m + z (1 - q_m) x_{m+1}`
pub fn recursion_residual(q_m: u8, prev: &IntPoly, cur: &IntPoly, next: &IntPoly) -> IntPoly {
    let one_plus_z = IntPoly::geometric(2);
    let mut r = prev - &(&one_plus_z * cur);
    if q_m == 0 {
        r = &r + &next.shift(1);
    }
    r
}

/// `x_{m-1} + (1 + z) x_m + z (1 + q_m) x_{m+1}`, to be read mod 2.
pub fn recursion_residual_mod2(q_m: u8, prev: &IntPoly, cur: &IntPoly, next: &IntPoly) -> F2Poly {
    let r = prev + &(&IntPoly::geometric(2) * cur);
    let r = &r + &next.shift(1);
    let r = if q_m == 1 { &r + &next.shift(1) } else { r };
    r.mod2()
}

/// Descending sweep `x_{m-1} = (1 + z) x_m - z (1 - q_m) x_{m+1}` from the
/// normalization `x_{kN} = x_{kN+1} = 1` down to `m_min`.
pub fn jost_sweep(state: &CaState, m_min: Site) -> JostTable {
    let support = state.support();
    let Some(kn) = support.last() else {
        return JostTable {
            support,
            m_min,
            values: vec![IntPoly::one()],
            one: IntPoly::one(),
        };
    };
    let m_min = m_min.min(kn + 1);
    let len = (kn + 1 - m_min + 1) as usize;
    let mut values = vec![IntPoly::zero(); len];
    let idx = |m: Site| (m - m_min) as usize;
    for m in kn.max(m_min)..=kn + 1 {
        values[idx(m)] = IntPoly::one();
    }
    let one_plus_z = IntPoly::geometric(2);
    let mut m = kn;
    while m > m_min {
        let cur = &values[idx(m)];
        let mut prev = &one_plus_z * cur;
        if state.get(m) == 0 {
            prev = &prev - &values[idx(m + 1)].shift(1);
        }
        debug_assert!(recursion_residual(state.get(m), &prev, cur, &values[idx(m + 1)]).is_zero());
        values[idx(m - 1)] = prev;
        m -= 1;
    }
    JostTable {
        support,
        m_min,
        values,
        one: IntPoly::one(),
    }
}

/// Closed form: for `k_l <= m <= k_{l+1}`,
/// `x_m = G(k_{l+1} - m + 1) · Π_{j > l} G(k_{j+1} - k_j + 1)` with
/// `G(d) = 1 + z + ... + z^(d-1)`; `x_m = 1` for `m >= kN`.
pub fn jost_closed(state: &CaState, m: Site) -> IntPoly {
    let sites = state.support().sites;
    match sites.last() {
        Some(&kn) if m < kn => {}
        _ => return IntPoly::one(),
    }
    let j = sites.partition_point(|&k| k < m);
    let mut x = IntPoly::geometric((sites[j] - m + 1) as usize);
    for w in sites[j..].windows(2) {
        x = &x * &IntPoly::geometric((w[1] - w[0] + 1) as usize);
    }
    x
}

/// Product over measures: `x_m = Π_i G(i + 1)^{f_i(m)}`.
pub fn jost_product(state: &CaState, m: Site) -> IntPoly {
    let mv = f_measures_full(state, m);
    mv.values
        .iter()
        .enumerate()
        .filter(|(_, &f)| f > 0)
        .fold(IntPoly::one(), |acc, (k, &f)| {
            &acc * &IntPoly::geometric(k + 2).pow(f)
        })
}

/// Trivial solution in `z`: `(1 - z^{kN-m}) / (1 - 1/z)` for `m > kN`, zero otherwise.
pub fn trivial_solution(kn: Site, m: Site) -> LaurentInt {
    if m <= kn {
        return LaurentInt::zero();
    }
    // 1 + z^-1 + ... + z^-(d-1)
    let d = (m - kn) as usize;
    LaurentInt::new(1 - d as i64, vec![1; d])
}

/// Checks the recursion for the trivial solution at site `m`.
pub fn trivial_recursion_check(state: &CaState, m: Site) -> Result<bool> {
    let (_, kn) = state.borders().ok_or(Error::ZeroState)?;
    let x = |n| trivial_solution(kn, n);
    let mut r = &x(m - 1) - &(&LaurentInt::new(0, [1, 1]) * &x(m));
    if state.get(m) == 0 {
        r = &r + &x(m + 1).shift(1);
    }
    Ok(r.is_zero())
}

/// Checks the homogeneous summation equation
/// `x0_l = Σ_{k <= l} q_k (1 - z^{k-l}) / (1 - 1/z) · x0_{k+1}`.
pub fn trivial_homogeneous_check(state: &CaState, l: Site) -> Result<bool> {
    let (_, kn) = state.borders().ok_or(Error::ZeroState)?;
    let mut rhs = LaurentInt::zero();
    for k in state.support().sites.into_iter().filter(|&k| k <= l) {
        // (1 - z^{-d}) / (1 - z^{-1}) with d = l - k
        let kernel = trivial_solution(0, l - k);
        rhs = &rhs + &(&kernel * &trivial_solution(kn, k + 1));
    }
    Ok(rhs == trivial_solution(kn, l))
}

/// `x_m - z^{kN} x̃_m == θ(m >= kN) (1 - 1/z) x0_m` with `x̃_m(z) = z^{-m} x_m(1/z)`.
pub fn reflection_relation_check(state: &CaState, m: Site) -> Result<bool> {
    let (_, kn) = state.borders().ok_or(Error::ZeroState)?;
    let x = jost_closed(state, m).to_laurent();
    let lhs = &x - &x.substitute_inverse(kn - m);
    let rhs = if m >= kn {
        &LaurentInt::new(-1, [-1, 1]) * &trivial_solution(kn, m)
    } else {
        LaurentInt::zero()
    };
    Ok(lhs == rhs)
}

/// Single-island mod-2 form
/// `x_m ≡ (1 + z)^{kN - m - 2 f_2(m)} (1 + z + z²)^{f_2(m)}`, valid for `k1 - 2 <= m <= kN`.
pub fn jost_mod2_island(state: &CaState, m: Site) -> Result<F2Poly> {
    let islands = state.islands();
    if islands.len() != 1 {
        return Err(Error::NotSingleIsland(islands.len()));
    }
    let (k1, kn) = (islands[0].k1, islands[0].kn);
    if m < k1 - 2 || m > kn {
        return Err(Error::OutsideWindow {
            m,
            lo: k1 - 2,
            hi: kn,
        });
    }
    let mv = f_measures(state, m, 3);
    let exponent = kn - m - 2 * mv.f(2) as Site;
    debug_assert_eq!(exponent, (mv.f(1) + 3 * mv.f(3)) as Site);
    assert!(exponent >= 0, "negative (1+z) exponent at m = {m}");
    Ok(&F2Poly::one_plus_z().pow(exponent as u64) * &F2Poly::one_plus_z_plus_z2().pow(mv.f(2)))
}

/// Coefficient of `z` in `x_m`; equals the number of units right of `m`.
pub fn asymptotic_tail_sum(state: &CaState, m: Site) -> u64 {
    let c = jost_closed(state, m).coeff(1);
    u64::try_from(c).expect("z-coefficient is a small non-negative count")
}

/// `[z] x_m = Σ_{j > m} q_j` and `[z](x_{m-1} - x_m) = q_m`.
pub fn asymptotics_check(state: &CaState, m: Site) -> bool {
    let tail = state.support().sites.iter().filter(|&&j| j > m).count() as u64;
    let diff = &jost_closed(state, m - 1) - &jost_closed(state, m);
    asymptotic_tail_sum(state, m) == tail && diff.coeff(1) == state.get(m).into()
}

/// Monodromy data of the Jost solution left of the support:
/// `x_m = a(z) + z^{-m} b(z)` for `m <= k1`, with `(1 - z) a = x_{k1}` and
/// `b = -z^{k1 + 1} a`. Both are carried through `x_{k1}` and `k1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyRecord {
    pub k1: Site,
    pub x_k1: IntPoly,
}

impl MonodromyRecord {
    /// `(1 - z) a(z)`
    pub fn a_numerator(&self) -> LaurentInt {
        self.x_k1.to_laurent()
    }

    /// `(1 - z) b(z) = -z^{k1 + 1} x_{k1}`
    pub fn b_numerator(&self) -> LaurentInt {
        -&self.x_k1.to_laurent().shift(self.k1 + 1)
    }

    pub fn x_k1_mod2(&self) -> F2Poly {
        self.x_k1.mod2()
    }

    /// Checks `x_m = x_{k1} (1 - z^{k1 - m + 1}) / (1 - z)` and
    /// `(1 - z) x_m = (1 - z) a + z^{-m} (1 - z) b` at `m = k1, k1 - 1, k1 - 2`.
    pub fn check_left_shape(&self, state: &CaState) -> Result<bool> {
        let one_minus_z = LaurentInt::new(0, [1, -1]);
        for m in [self.k1, self.k1 - 1, self.k1 - 2] {
            let d = (self.k1 - m + 1) as usize;
            let factor = &IntPoly::one() - &IntPoly::monomial(1, d);
            let from_a1 = (&self.x_k1 * &factor).div_exact_one_minus_z()?;
            let closed = jost_closed(state, m);
            if from_a1 != closed {
                return Ok(false);
            }
            let lhs = &one_minus_z * &closed.to_laurent();
            let rhs = &self.a_numerator() + &self.b_numerator().shift(-m);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn monodromy(state: &CaState) -> Result<MonodromyRecord> {
    let (k1, _) = state.borders().ok_or(Error::ZeroState)?;
    Ok(MonodromyRecord {
        k1,
        x_k1: jost_closed(state, k1),
    })
}
