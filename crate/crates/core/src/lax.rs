//! Windowed Lax matrices and the mod-2 checks built on them.
//!
//! ```text
//! L_{m,n} = δ_{m,n+1} + (1 + q_m) δ_{m,n-1} - (w + 1/w) δ_{m,n}
//! A_{m,n} = δ_{m,n} - δ_{m+2,n} q̂_{m-1} q_{m+2}
//! ```
//!
//! `L(q̂) A = A L(q)` holds only after reducing coefficients mod 2. Entries are
//! kept over ℤ so the unreduced residual can still be inspected.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::evolution::{step, RuleForm};
use crate::jost::{jost_sweep, recursion_residual_mod2, JostTable};
use crate::poly::LaurentInt;
use crate::state::{CaState, Site};

/// Default number of rows/columns excluded at each window edge.
pub const DEFAULT_MARGIN: Site = 2;

/// Square band matrix on sites `lo..=hi`, entries Laurent polynomials in `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWindow {
    pub lo: Site,
    pub hi: Site,
    pub entries: BTreeMap<(Site, Site), LaurentInt>,
}

impl OperatorWindow {
    fn empty(lo: Site, hi: Site) -> Self {
        Self {
            lo,
            hi,
            entries: BTreeMap::new(),
        }
    }

    fn insert(&mut self, row: Site, col: Site, v: LaurentInt) {
        if (self.lo..=self.hi).contains(&col) && (self.lo..=self.hi).contains(&row) {
            self.entries.insert((row, col), v);
        }
    }

    pub fn get(&self, row: Site, col: Site) -> LaurentInt {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    /// Truncated product: the inner index runs over the window only.
    pub fn mul(&self, rhs: &OperatorWindow) -> OperatorWindow {
        assert_eq!((self.lo, self.hi), (rhs.lo, rhs.hi), "windows differ");
        let mut by_row: BTreeMap<Site, Vec<(Site, &LaurentInt)>> = BTreeMap::new();
        for (&(r, c), v) in &rhs.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = OperatorWindow::empty(self.lo, self.hi);
        for (&(i, k), a) in &self.entries {
            let Some(row) = by_row.get(&k) else { continue };
            for &(j, b) in row {
                let slot = out.entries.entry((i, j)).or_default();
                *slot = &*slot + &(a * b);
            }
        }
        out.entries.retain(|_, v| !v.is_zero());
        out
    }

    pub fn sub(&self, rhs: &OperatorWindow) -> OperatorWindow {
        let mut out = self.clone();
        for (&k, v) in &rhs.entries {
            let slot = out.entries.entry(k).or_default();
            *slot = &*slot - v;
        }
        out.entries.retain(|_, v| !v.is_zero());
        out
    }
}

fn check_window(state: &CaState, lo: Site, hi: Site) -> Result<()> {
    let (need_lo, need_hi) = match state.borders() {
        Some((k1, kn)) => (k1 - 2, kn + 2),
        None => (lo.min(hi), lo.max(hi)),
    };
    if lo > need_lo || hi < need_hi || lo > hi {
        return Err(Error::WindowTooSmall {
            lo,
            hi,
            need_lo,
            need_hi,
        });
    }
    Ok(())
}

pub fn build_l(state: &CaState, lo: Site, hi: Site) -> Result<OperatorWindow> {
    check_window(state, lo, hi)?;
    let diag = LaurentInt::new(-1, [-1, 0, -1]);
    let mut l = OperatorWindow::empty(lo, hi);
    for m in lo..=hi {
        l.insert(m, m - 1, LaurentInt::one());
        l.insert(m, m, diag.clone());
        l.insert(m, m + 1, LaurentInt::constant(1 + state.get(m)));
    }
    Ok(l)
}

pub fn build_a(state: &CaState, evolved: &CaState, lo: Site, hi: Site) -> Result<OperatorWindow> {
    check_window(state, lo, hi)?;
    if step(state, RuleForm::Mod2) != *evolved {
        return Err(Error::NotEvolved);
    }
    let mut a = OperatorWindow::empty(lo, hi);
    for m in lo..=hi {
        a.insert(m, m, LaurentInt::one());
        if evolved.get(m - 1) * state.get(m + 2) == 1 {
            a.insert(m, m + 2, LaurentInt::constant(-1));
        }
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxReport {
    pub lo: Site,
    pub hi: Site,
    pub margin: Site,
    /// Interior entries whose residual is nonzero mod 2.
    pub violations: Vec<(Site, Site, LaurentInt)>,
    /// Interior entries whose residual is nonzero over ℤ.
    pub exact_nonzero: usize,
}

impl LaxReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LaxReport {
    /// One `(<row>,<col>): <laurent polynomial>` line per violation; empty on pass.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, c, v) in &self.violations {
            writeln!(f, "({r},{c}): {}", v.display_in('w'))?;
        }
        Ok(())
    }
}

/// Computes `R = L(q̂) A - A L(q)` on a window extending `margin` past
/// `[k1 - 2, kN + 2]` and checks that every entry at least `margin` away
/// from the window edges vanishes mod 2. Margins below 2 are raised to 2.
pub fn verify_lax(state: &CaState, margin: Site) -> LaxReport {
    let margin = margin.max(DEFAULT_MARGIN);
    let (lo, hi) = match state.borders() {
        Some((k1, kn)) => (k1 - 2 - margin, kn + 2 + margin),
        None => (-2 - margin, 2 + margin),
    };
    let evolved = step(state, RuleForm::Mod2);
    let l = build_l(state, lo, hi).expect("window covers support");
    let l_hat = build_l(&evolved, lo, hi).expect("borders are conserved");
    let a = build_a(state, &evolved, lo, hi).expect("evolved by construction");
    let residual = l_hat.mul(&a).sub(&a.mul(&l));
    let interior = lo + margin..=hi - margin;
    let mut violations = Vec::new();
    let mut exact_nonzero = 0;
    for (&(r, c), v) in &residual.entries {
        if !interior.contains(&r) || !interior.contains(&c) {
            continue;
        }
        exact_nonzero += 1;
        if !v.is_zero_mod2() {
            violations.push((r, c, v.clone()));
        }
    }
    LaxReport {
        lo,
        hi,
        margin,
        violations,
        exact_nonzero,
    }
}

/// `x_{m-1} + (1 + z) x_m + z (1 + q_m) x_{m+1} ≡ 0 (mod 2)` for `m` in `[m_min + 1, top]`.
pub fn schrodinger_residual_mod2(state: &CaState, table: &JostTable) -> bool {
    (table.m_min() + 1..=table.top()).all(|m| {
        let (Some(a), Some(b), Some(c)) = (table.get(m - 1), table.get(m), table.get(m + 1)) else {
            return false;
        };
        recursion_residual_mod2(state.get(m), a, b, c).is_zero()
    })
}

/// Jost transport under one step: `x̂_m ≡ x_m + z q̂_{m-1} q_{m+2} x_{m+2} (mod 2)`
/// for `m` in `[k1 - 4, kN + 1]`.
pub fn jost_transport_check(state: &CaState) -> Result<bool> {
    let (k1, kn) = state.borders().ok_or(Error::ZeroState)?;
    let evolved = step(state, RuleForm::Mod2);
    let lo = k1 - 4;
    let before = jost_sweep(state, lo);
    let after = jost_sweep(&evolved, lo);
    for m in lo..=kn + 1 {
        let x = before.get(m).unwrap();
        let mut moved = x.clone();
        if evolved.get(m - 1) * state.get(m + 2) == 1 {
            moved = &moved + &before.get(m + 2).unwrap().shift(1);
        }
        if after.get(m).unwrap().mod2() != moved.mod2() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sites where `q̂_{m-1} q_{m+2} = 1`, i.e. where `A` couples `m` to `m + 2`.
pub fn coupling_sites(state: &CaState, evolved: &CaState) -> Vec<Site> {
    let Some((k1, kn)) = state.borders() else {
        return Vec::new();
    };
    (k1 - 2..=kn)
        .filter(|&m| evolved.get(m - 1) * state.get(m + 2) == 1)
        .collect()
}
