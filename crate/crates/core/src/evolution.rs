//! One time step of the filter automaton.
//!
//! The update at site `m` reads already-updated values at `m - 1` and `m - 2`,
//! so a step is a left-to-right sweep. Outside an island everything is zero,
//! and the sweep is seeded with `q̂_m = 0` for `m < k1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{CaState, Site};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RuleForm {
    /// `q̂_m = q_m + q̂_{m-2} q_{m+1} + q̂_{m-1} q_{m+2}  (mod 2)`
    #[default]
    Mod2,
    /// `q̂_m = q_m - |q̂_{m-1} q_{m+2} - q̂_{m-2} q_{m+1}| (2 q_m - 1)` in plain integers.
    Exact,
}

impl fmt::Display for RuleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleForm::Mod2 => "mod2",
            RuleForm::Exact => "exact",
        })
    }
}

impl FromStr for RuleForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mod2" => Ok(RuleForm::Mod2),
            "exact" => Ok(RuleForm::Exact),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown rule form {s:?} (expected mod2 or exact)"),
            }),
        }
    }
}

/// Mod-2 update at one site.
#[inline]
pub fn rule_mod2(q: u8, qh_m2: u8, q_p1: u8, qh_m1: u8, q_p2: u8) -> u8 {
    (q + qh_m2 * q_p1 + qh_m1 * q_p2) & 1
}

/// Exact update at one site; returns the raw integer value so callers can
/// check that it stays in `{0, 1}`.
#[inline]
pub fn rule_exact(q: i64, qh_m2: i64, q_p1: i64, qh_m1: i64, q_p2: i64) -> i64 {
    q - (qh_m1 * q_p2 - qh_m2 * q_p1).abs() * (2 * q - 1)
}

/// Sweeps `state` over `[lo, hi]`, treating updated values left of `lo` as 0.
fn sweep(state: &CaState, lo: Site, hi: Site, form: RuleForm) -> Result<Vec<u8>> {
    let mut out = vec![0u8; (hi - lo + 1) as usize];
    let hat = |out: &[u8], n: Site| -> u8 {
        if n < lo {
            0
        } else {
            out[(n - lo) as usize]
        }
    };
    for m in lo..=hi {
        let q = state.get(m);
        let (q1, q2) = (state.get(m + 1), state.get(m + 2));
        let (h1, h2) = (hat(&out, m - 1), hat(&out, m - 2));
        let v = match form {
            RuleForm::Mod2 => rule_mod2(q, h2, q1, h1, q2),
            RuleForm::Exact => {
                let v = rule_exact(q as i64, h2 as i64, q1 as i64, h1 as i64, q2 as i64);
                if !(0..=1).contains(&v) {
                    return Err(Error::ExactRuleRange { site: m, value: v });
                }
                v as u8
            }
        };
        out[(m - lo) as usize] = v;
    }
    Ok(out)
}

/// Exact-form step that reports a value outside `{0, 1}` instead of panicking.
pub fn try_step(state: &CaState, form: RuleForm) -> Result<CaState> {
    let mut sites = Vec::with_capacity(state.count());
    for island in state.islands() {
        let bits = sweep(&island.state, island.k1, island.kn, form)?;
        sites.extend(
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(i, _)| island.k1 + i as Site),
        );
    }
    Ok(CaState::from_support(sites))
}

/// One time step, applied island by island.
pub fn step(state: &CaState, form: RuleForm) -> CaState {
    try_step(state, form).expect("exact rule left {0, 1}")
}

/// Single sweep over the whole window `[k1 - 2, kN + 2]`, ignoring islands.
pub fn step_whole(state: &CaState, form: RuleForm) -> Result<CaState> {
    let Some((k1, kn)) = state.borders() else {
        return Ok(CaState::zero());
    };
    let bits = sweep(state, k1 - 2, kn + 2, form)?;
    Ok(CaState::new(k1 - 2, bits))
}

/// Inverse of [`step`]: reflect, step, reflect back.
pub fn reverse_step(state: &CaState) -> CaState {
    step(&state.reflect(), RuleForm::Mod2).reflect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub form: RuleForm,
    /// `states[0]` is the initial state; `states[t + 1] = step(states[t])`.
    pub states: Vec<CaState>,
}

impl Trajectory {
    pub fn initial(&self) -> &CaState {
        &self.states[0]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Checks `states[t + 1] == step(states[t])` for every t.
    pub fn is_consistent(&self) -> bool {
        self.states
            .windows(2)
            .all(|w| step(&w[0], self.form) == w[1])
    }
}

pub fn evolve(state: &CaState, steps: usize, form: RuleForm) -> Trajectory {
    let mut states = Vec::with_capacity(steps + 1);
    states.push(state.clone());
    for t in 0..steps {
        let next = step(&states[t], form);
        states.push(next);
    }
    Trajectory { form, states }
}
