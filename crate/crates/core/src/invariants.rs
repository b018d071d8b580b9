//! Integrals of motion, per island.
//!
//! Exact: the borders `k1`, `kN` and the single-defect count `f_2(k1)`.
//! Mod 2: the parity of `N` and `x_{k1}(z)`, which fixes the monodromy
//! coefficients `a(z)`, `b(z)` mod 2.

use std::fmt;

use crate::error::{Error, Result};
use crate::evolution::{step, RuleForm, Trajectory};
use crate::jost::{f2, f_measures, jost_closed, monodromy};
use crate::poly::{F2Poly, IntPoly, LaurentInt};
use crate::state::{CaState, Site};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantRecord {
    pub k1: Site,
    pub kn: Site,
    pub f2_k1: u64,
    pub n_parity: u8,
    pub x_k1_mod2: F2Poly,
}

impl fmt::Display for InvariantRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "island [{},{}]: f2={} parity={} xk1={}",
            self.k1, self.kn, self.f2_k1, self.n_parity, self.x_k1_mod2
        )
    }
}

/// Number of `1,0,1` patterns starting at `n >= from`, read straight off the bits.
fn single_defects_from(state: &CaState, from: Site) -> u64 {
    let Some((_, kn)) = state.borders() else {
        return 0;
    };
    (from..=kn)
        .filter(|&n| state.get(n) == 1 && state.get(n + 1) == 0 && state.get(n + 2) == 1)
        .count() as u64
}

/// `(1 + z)^{kN - k1 - 2 f2} (1 + z + z²)^{f2}` over 𝔽₂.
pub fn x_k1_mod2_formula(k1: Site, kn: Site, f2_k1: u64) -> F2Poly {
    let e = kn - k1 - 2 * f2_k1 as Site;
    assert!(e >= 0, "f2(k1) exceeds (kN - k1) / 2");
    &F2Poly::one_plus_z().pow(e as u64) * &F2Poly::one_plus_z_plus_z2().pow(f2_k1)
}

/// One record per island, ordered by position.
pub fn invariant_record(state: &CaState) -> Vec<InvariantRecord> {
    state
        .islands()
        .into_iter()
        .map(|island| {
            let (k1, kn) = (island.k1, island.kn);
            let f2_k1 = single_defects_from(&island.state, k1);
            let n_parity = ((kn - k1 + 1 + f2_k1 as Site) & 1) as u8;
            let x_k1_mod2 = x_k1_mod2_formula(k1, kn, f2_k1);
            assert_eq!(n_parity as usize, island.state.count() % 2, "N parity");
            assert_eq!(
                x_k1_mod2,
                jost_closed(&island.state, k1).mod2(),
                "x_k1 mod 2 for island at {k1}"
            );
            InvariantRecord {
                k1,
                kn,
                f2_k1,
                n_parity,
                x_k1_mod2,
            }
        })
        .collect()
}

/// `a` and `b` mod 2 agree whether taken from the exact monodromy of the
/// island or rebuilt from `(k1, x_{k1} mod 2)`.
pub fn determination_check(state: &CaState) -> bool {
    let records = invariant_record(state);
    state.islands().iter().zip(&records).all(|(island, rec)| {
        let Ok(mono) = monodromy(&island.state) else {
            return false;
        };
        let x = f2_to_laurent(&rec.x_k1_mod2);
        mono.a_numerator().reduce_mod2() == x
            && mono.b_numerator().reduce_mod2() == x.shift(rec.k1 + 1)
    })
}

fn f2_to_laurent(p: &F2Poly) -> LaurentInt {
    match p.degree() {
        None => LaurentInt::zero(),
        Some(d) => LaurentInt::new(0, (0..=d).map(|k| p.bit(k) as i64)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub time: usize,
    pub island: usize,
    pub what: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} island {}: {}", self.time, self.island, self.what)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryReport {
    pub initial: Vec<InvariantRecord>,
    pub first_violation: Option<Violation>,
    /// `(f_1(k1), f_3(k1))` per step per island; these are not conserved.
    pub f13_profile: Vec<Vec<(u64, u64)>>,
    /// Whether `x_{k1}(z)` also stayed constant over ℤ. Observed, not required.
    pub exact_x_k1_constant: bool,
}

impl TrajectoryReport {
    pub fn conserved(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl fmt::Display for TrajectoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.initial {
            writeln!(f, "{r}")?;
        }
        match &self.first_violation {
            None => writeln!(f, "conserved"),
            Some(v) => writeln!(f, "violation: {v}"),
        }
    }
}

pub fn check_trajectory(traj: &Trajectory) -> TrajectoryReport {
    let initial = invariant_record(traj.initial());
    let exact_x = |s: &CaState| -> Vec<IntPoly> {
        s.islands()
            .iter()
            .map(|i| jost_closed(&i.state, i.k1))
            .collect()
    };
    let x0 = exact_x(traj.initial());
    let mut first_violation = None;
    let mut f13_profile = Vec::with_capacity(traj.len());
    let mut exact_x_k1_constant = true;

    for (t, s) in traj.states.iter().enumerate() {
        f13_profile.push(
            s.islands()
                .iter()
                .map(|i| {
                    let mv = f_measures(&i.state, i.k1, 3);
                    (mv.f(1), mv.f(3))
                })
                .collect(),
        );
        if exact_x(s) != x0 {
            exact_x_k1_constant = false;
        }
        if first_violation.is_some() {
            continue;
        }
        let now = invariant_record(s);
        if now.len() != initial.len() {
            first_violation = Some(Violation {
                time: t,
                island: 0,
                what: format!("island count {} -> {}", initial.len(), now.len()),
            });
            continue;
        }
        for (i, (a, b)) in initial.iter().zip(&now).enumerate() {
            let what = if (a.k1, a.kn) != (b.k1, b.kn) {
                Some(format!(
                    "borders [{},{}] -> [{},{}]",
                    a.k1, a.kn, b.k1, b.kn
                ))
            } else if a.f2_k1 != b.f2_k1 {
                Some(format!("f2(k1) {} -> {}", a.f2_k1, b.f2_k1))
            } else if a.n_parity != b.n_parity {
                Some(format!("N parity {} -> {}", a.n_parity, b.n_parity))
            } else if a.x_k1_mod2 != b.x_k1_mod2 {
                Some(format!("x_k1 mod 2 {} -> {}", a.x_k1_mod2, b.x_k1_mod2))
            } else {
                None
            };
            if let Some(what) = what {
                first_violation = Some(Violation {
                    time: t,
                    island: i,
                    what,
                });
                break;
            }
        }
    }
    TrajectoryReport {
        initial,
        first_violation,
        f13_profile,
        exact_x_k1_constant,
    }
}

/// Checks `f̂_2(m) = f_2(m) + q̂_{m-1} q_{m+2} (2 q_{m+1} - 1)` on `[k1 - 2, kN]`,
/// that consecutive `f̂_2` differ by at most 1, and that
/// `q̂_m = 1 - |f̂_2(m-1) - f̂_2(m)|` recovers the stepped state there.
pub fn f2_transport_check(state: &CaState) -> Result<bool> {
    let islands = state.islands();
    if islands.len() != 1 {
        return Err(Error::NotSingleIsland(islands.len()));
    }
    let (k1, kn) = (islands[0].k1, islands[0].kn);
    let evolved = step(state, RuleForm::Mod2);
    let q = |n: Site| state.get(n) as i64;
    let qh = |n: Site| evolved.get(n) as i64;
    let f2_hat = |m: Site| f2(&evolved, m) as i64;
    for m in k1 - 2..=kn {
        let predicted = f2(state, m) as i64 + qh(m - 1) * q(m + 2) * (2 * q(m + 1) - 1);
        if predicted != f2_hat(m) {
            return Ok(false);
        }
        let jump = (f2_hat(m - 1) - f2_hat(m)).abs();
        if jump > 1 || 1 - jump != qh(m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest single island (k1 = 0, width <= `max_width`, in (width, bits)
/// order) for which `f_1(k1)` or `f_3(k1)` changes in one step.
pub fn find_nonconservation_witness(max_width: usize) -> Option<(CaState, CaState)> {
    for s in crate::census::single_islands(max_width) {
        let e = step(&s, RuleForm::Mod2);
        let before = f_measures(&s, 0, 3);
        let after = f_measures(&e, 0, 3);
        if before.f(1) != after.f(1) || before.f(3) != after.f(3) {
            return Some((s, e));
        }
    }
    None
}
