//! Orbit census over all single islands up to a given width.

use std::fmt;

use crate::evolution::{step, RuleForm};
use crate::invariants::{invariant_record, InvariantRecord};
use crate::state::CaState;

/// Widest island the census accepts.
pub const MAX_CENSUS_WIDTH: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    /// Bits of the island, `k1 = 0`.
    pub pattern: String,
    pub width: usize,
    pub period: usize,
    pub record: InvariantRecord,
    /// Every state on the orbit has the same invariant record.
    pub orbit_consistent: bool,
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<w$} width={} period={} f2={} parity={} xk1={}",
            self.pattern,
            self.width,
            self.period,
            self.record.f2_k1,
            self.record.n_parity,
            self.record.x_k1_mod2,
            w = self.width.max(8)
        )
    }
}

/// Every single island anchored at 0 with width `1..=max_width`, ordered by
/// width and then bitstring.
pub fn single_islands(max_width: usize) -> impl Iterator<Item = CaState> {
    (1..=max_width).flat_map(|w| {
        let inner = w.saturating_sub(2);
        (0u64..1 << inner).filter_map(move |mid| {
            let mut cells = vec![0u8; w];
            cells[0] = 1;
            cells[w - 1] = 1;
            // most significant bit first so numeric order matches bitstring order
            for i in 0..inner {
                cells[1 + i] = ((mid >> (inner - 1 - i)) & 1) as u8;
            }
            let s = CaState::new(0, cells);
            s.is_single_island().then_some(s)
        })
    })
}

/// Steps until the orbit returns to `state`. Step is a bijection, so the
/// first repeat is always the starting state.
pub fn orbit(state: &CaState, limit: usize) -> Option<Vec<CaState>> {
    let mut members = vec![state.clone()];
    let mut cur = step(state, RuleForm::Mod2);
    while cur != *state {
        if members.len() >= limit {
            return None;
        }
        members.push(cur.clone());
        cur = step(&cur, RuleForm::Mod2);
    }
    Some(members)
}

/// `2^(width - 2)` (1 for widths below 3): the number of configurations with both borders fixed.
pub fn period_bound(width: usize) -> usize {
    1usize << width.saturating_sub(2)
}

pub fn census(max_width: usize) -> Vec<CensusRow> {
    assert!(
        max_width <= MAX_CENSUS_WIDTH,
        "census width {max_width} exceeds {MAX_CENSUS_WIDTH}"
    );
    single_islands(max_width)
        .map(|s| {
            let width = s.width();
            let members = orbit(&s, period_bound(width)).expect("orbit closes within 2^(width-2)");
            let record = invariant_record(&s).remove(0);
            let orbit_consistent = members
                .iter()
                .all(|m| invariant_record(m) == [record.clone()]);
            CensusRow {
                pattern: s.bits(),
                width,
                period: members.len(),
                record,
                orbit_consistent,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row<'a>(rows: &'a [CensusRow], p: &str) -> &'a CensusRow {
        rows.iter().find(|r| r.pattern == p).unwrap()
    }

    #[test]
    fn enumeration_is_ordered_and_filtered() {
        let pats: Vec<String> = single_islands(5).map(|s| s.bits()).collect();
        assert_eq!(&pats[..4], ["1", "11", "101", "111"]);
        assert!(!pats.contains(&"10001".to_string()));
        assert!(pats.contains(&"1001".to_string()));
        assert_eq!(pats.len(), 1 + 1 + 2 + 4 + 7);
    }

    #[test]
    fn census_examples() {
        let rows = census(6);
        assert_eq!(row(&rows, "1").period, 1);
        assert_eq!(row(&rows, "1101").period, 2);
        assert_eq!(row(&rows, "1011").period, 2);
        assert_eq!(row(&rows, "111").period, 1);
        assert_eq!(row(&rows, "101").period, 1);
        assert!(rows.iter().all(|r| r.orbit_consistent));
        assert!(rows.iter().all(|r| r.period <= period_bound(r.width)));
    }
}
