//! Defect measures `f_i(m)`.
//!
//! `f_i(m)` counts the `(i-1)`-defects (a `1`, exactly `i - 1` zeros, a `1`)
//! starting strictly right of `m`, plus one if the first unit right of `m`
//! sits at `m + i`. Computed here from support gaps; the literal bit-product
//! form is kept in the tests as an oracle.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::state::{CaState, Site};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureVector {
    pub site: Site,
    /// `values[i - 1] = f_i(site)`.
    pub values: Vec<u64>,
}

impl MeasureVector {
    /// `f_i`, zero past the stored range.
    pub fn f(&self, i: usize) -> u64 {
        assert!(i >= 1, "measures are indexed from 1");
        self.values.get(i - 1).copied().unwrap_or(0)
    }

    pub fn i_max(&self) -> usize {
        self.values.len()
    }

    /// Largest `i` with `f_i != 0`.
    pub fn highest_nonzero(&self) -> Option<usize> {
        self.values.iter().rposition(|&v| v != 0).map(|p| p + 1)
    }

    /// `Σ_i f_i`
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// `Σ_i i·f_i`
    pub fn weighted_total(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as u64 + 1) * v)
            .sum()
    }

    /// Copy truncated or zero-padded to `i_max` entries.
    pub fn resized(&self, i_max: usize) -> MeasureVector {
        let mut values = self.values.clone();
        values.resize(i_max, 0);
        MeasureVector {
            site: self.site,
            values,
        }
    }
}

impl fmt::Display for MeasureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "f{}={}", k + 1, v)?;
        }
        Ok(())
    }
}

/// Smallest `i_max` that captures every nonzero `f_i(m)`: the island cutoff
/// `kN - k1 + 2`, widened to `k1 - m` when `m` lies far left of the support.
pub fn default_i_max(state: &CaState, m: Site) -> usize {
    match state.borders() {
        None => 1,
        Some((k1, kn)) => (kn - k1 + 2).max(k1 - m).max(1) as usize,
    }
}

pub fn f_measures(state: &CaState, m: Site, i_max: usize) -> MeasureVector {
    let mut values = vec![0u64; i_max];
    let sites = state.support().sites;
    let start = sites.partition_point(|&k| k <= m);
    if let Some(&first) = sites.get(start) {
        let d = (first - m) as usize;
        if d <= i_max {
            values[d - 1] += 1;
        }
    }
    for w in sites[start..].windows(2) {
        let gap = (w[1] - w[0]) as usize;
        if gap <= i_max {
            values[gap - 1] += 1;
        }
    }
    MeasureVector { site: m, values }
}

/// Measures with [`default_i_max`] entries.
pub fn f_measures_full(state: &CaState, m: Site) -> MeasureVector {
    f_measures(state, m, default_i_max(state, m))
}

/// `f_2(m)`.
pub fn f2(state: &CaState, m: Site) -> u64 {
    f_measures(state, m, 2).values[1]
}

/// `Σ_i f_i(m) = Σ_{n > m} q_n` and `Σ_i i f_i(m) = max(kN - m, 0)`.
pub fn sum_rules_check(state: &CaState, m: Site) -> bool {
    let mv = f_measures_full(state, m);
    let tail = state.support().sites.iter().filter(|&&n| n > m).count() as u64;
    let expect_weighted = match state.borders() {
        Some((_, kn)) if m <= kn => (kn - m) as u64,
        _ => 0,
    };
    mv.total() == tail && mv.weighted_total() == expect_weighted
}

/// Shift law: for `k_l <= m <= k_{l+1}`, `f_i(m) = f_i(k_{l+1}) + δ(k_{l+1} - m, i)`.
/// Vacuously true right of the support.
pub fn shift_law_check(state: &CaState, m: Site) -> bool {
    let sites = state.support().sites;
    let Some(&next) = sites.get(sites.partition_point(|&k| k < m)) else {
        return true;
    };
    let i_max = default_i_max(state, m);
    let here = f_measures(state, m, i_max);
    let there = f_measures(state, next, i_max);
    (1..=i_max).all(|i| here.f(i) == there.f(i) + (next - m == i as Site) as u64)
}

/// Boundary laws: `f ≡ 0` for `m >= kN`; `f(kN - 1) = (1, 0, 0, ...)`;
/// `f_i(m) = δ(k1 - m, i)` for every `i >= kN - k1 + 2` and every `m` in `sites`.
pub fn boundary_laws_check(state: &CaState, sites: impl IntoIterator<Item = Site>) -> bool {
    let Some((k1, kn)) = state.borders() else {
        return sites
            .into_iter()
            .all(|m| f_measures(state, m, 8).values.iter().all(|&v| v == 0));
    };
    let cut = (kn - k1 + 2) as usize;
    let at_top = f_measures(state, kn - 1, cut);
    if at_top.f(1) != 1 || (2..=cut).any(|i| at_top.f(i) != 0) {
        return false;
    }
    sites.into_iter().all(|m| {
        let i_max = default_i_max(state, m) + 2;
        let mv = f_measures(state, m, i_max);
        if m >= kn && mv.values.iter().any(|&v| v != 0) {
            return false;
        }
        (cut..=i_max).all(|i| mv.f(i) == (k1 - m == i as Site) as u64)
    })
}

/// `m ↦ f_2(m)` for `m` in `lo..=hi`.
pub fn f2_profile(state: &CaState, lo: Site, hi: Site) -> BTreeMap<Site, u64> {
    (lo..=hi).map(|m| (m, f2(state, m))).collect()
}

/// Recovers `q_m = 1 - |f_2(m) - f_2(m-1)|` for every site `m` whose left
/// neighbour is also in the profile.
///
/// For a single island a profile over `[k1 - 3, kN]` yields `q` on `[k1 - 2, kN]`.
pub fn reconstruct_potential(profile: &BTreeMap<Site, u64>) -> Result<CaState> {
    let (Some((&lo, _)), Some((&hi, _))) = (profile.first_key_value(), profile.last_key_value())
    else {
        return Ok(CaState::zero());
    };
    let mut bits = Vec::with_capacity((hi - lo) as usize);
    for m in lo + 1..=hi {
        let cur = *profile.get(&m).ok_or(Error::MissingProfileSite(m))?;
        let prev = *profile
            .get(&(m - 1))
            .ok_or(Error::MissingProfileSite(m - 1))?;
        match cur.abs_diff(prev) {
            0 => bits.push(1),
            1 => bits.push(0),
            _ => return Err(Error::InconsistentProfile(m)),
        }
    }
    Ok(CaState::new(lo + 1, bits))
}
