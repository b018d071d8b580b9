//! Seeded random states for property checks.

use rand::Rng;

use crate::state::{CaState, Site, ISLAND_GAP};

/// Uniform width in `1..=max_width`, random interior bits, rejected until the
/// result is a single island. Offset drawn from `-8..=8`.
pub fn random_island<R: Rng>(rng: &mut R, max_width: usize) -> CaState {
    let max_width = max_width.max(1);
    loop {
        let w = rng.gen_range(1..=max_width);
        let mut cells: Vec<u8> = (0..w).map(|_| rng.gen_range(0..=1)).collect();
        cells[0] = 1;
        cells[w - 1] = 1;
        let s = CaState::new(rng.gen_range(-8..=8), cells);
        if s.is_single_island() {
            return s;
        }
    }
}

/// Two islands of width `<= max_width` separated by a support gap of `4..=7`.
pub fn random_two_islands<R: Rng>(rng: &mut R, max_width: usize) -> CaState {
    let left = random_island(rng, max_width);
    let (_, kn) = left.borders().unwrap();
    let gap = ISLAND_GAP + rng.gen_range(0..4);
    let right = random_island(rng, max_width).shifted_to(kn + gap);
    left.union(&right)
}

/// Support with `1..=max_count` sites and consecutive gaps in `1..=max_gap`,
/// starting in `-10..=10`. May contain several islands.
pub fn random_support<R: Rng>(rng: &mut R, max_count: usize, max_gap: Site) -> CaState {
    let n = rng.gen_range(1..=max_count.max(1));
    let mut k = rng.gen_range(-10..=10);
    let mut sites = Vec::with_capacity(n);
    for _ in 0..n {
        sites.push(k);
        k += rng.gen_range(1..=max_gap.max(1));
    }
    CaState::from_support(sites)
}

/// All states with support inside `[0, width)`, in numeric order of the bit mask.
pub fn all_states_in_window(width: u32) -> impl Iterator<Item = CaState> {
    (0u64..1 << width).map(move |mask| {
        CaState::new(
            0,
            (0..width)
                .map(|i| ((mask >> i) & 1) as u8)
                .collect::<Vec<_>>(),
        )
    })
}
