//! Finitely supported 0/1 sequences on the integer lattice.
//!
//! A [`CaState`] stores a window `offset..offset + cells.len()`; every site
//! outside the window holds 0. States are always kept normalized: the window
//! is either empty or starts and ends on a 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Lattice site index.
pub type Site = i64;

/// Support gap (`k_{j+1} - k_j`) at which a state splits into two islands.
pub const ISLAND_GAP: Site = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaState {
    offset: Site,
    cells: Vec<u8>,
}

impl CaState {
    /// Builds a normalized state from a window of bits. Any nonzero byte counts as 1.
    pub fn new(offset: Site, cells: impl Into<Vec<u8>>) -> Self {
        let mut cells: Vec<u8> = cells.into();
        for c in cells.iter_mut() {
            *c = (*c != 0) as u8;
        }
        let Some(first) = cells.iter().position(|&c| c == 1) else {
            return Self::zero();
        };
        let last = cells.iter().rposition(|&c| c == 1).unwrap();
        cells.truncate(last + 1);
        cells.drain(..first);
        Self {
            offset: offset + first as Site,
            cells,
        }
    }

    pub fn zero() -> Self {
        Self {
            offset: 0,
            cells: Vec::new(),
        }
    }

    /// State whose units sit exactly at `sites` (duplicates are ignored).
    pub fn from_support<I: IntoIterator<Item = Site>>(sites: I) -> Self {
        let mut sites: Vec<Site> = sites.into_iter().collect();
        sites.sort_unstable();
        sites.dedup();
        let (Some(&lo), Some(&hi)) = (sites.first(), sites.last()) else {
            return Self::zero();
        };
        let mut cells = vec![0u8; (hi - lo + 1) as usize];
        for s in sites {
            cells[(s - lo) as usize] = 1;
        }
        Self { offset: lo, cells }
    }

    pub fn offset(&self) -> Site {
        self.offset
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// `q_n`, extended by zero outside the stored window.
    pub fn get(&self, n: Site) -> u8 {
        let i = n - self.offset;
        if i < 0 {
            return 0;
        }
        self.cells.get(i as usize).copied().unwrap_or(0)
    }

    /// `(k1, kN)`, or `None` for the zero state.
    pub fn borders(&self) -> Option<(Site, Site)> {
        if self.is_zero() {
            None
        } else {
            Some((self.offset, self.offset + self.cells.len() as Site - 1))
        }
    }

    pub fn support(&self) -> SupportList {
        SupportList {
            sites: self
                .cells
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 1)
                .map(|(i, _)| self.offset + i as Site)
                .collect(),
        }
    }

    /// Number of units, `N`.
    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 1).count()
    }

    /// Splits the support into maximal runs whose consecutive gaps are at most 3.
    pub fn islands(&self) -> Vec<Island> {
        let sites = self.support().sites;
        let mut out = Vec::new();
        let mut start = 0;
        for j in 1..=sites.len() {
            if j == sites.len() || sites[j] - sites[j - 1] >= ISLAND_GAP {
                if j > start {
                    let piece = &sites[start..j];
                    out.push(Island {
                        state: CaState::from_support(piece.iter().copied()),
                        k1: piece[0],
                        kn: piece[piece.len() - 1],
                    });
                }
                start = j;
            }
        }
        out
    }

    pub fn is_single_island(&self) -> bool {
        self.islands().len() == 1
    }

    /// Spatial reflection `q'_n = q_{-n}`.
    pub fn reflect(&self) -> Self {
        let Some((_, kn)) = self.borders() else {
            return Self::zero();
        };
        let mut cells = self.cells.clone();
        cells.reverse();
        Self { offset: -kn, cells }
    }

    /// Translates the state so that `k1` lands on `to`.
    pub fn shifted_to(&self, to: Site) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            offset: to,
            cells: self.cells.clone(),
        }
    }

    /// Bitstring of the stored window, lowest site first.
    pub fn bits(&self) -> String {
        self.cells
            .iter()
            .map(|&c| if c == 1 { '1' } else { '0' })
            .collect()
    }

    /// Union of two states (bitwise OR).
    pub fn union(&self, other: &CaState) -> CaState {
        let mut s = self.support().sites;
        s.extend(other.support().sites);
        CaState::from_support(s)
    }
}

impl fmt::Display for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.offset, self.bits())
    }
}

impl FromStr for CaState {
    type Err = Error;

    /// Accepts `<offset>:<bits>` or a bare `<bits>` string (offset 0).
    fn from_str(text: &str) -> Result<Self> {
        let (offset, bits, bits_pos) = match text.find(':') {
            Some(colon) => {
                let head = &text[..colon];
                let offset = head.parse::<Site>().map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("bad offset {head:?}: {e}"),
                })?;
                (offset, &text[colon + 1..], colon + 1)
            }
            None => (0, text, 0),
        };
        let mut cells = Vec::with_capacity(bits.len());
        for (i, b) in bits.bytes().enumerate() {
            match b {
                b'0' => cells.push(0),
                b'1' => cells.push(1),
                other => {
                    return Err(Error::Parse {
                        pos: bits_pos + i,
                        msg: format!("expected '0' or '1', found {:?}", other as char),
                    })
                }
            }
        }
        Ok(CaState::new(offset, cells))
    }
}

/// Strictly increasing list of occupied sites `k1 < ... < kN`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportList {
    pub sites: Vec<Site>,
}

impl SupportList {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn first(&self) -> Option<Site> {
        self.sites.first().copied()
    }

    pub fn last(&self) -> Option<Site> {
        self.sites.last().copied()
    }

    /// Consecutive differences `k_{j+1} - k_j`.
    pub fn gaps(&self) -> impl Iterator<Item = Site> + '_ {
        self.sites.windows(2).map(|w| w[1] - w[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Island {
    pub state: CaState,
    pub k1: Site,
    pub kn: Site,
}
