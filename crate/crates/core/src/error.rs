use thiserror::Error;

use crate::state::Site;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not divisible by (1 - z)")]
    NotDivisible,

    #[error("state has {0} islands; a single island is required")]
    NotSingleIsland(usize),

    #[error("site {m} outside validity window [{lo}, {hi}] (single-island formulas need k1 - 2 <= m <= kN)")]
    OutsideWindow { m: Site, lo: Site, hi: Site },

    #[error("window [{lo}, {hi}] must cover [{need_lo}, {need_hi}]")]
    WindowTooSmall {
        lo: Site,
        hi: Site,
        need_lo: Site,
        need_hi: Site,
    },

    #[error("evolved state does not equal step(state)")]
    NotEvolved,

    #[error("zero state has no support")]
    ZeroState,

    #[error("inconsistent f2 profile at site {0}: |f2(m) - f2(m-1)| > 1")]
    InconsistentProfile(Site),

    #[error("f2 profile is missing site {0}")]
    MissingProfileSite(Site),

    #[error("jost table does not cover site {0}")]
    TableRange(Site),

    #[error("exact rule produced {value} at site {site}")]
    ExactRuleRange { site: Site, value: i64 },

    #[error("manifest: {0}")]
    Manifest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
