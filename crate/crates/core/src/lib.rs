//! Filter cellular automaton over 𝔽₂ and the exact spectral theory of its
//! discrete Schrödinger operator.
//!
//! * [`state`]: finitely supported lattice states, supports and islands.
//! * [`evolution`]: the automaton step (mod-2 and exact integer forms), reversal.
//! * [`poly`]: exact polynomial arithmetic over ℤ and 𝔽₂.
//! * [`jost`]: Jost solutions, defect measures, monodromy data.
//! * [`lax`]: windowed Lax matrices and mod-2 identities.
//! * [`invariants`]: integrals of motion and trajectory checks.
//! * [`census`], [`sample`], [`cli`]: orbit enumeration, seeded generators, command line.

pub mod census;
pub mod cli;
pub mod error;
pub mod evolution;
pub mod invariants;
pub mod jost;
pub mod lax;
pub mod poly;
pub mod sample;
pub mod state;

pub use error::{Error, Result};
pub use evolution::{evolve, reverse_step, step, RuleForm, Trajectory};
pub use poly::{F2Poly, IntPoly, LaurentInt};
pub use state::{CaState, Island, Site, SupportList};
