//! Property suites driven by `f2ca verify`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::evolution::{evolve, reverse_step, step, step_whole, try_step, RuleForm};
use crate::invariants::{check_trajectory, determination_check, f2_transport_check};
use crate::jost::{
    asymptotics_check, boundary_laws_check, f2_profile, jost_closed, jost_mod2_island,
    jost_product, jost_sweep, reconstruct_potential, recursion_residual, reflection_relation_check,
    shift_law_check, sum_rules_check,
};
use crate::lax::{jost_transport_check, schrodinger_residual_mod2, verify_lax};
use crate::sample::{all_states_in_window, random_island, random_support, random_two_islands};
use crate::state::CaState;

/// Widest window enumerated exhaustively; wider requests fall back to sampling.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Evolution,
    Jost,
    Lax,
    Invariants,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "all" => Suite::All,
            "evolution" => Suite::Evolution,
            "jost" => Suite::Jost,
            "lax" => Suite::Lax,
            "invariants" => Suite::Invariants,
            _ => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown suite {s:?}"),
                })
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Evolution => "evolution",
            Suite::Jost => "jost",
            Suite::Lax => "lax",
            Suite::Invariants => "invariants",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub max_width: usize,
    pub margin: i64,
    pub steps: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            seed: 0,
            cases: 100,
            max_width: 12,
            margin: 2,
            steps: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub counterexample: Option<CaState>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub tallies: Vec<Tally>,
}

impl VerifyReport {
    fn record(&mut self, name: &'static str, state: &CaState, ok: bool) {
        let t = match self.tallies.iter().position(|t| t.name == name) {
            Some(i) => &mut self.tallies[i],
            None => {
                self.tallies.push(Tally {
                    name,
                    passed: 0,
                    total: 0,
                    counterexample: None,
                });
                self.tallies.last_mut().unwrap()
            }
        };
        t.total += 1;
        if ok {
            t.passed += 1;
        } else if t.counterexample.is_none() {
            t.counterexample = Some(state.clone());
        }
    }

    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.passed == t.total)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &CaState)> {
        self.tallies
            .iter()
            .find_map(|t| t.counterexample.as_ref().map(|s| (t.name, s)))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tallies {
            let tag = if t.passed == t.total { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {:<28} {}/{}", t.name, t.passed, t.total)?;
        }
        if let Some((name, s)) = self.first_failure() {
            writeln!(f, "counterexample ({name}):")?;
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn evolution_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, rep: &mut VerifyReport) {
    let width = cfg.max_width.min(EXHAUSTIVE_LIMIT) as u32;
    let check = |s: &CaState, rep: &mut VerifyReport| {
        let m = step(s, RuleForm::Mod2);
        let e = try_step(s, RuleForm::Exact);
        rep.record("rule forms agree", s, e.as_ref() == Ok(&m));
        let borders_kept = s
            .islands()
            .iter()
            .zip(m.islands().iter())
            .all(|(a, b)| (a.k1, a.kn) == (b.k1, b.kn))
            && s.islands().len() == m.islands().len();
        rep.record("island borders conserved", s, borders_kept);
        rep.record("reverse_step inverts step", s, reverse_step(&m) == *s);
        rep.record(
            "island independence",
            s,
            step_whole(s, RuleForm::Mod2) == Ok(m),
        );
    };
    for s in all_states_in_window(width) {
        check(&s, rep);
    }
    for _ in 0..cfg.cases {
        let s = if cfg.max_width > EXHAUSTIVE_LIMIT {
            random_island(rng, cfg.max_width)
        } else {
            random_two_islands(rng, cfg.max_width)
        };
        check(&s, rep);
    }
}

fn jost_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, rep: &mut VerifyReport) {
    for _ in 0..cfg.cases {
        let s = random_support(rng, 10, 6);
        let (k1, kn) = s.borders().unwrap();
        let table = jost_sweep(&s, k1 - 5);
        let mut agree = true;
        let mut nonneg = true;
        let mut palin = true;
        let mut asym = true;
        let mut sums = true;
        let mut shift = true;
        for m in k1 - 5..=kn + 2 {
            let x = table.get(m).unwrap();
            agree &= *x == jost_closed(&s, m) && *x == jost_product(&s, m);
            nonneg &= x.is_nonnegative();
            palin &= reflection_relation_check(&s, m).unwrap_or(false)
                && (m > kn || (x.is_palindrome() && x.degree() == Some((kn - m) as usize)));
            asym &= asymptotics_check(&s, m);
            sums &= sum_rules_check(&s, m);
            shift &= shift_law_check(&s, m);
        }
        let residual = (table.m_min() + 1..=table.top()).all(|m| {
            recursion_residual(
                s.get(m),
                table.get(m - 1).unwrap(),
                table.get(m).unwrap(),
                table.get(m + 1).unwrap(),
            )
            .is_zero()
        });
        rep.record("sweep = closed = product", &s, agree);
        rep.record("recursion residual zero", &s, residual);
        rep.record(
            "mod-2 residual zero",
            &s,
            schrodinger_residual_mod2(&s, &table),
        );
        rep.record("coefficients non-negative", &s, nonneg);
        rep.record("self-reciprocity", &s, palin);
        rep.record("asymptotics", &s, asym);
        rep.record("sum rules", &s, sums);
        rep.record("shift law", &s, shift);
        rep.record(
            "boundary laws",
            &s,
            boundary_laws_check(&s, k1 - 5..=kn + 2),
        );
    }
}

fn lax_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, rep: &mut VerifyReport) {
    for _ in 0..cfg.cases {
        let s = random_island(rng, cfg.max_width);
        rep.record(
            "lax identity mod 2",
            &s,
            verify_lax(&s, cfg.margin).passed(),
        );
        rep.record(
            "jost transport mod 2",
            &s,
            jost_transport_check(&s).unwrap_or(false),
        );
    }
}

fn invariants_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, rep: &mut VerifyReport) {
    for _ in 0..cfg.cases {
        let s = random_island(rng, cfg.max_width);
        let traj = evolve(&s, cfg.steps, RuleForm::Mod2);
        rep.record(
            "integrals conserved",
            &s,
            check_trajectory(&traj).conserved(),
        );
        rep.record("f2 transport", &s, f2_transport_check(&s).unwrap_or(false));
        rep.record("monodromy determination", &s, determination_check(&s));
        let (k1, kn) = s.borders().unwrap();
        let rebuilt = reconstruct_potential(&f2_profile(&s, k1 - 3, kn));
        rep.record("potential reconstruction", &s, rebuilt.as_ref() == Ok(&s));
        let mod2_ok = (k1 - 2..=kn)
            .all(|m| jost_mod2_island(&s, m).is_ok_and(|p| p == jost_closed(&s, m).mod2()));
        rep.record("single-island mod-2 form", &s, mod2_ok);
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let all = cfg.suite == Suite::All;
    if all || cfg.suite == Suite::Evolution {
        evolution_suite(cfg, &mut rng, &mut rep);
    }
    if all || cfg.suite == Suite::Jost {
        jost_suite(cfg, &mut rng, &mut rep);
    }
    if all || cfg.suite == Suite::Lax {
        lax_suite(cfg, &mut rng, &mut rep);
    }
    if all || cfg.suite == Suite::Invariants {
        invariants_suite(cfg, &mut rng, &mut rep);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Evolution, Suite::Jost, Suite::Lax, Suite::Invariants] {
            let cfg = VerifyConfig {
                suite,
                cases: 10,
                max_width: 8,
                steps: 10,
                ..Default::default()
            };
            let rep = run_verify(&cfg);
            assert!(rep.passed(), "{suite}\n{rep}");
            assert!(!rep.tallies.is_empty());
        }
    }

    #[test]
    fn deterministic() {
        let cfg = VerifyConfig {
            suite: Suite::Jost,
            seed: 7,
            cases: 5,
            ..Default::default()
        };
        assert_eq!(run_verify(&cfg).to_string(), run_verify(&cfg).to_string());
    }
}
