//! Acceptance criteria 1 to 11. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use f2ca::census::{census, period_bound};
use f2ca::evolution::{step_whole, try_step};
use f2ca::invariants::{f2_transport_check, find_nonconservation_witness};
use f2ca::jost::{
    f2_profile, f_measures, jost_closed, jost_mod2_island, jost_product, jost_sweep,
    reconstruct_potential, JostTable,
};
use f2ca::lax::{jost_transport_check, verify_lax};
use f2ca::sample::{all_states_in_window, random_island, random_support, random_two_islands};
use f2ca::{evolve, reverse_step, step, CaState, IntPoly, RuleForm, Site};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- independent oracles ----

/// `f_i(m)` by direct count: put a virtual unit at `m`, then count pairs of
/// units `i` apart with only zeros between them, starting at `n >= m`.
fn oracle_f(s: &CaState, m: Site, i: Site) -> u64 {
    let Some((_, kn)) = s.borders() else { return 0 };
    let q = |n: Site| if n == m { 1 } else { s.get(n) };
    (m..=kn)
        .filter(|&n| q(n) == 1 && q(n + i) == 1 && (1..i).all(|j| q(n + j) == 0))
        .count() as u64
}

/// Count of `1,0,1` windows starting at `n >= from`.
fn oracle_f2_defects(s: &CaState, from: Site) -> u64 {
    let (_, kn) = s.borders().unwrap();
    (from..=kn)
        .filter(|&n| s.get(n) == 1 && s.get(n + 1) == 0 && s.get(n + 2) == 1)
        .count() as u64
}

fn ones_above(s: &CaState, m: Site) -> u64 {
    s.support().sites.iter().filter(|&&k| k > m).count() as u64
}

/// Coefficient of `z^k`, as i64 (Jost coefficients stay small on these corpora).
fn c(p: &IntPoly, k: usize) -> i64 {
    i64::try_from(p.coeff(k)).expect("coefficient fits in i64")
}

/// Per-island tuple `(k1, kN, f2(k1), N mod 2, x_k1 mod 2)` from oracle code paths.
fn oracle_invariants(s: &CaState) -> Vec<(Site, Site, u64, usize, String)> {
    s.islands()
        .iter()
        .map(|i| {
            let x = jost_sweep(&i.state, i.k1).get(i.k1).unwrap().mod2();
            (
                i.k1,
                i.kn,
                oracle_f2_defects(&i.state, i.k1),
                i.state.count() % 2,
                x.to_string(),
            )
        })
        .collect()
}

/// One sweep of the mod-2 rule on a bare bitstring anchored at 0.
fn oracle_step(bits: &str) -> String {
    let q: Vec<u8> = bits.bytes().map(|b| b - b'0').collect();
    let at = |v: &[u8], n: i64| {
        if n < 0 || n as usize >= v.len() {
            0
        } else {
            v[n as usize]
        }
    };
    let mut h = vec![0u8; q.len()];
    for m in 0..q.len() as i64 {
        h[m as usize] =
            (at(&q, m) + at(&h, m - 2) * at(&q, m + 1) + at(&h, m - 1) * at(&q, m + 2)) % 2;
    }
    h.iter().map(|&b| (b'0' + b) as char).collect()
}

// ---- corpora ----

struct JostCase {
    state: CaState,
    table: JostTable,
    lo: Site,
    hi: Site,
}

fn criterion3_corpus() -> Vec<JostCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..300)
        .map(|_| {
            let state = random_support(&mut rng, 10, 6);
            let (k1, kn) = state.borders().unwrap();
            let table = jost_sweep(&state, k1 - 5);
            JostCase {
                state,
                table,
                lo: k1 - 5,
                hi: kn + 2,
            }
        })
        .collect()
}

fn criterion2_corpus() -> Vec<CaState> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..500).map(|_| random_island(&mut rng, 20)).collect()
}

fn criterion8_corpus() -> Vec<CaState> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    (0..100).map(|_| random_island(&mut rng, 20)).collect()
}

// ---- criteria ----

fn c1_rule_equivalence() -> Outcome {
    let mut n = 0;
    for s in all_states_in_window(12) {
        let exact = try_step(&s, RuleForm::Exact).map_err(|e| format!("{s}: {e}"))?;
        ensure(exact == step(&s, RuleForm::Mod2), || {
            format!("forms differ on {s}")
        })?;
        n += 1;
    }
    Ok(format!("{n} states, exact values all in {{0,1}}"))
}

fn c2_conservation(corpus: &[CaState]) -> Outcome {
    let mut steps = 0;
    for s in corpus {
        let traj = evolve(s, 100, RuleForm::Mod2);
        let initial = oracle_invariants(s);
        for (t, x) in traj.states.iter().enumerate() {
            let now = oracle_invariants(x);
            ensure(now == initial, || {
                format!("{s} at t={t}: {initial:?} -> {now:?}")
            })?;
            steps += 1;
        }
    }
    Ok(format!("{} islands, {steps} states checked", corpus.len()))
}

fn c3_triple_agreement(corpus: &[JostCase]) -> Outcome {
    let mut n = 0;
    for case in corpus {
        for m in case.lo..=case.hi {
            let x = case.table.get(m).unwrap();
            ensure(*x == jost_closed(&case.state, m), || {
                format!("{} m={m}: closed", case.state)
            })?;
            ensure(*x == jost_product(&case.state, m), || {
                format!("{} m={m}: product", case.state)
            })?;
            n += 1;
        }
    }
    Ok(format!("{} supports, {n} sites", corpus.len()))
}

fn c4_residuals(corpus: &[JostCase]) -> Outcome {
    let mut n = 0;
    for case in corpus {
        let s = &case.state;
        // x above the table top is 1; include the step onto the constant region
        for m in case.lo + 1..=case.hi {
            let (prev, cur, next) = (
                case.table.get(m - 1).unwrap(),
                case.table.get(m).unwrap(),
                case.table.get(m + 1).unwrap(),
            );
            let q = s.get(m) as i64;
            // x_{m-1} - (1+z) x_m + z (1 - q_m) x_{m+1}
            let exact = &(prev - &(cur + &cur.shift(1)))
                + &(&next.shift(1) * &IntPoly::from_coeffs([1 - q]));
            ensure(exact.is_zero(), || {
                format!("{s} m={m}: exact residual {exact}")
            })?;
            // x_{m-1} + (1+z) x_m + z (1+q_m) x_{m+1} mod 2
            let m2 = &(prev + &(cur + &cur.shift(1)))
                + &(&next.shift(1) * &IntPoly::from_coeffs([1 + q]));
            ensure(m2.mod2().is_zero(), || {
                format!("{s} m={m}: mod-2 residual {m2}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} residuals, all zero"))
}

fn c5_asymptotics(corpus: &[JostCase]) -> Outcome {
    let mut n = 0;
    for case in corpus {
        let s = &case.state;
        for m in case.lo + 1..=case.hi {
            let x = case.table.get(m).unwrap();
            let prev = case.table.get(m - 1).unwrap();
            ensure(c(x, 1) == ones_above(s, m) as i64, || {
                format!("{s} m={m}: z^1 of x_m")
            })?;
            ensure(c(prev, 1) - c(x, 1) == s.get(m) as i64, || {
                format!("{s} m={m}: z^1 of x_(m-1) - x_m")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} sites"))
}

fn c6_measures(corpus: &[JostCase]) -> Outcome {
    let mut n = 0;
    for case in corpus {
        let s = &case.state;
        let (k1, kn) = s.borders().unwrap();
        let cut = kn - k1 + 2;
        for m in case.lo..=case.hi {
            let i_max = cut.max(k1 - m).max(1) + 2;
            let mv = f_measures(s, m, i_max as usize);
            let oracle: Vec<u64> = (1..=i_max).map(|i| oracle_f(s, m, i)).collect();
            ensure(mv.values == oracle, || {
                format!("{s} m={m}: {mv} vs oracle {oracle:?}")
            })?;
            // sum rules
            let total: u64 = oracle.iter().sum();
            let weighted: i64 = oracle.iter().zip(1..).map(|(&f, i)| f as i64 * i).sum();
            ensure(total == ones_above(s, m), || {
                format!("{s} m={m}: sum of f_i")
            })?;
            ensure(weighted == (kn - m).max(0), || {
                format!("{s} m={m}: weighted sum of f_i")
            })?;
            // shift law: f_i(m) = f_i(next) + [next - m == i], next = first support site > m
            if let Some(&next) = s.support().sites.iter().find(|&&k| k > m) {
                for i in 1..=i_max {
                    let lhs = oracle_f(s, m, i);
                    let rhs = oracle_f(s, next, i) + (next - m == i) as u64;
                    ensure(lhs == rhs, || format!("{s} m={m} i={i}: shift law"))?;
                }
            }
            // boundary values
            if m >= kn {
                ensure(oracle.iter().all(|&f| f == 0), || {
                    format!("{s} m={m}: f nonzero above kN")
                })?;
            }
            if m == kn - 1 {
                ensure(
                    oracle[0] == 1 && oracle[1..].iter().all(|&f| f == 0),
                    || format!("{s}: f(kN-1) is not (1,0,...)"),
                )?;
            }
            for i in cut..=i_max {
                ensure(oracle_f(s, m, i) == (k1 - m == i) as u64, || {
                    format!("{s} m={m} i={i}: tail form")
                })?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} sites"))
}

fn c7_single_island(corpus: &[CaState]) -> Outcome {
    let mut sites = 0;
    for s in corpus {
        let (k1, kn) = s.borders().unwrap();
        for m in k1 - 2..=kn {
            let f2 = oracle_f(s, m, 2) as i64;
            ensure(kn - m - 2 * f2 >= 0, || {
                format!("{s} m={m}: negative (1+z) exponent")
            })?;
            let reduced = jost_mod2_island(s, m).map_err(|e| format!("{s} m={m}: {e}"))?;
            ensure(reduced == jost_closed(s, m).mod2(), || {
                format!("{s} m={m}: mod-2 form")
            })?;
            sites += 1;
        }
        let rebuilt =
            reconstruct_potential(&f2_profile(s, k1 - 3, kn)).map_err(|e| e.to_string())?;
        ensure(rebuilt == *s, || format!("{s}: reconstructed {rebuilt}"))?;
        // f2 transport against an oracle recomputation on the stepped state
        let e = step(s, RuleForm::Mod2);
        for m in k1 - 2..=kn {
            let predicted = oracle_f(s, m, 2) as i64
                + (e.get(m - 1) * s.get(m + 2)) as i64 * (2 * s.get(m + 1) as i64 - 1);
            ensure(predicted == oracle_f(&e, m, 2) as i64, || {
                format!("{s} m={m}: f2 transport")
            })?;
        }
        ensure(f2_transport_check(s) == Ok(true), || {
            format!("{s}: library f2 transport")
        })?;
    }
    Ok(format!("{} islands, {sites} window sites", corpus.len()))
}

fn c8_lax(corpus: &[CaState]) -> Outcome {
    for s in corpus {
        let r = verify_lax(s, 2);
        ensure(r.passed(), || format!("{s}: lax residual\n{r}"))?;
        ensure(jost_transport_check(s) == Ok(true), || {
            format!("{s}: jost transport")
        })?;
    }
    Ok(format!("{} islands, margin 2", corpus.len()))
}

fn c9_reversibility(islands: &[CaState], jost: &[JostCase]) -> Outcome {
    let mut states = 0;
    for s in islands {
        for x in &evolve(s, 100, RuleForm::Mod2).states {
            ensure(reverse_step(&step(x, RuleForm::Mod2)) == *x, || {
                format!("{x}: reverse")
            })?;
            states += 1;
        }
    }
    let mut sites = 0;
    for case in jost {
        let (_, kn) = case.state.borders().unwrap();
        for m in case.lo..=kn {
            let x = case.table.get(m).unwrap();
            let coeffs = x.coeffs();
            let palindrome = coeffs.iter().eq(coeffs.iter().rev());
            ensure(palindrome && x.degree() == Some((kn - m) as usize), || {
                format!(
                    "{} m={m}: {x} is not self-reciprocal of degree kN - m",
                    case.state
                )
            })?;
            sites += 1;
        }
    }
    Ok(format!("{states} reversals, {sites} palindromes"))
}

fn c10_island_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let s0 = random_two_islands(&mut rng, 20);
        let borders = |x: &CaState| x.islands().iter().map(|i| (i.k1, i.kn)).collect::<Vec<_>>();
        let b0 = borders(&s0);
        let mut s = s0.clone();
        for t in 0..50 {
            let whole = step_whole(&s, RuleForm::Mod2).map_err(|e| e.to_string())?;
            let separate = s.islands().iter().fold(CaState::zero(), |acc, i| {
                acc.union(&step(&i.state, RuleForm::Mod2))
            });
            ensure(whole == separate, || {
                format!("{s0} t={t}: whole {whole} vs islands {separate}")
            })?;
            s = whole;
            ensure(borders(&s) == b0, || {
                format!("{s0} t={}: islands {:?}", t + 1, borders(&s))
            })?;
        }
    }
    Ok("100 two-island states, 50 steps each".into())
}

fn c11_witnesses() -> Outcome {
    let rows = census(8);
    let period = |p: &str| rows.iter().find(|r| r.pattern == p).map(|r| r.period);
    // Blocks of width <= 3 are fixed. From width 4 on, q̂_{k1} q_{k1+3} = 1 flips
    // site k1 + 1 (1111 -> 1001), so wider blocks are not fixed points.
    for p in ["1", "11", "111", "101"] {
        ensure(period(p) == Some(1), || {
            format!("{p} period {:?}", period(p))
        })?;
    }
    ensure(oracle_step("1111") == "1001", || {
        "1111 does not map to 1001".into()
    })?;
    let fixed: Vec<&str> = rows
        .iter()
        .filter(|r| r.period == 1)
        .map(|r| r.pattern.as_str())
        .collect();
    let blocks: Vec<String> = (1..=8)
        .map(|w| format!("{}", period(&"1".repeat(w)).unwrap()))
        .collect();
    ensure(
        period("1101") == Some(2) && period("1011") == Some(2),
        || "1101/1011 not a 2-cycle".into(),
    )?;
    let s: CaState = "0:1101".parse().unwrap();
    ensure(step(&s, RuleForm::Mod2).bits() == "1011", || {
        "1101 does not map to 1011".into()
    })?;
    ensure(
        rows.iter().all(|r| r.period <= period_bound(r.width)),
        || "orbit exceeds bound".into(),
    )?;
    ensure(rows.iter().all(|r| r.orbit_consistent), || {
        "invariants vary on an orbit".into()
    })?;
    let (w, e) = find_nonconservation_witness(8).ok_or("no f1/f3 witness up to width 8")?;
    let (b, a) = (
        (oracle_f(&w, 0, 1), oracle_f(&w, 0, 3)),
        (oracle_f(&e, 0, 1), oracle_f(&e, 0, 3)),
    );
    ensure(a != b, || format!("witness {w} does not move f1/f3"))?;
    Ok(format!(
        "{} census rows; fixed points {fixed:?}; block periods w=1..8 [{}]; witness {w} -> {e}, (f1,f3) {b:?} -> {a:?}",
        rows.len(),
        blocks.join(",")
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let jost = criterion3_corpus();
    let islands = criterion2_corpus();
    let lax = criterion8_corpus();

    let criteria: Vec<Criterion> = vec![
        ("rule equivalence", Box::new(c1_rule_equivalence)),
        ("conservation", Box::new(|| c2_conservation(&islands))),
        (
            "jost triple agreement",
            Box::new(|| c3_triple_agreement(&jost)),
        ),
        (
            "recursion and mod-2 residuals",
            Box::new(|| c4_residuals(&jost)),
        ),
        ("asymptotics", Box::new(|| c5_asymptotics(&jost))),
        ("measures", Box::new(|| c6_measures(&jost))),
        (
            "single-island reduction",
            Box::new(|| c7_single_island(&lax)),
        ),
        ("lax identity and transport", Box::new(|| c8_lax(&lax))),
        (
            "reversibility and reflection",
            Box::new(|| c9_reversibility(&islands, &jost)),
        ),
        ("island independence", Box::new(c10_island_independence)),
        ("phenomenology witnesses", Box::new(c11_witnesses)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
