//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 for usage, parse and I/O
//! errors.

pub mod manifest;
pub mod verify;

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::census::{census, MAX_CENSUS_WIDTH};
use crate::error::Error;
use crate::evolution::{evolve, RuleForm, Trajectory};
use crate::jost::{f_measures, f_measures_full, jost_closed, jost_mod2_island, jost_sweep};
use crate::state::{CaState, Site};

pub use manifest::RunManifest;
pub use verify::{run_verify, Suite, VerifyConfig, VerifyReport};

/// Blank columns kept on each side of the rendered supports.
pub const RENDER_MARGIN: Site = 3;

#[derive(Debug, Parser)]
#[command(name = "f2ca", version, about = "Filter cellular automaton over F2")]
pub struct Cli {
    /// Write a manifest reproducing this run.
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest_out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the trajectory, one state per line.
    Evolve(EvolveArgs),
    /// Draw the trajectory as a text grid, time running downward.
    Render(RenderArgs),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
    /// Orbit periods and invariants of every single island up to a width.
    Census(CensusArgs),
    /// Print the Jost solution at a site.
    Jost(JostArgs),
    /// Replay a manifest.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// State file, or `-` for stdin.
    pub input: String,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, default_value = "mod2", value_parser = parse_form)]
    pub form: RuleForm,
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: String,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, default_value = "mod2", value_parser = parse_form)]
    pub form: RuleForm,
    /// Zero glyph followed by one glyph.
    #[arg(long, default_value = ".#", value_parser = parse_glyphs)]
    pub glyphs: Glyphs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub cases: u64,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_width: u64,
    /// Rows and columns skipped at each edge of the Lax window.
    #[arg(long, default_value_t = 2)]
    pub margin: i64,
    /// Trajectory length for the invariants suite.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..=MAX_CENSUS_WIDTH as u64))]
    pub max_width: u64,
}

#[derive(Debug, Args)]
pub struct JostArgs {
    pub input: String,
    #[arg(long, allow_hyphen_values = true)]
    pub site: Site,
    /// Also print the single-island mod-2 form.
    #[arg(long)]
    pub mod2: bool,
    /// Also print the defect measures f_i(m).
    #[arg(long)]
    pub measures: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub manifest: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Glyphs {
    pub zero: char,
    pub one: char,
}

fn parse_form(s: &str) -> Result<RuleForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_glyphs(s: &str) -> Result<Glyphs, String> {
    let mut it = s.chars();
    match (it.next(), it.next(), it.next()) {
        (Some(zero), Some(one), None) => Ok(Glyphs { zero, one }),
        _ => Err(format!("expected exactly two glyphs, got {s:?}")),
    }
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

/// Reads the first line that is neither blank nor a `#` comment.
fn read_state(input: &str, stdin: &mut dyn BufRead) -> Result<CaState, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Failure::Usage(format!("{input}: no state found")))?;
    Ok(line.parse()?)
}

/// Text grid for a trajectory: one row per time step, columns covering every
/// support plus [`RENDER_MARGIN`] on each side.
pub fn render(traj: &Trajectory, glyphs: Glyphs) -> String {
    let bounds = traj
        .states
        .iter()
        .filter_map(CaState::borders)
        .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)));
    let (lo, hi) = match bounds {
        Some((k1, kn)) => (k1 - RENDER_MARGIN, kn + RENDER_MARGIN),
        None => (-RENDER_MARGIN, RENDER_MARGIN - 1),
    };
    let mut out = String::new();
    for s in &traj.states {
        out.extend((lo..=hi).map(|n| {
            if s.get(n) == 1 {
                glyphs.one
            } else {
                glyphs.zero
            }
        }));
        out.push('\n');
    }
    out
}

fn trajectory_text(traj: &Trajectory) -> String {
    traj.states.iter().map(|s| format!("{s}\n")).collect()
}

fn cmd_jost(args: &JostArgs, state: &CaState, out: &mut dyn Write) -> Result<(), Failure> {
    let m = args.site;
    let closed = jost_closed(state, m);
    let table = jost_sweep(state, m.min(state.borders().map_or(m, |(k1, _)| k1)));
    if table.get(m) != Some(&closed) {
        return Err(Failure::Check(format!(
            "closed form and sweep disagree at m={m}: {closed} vs {}",
            table.get(m).map_or("?".to_string(), |p| p.to_string())
        )));
    }
    writeln!(out, "{closed}")?;
    if args.mod2 {
        let p = jost_mod2_island(state, m)?;
        if p != closed.mod2() {
            return Err(Failure::Check(format!(
                "mod-2 form {p} differs from parity of x_m"
            )));
        }
        writeln!(out, "{p}")?;
    }
    if args.measures {
        let full = f_measures_full(state, m);
        let top = full.highest_nonzero().unwrap_or(0).max(3);
        writeln!(out, "{}", f_measures(state, m, top))?;
    }
    Ok(())
}

fn manifest_of(command: &Command) -> Result<RunManifest, Error> {
    let mut m;
    match command {
        Command::Evolve(a) => {
            m = RunManifest::new("evolve")?;
            m.set("input", &a.input)?;
            m.set("steps", a.steps)?;
            m.set("form", a.form)?;
            if let Some(o) = &a.output {
                m.set("output", o.display())?;
            }
        }
        Command::Render(a) => {
            m = RunManifest::new("render")?;
            m.set("input", &a.input)?;
            m.set("steps", a.steps)?;
            m.set("form", a.form)?;
            m.set("glyphs", format!("{}{}", a.glyphs.zero, a.glyphs.one))?;
        }
        Command::Verify(a) => {
            m = RunManifest::new("verify")?;
            m.set("suite", a.suite)?;
            m.set("seed", a.seed)?;
            m.set("cases", a.cases)?;
            m.set("max_width", a.max_width)?;
            m.set("margin", a.margin)?;
            m.set("steps", a.steps)?;
        }
        Command::Census(a) => {
            m = RunManifest::new("census")?;
            m.set("max_width", a.max_width)?;
        }
        Command::Jost(a) => {
            m = RunManifest::new("jost")?;
            m.set("input", &a.input)?;
            m.set("site", a.site)?;
            m.set("mod2", a.mod2)?;
            m.set("measures", a.measures)?;
        }
        Command::Run(_) => unreachable!("run is expanded before manifests are written"),
    }
    Ok(m)
}

/// Resolves relative `input`/`output` paths against the manifest's directory.
fn rebase(manifest: &mut RunManifest, dir: &Path) {
    for key in ["input", "output"] {
        if let Some(v) = manifest.params.get_mut(key) {
            if v != "-" && Path::new(v.as_str()).is_relative() {
                *v = dir.join(v.as_str()).display().to_string();
            }
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), Failure> {
    let command = match cli.command {
        Command::Run(r) => {
            let text = fs::read_to_string(&r.manifest)
                .map_err(|e| Failure::Usage(format!("{}: {e}", r.manifest.display())))?;
            let mut manifest: RunManifest = text.parse()?;
            rebase(&mut manifest, r.manifest.parent().unwrap_or(Path::new(".")));
            Cli::try_parse_from(manifest.to_args())
                .map_err(|e| Failure::Usage(format!("manifest: {e}")))?
                .command
        }
        c => c,
    };
    if let Some(path) = &cli.manifest_out {
        fs::write(path, manifest_of(&command)?.to_string())
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }

    match command {
        Command::Evolve(a) => {
            let state = read_state(&a.input, stdin)?;
            let traj = evolve(&state, a.steps, a.form);
            let text = trajectory_text(&traj);
            match &a.output {
                Some(p) => fs::write(p, text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Render(a) => {
            let state = read_state(&a.input, stdin)?;
            out.write_all(render(&evolve(&state, a.steps, a.form), a.glyphs).as_bytes())?;
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                suite: a.suite,
                seed: a.seed,
                cases: a.cases as usize,
                max_width: a.max_width as usize,
                margin: a.margin,
                steps: a.steps,
            };
            let report = run_verify(&cfg);
            write!(out, "{report}")?;
            if let Some((name, s)) = report.first_failure() {
                return Err(Failure::Check(format!("property {name:?} failed on {s}")));
            }
        }
        Command::Census(a) => {
            let rows = census(a.max_width as usize);
            for row in &rows {
                writeln!(out, "{row}")?;
            }
            if let Some(bad) = rows.iter().find(|r| !r.orbit_consistent) {
                return Err(Failure::Check(format!(
                    "invariants vary along the orbit of {}",
                    bad.pattern
                )));
            }
        }
        Command::Jost(a) => {
            let state = read_state(&a.input, stdin)?;
            cmd_jost(&a, &state, out)?;
        }
        Command::Run(_) => return Err(Failure::Usage("manifests cannot invoke run".into())),
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run_cli<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match dispatch(cli, stdin, out) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "f2ca: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "f2ca: {msg}");
            2
        }
    }
}
