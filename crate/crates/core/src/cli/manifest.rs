//! `key=value` run manifests.
//!
//! A manifest names a subcommand and its parameters. `f2ca run <manifest>`
//! replays it; `--manifest-out` on any subcommand writes one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Keys accepted by each command, in the order they are written.
const KEYS: &[(&str, &[&str])] = &[
    ("evolve", &["input", "steps", "form", "output"]),
    ("render", &["input", "steps", "form", "glyphs"]),
    (
        "verify",
        &["suite", "seed", "cases", "max_width", "margin", "steps"],
    ),
    ("census", &["max_width"]),
    ("jost", &["input", "site", "mod2", "measures"]),
];

const FLAGS: &[&str] = &["mod2", "measures"];

fn keys_for(command: &str) -> Option<&'static [&'static str]> {
    KEYS.iter().find(|(c, _)| *c == command).map(|(_, k)| *k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunManifest {
    pub command: String,
    pub params: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Result<Self> {
        keys_for(command).ok_or_else(|| Error::Manifest(format!("unknown command {command:?}")))?;
        Ok(Self {
            command: command.to_string(),
            params: BTreeMap::new(),
        })
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> Result<()> {
        let keys = keys_for(&self.command).expect("command checked on construction");
        if !keys.contains(&key) {
            return Err(Error::Manifest(format!(
                "key {key:?} not valid for command {:?}",
                self.command
            )));
        }
        self.params.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    /// Command-line arguments equivalent to this manifest, program name first.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["f2ca".to_string(), self.command.clone()];
        for key in keys_for(&self.command).unwrap() {
            let Some(v) = self.params.get(*key) else {
                continue;
            };
            if *key == "input" {
                continue;
            }
            if FLAGS.contains(key) {
                if v == "true" {
                    args.push(format!("--{}", key.replace('_', "-")));
                }
                continue;
            }
            args.push(format!("--{}={v}", key.replace('_', "-")));
        }
        if let Some(input) = self.params.get("input") {
            args.push(input.clone());
        }
        args
    }
}

impl fmt::Display for RunManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command={}", self.command)?;
        for key in keys_for(&self.command).unwrap() {
            if let Some(v) = self.params.get(*key) {
                writeln!(f, "{key}={v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RunManifest {
    type Err = Error;

    /// Blank lines and lines starting with `#` are skipped. `command` must
    /// come before any other key.
    fn from_str(text: &str) -> Result<Self> {
        let mut manifest: Option<RunManifest> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Manifest(format!("line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match (&mut manifest, key) {
                (None, "command") => manifest = Some(RunManifest::new(value)?),
                (None, _) => {
                    return Err(Error::Manifest(format!(
                        "line {}: command must be the first key",
                        lineno + 1
                    )))
                }
                (Some(_), "command") => {
                    return Err(Error::Manifest(format!(
                        "line {}: duplicate command",
                        lineno + 1
                    )))
                }
                (Some(m), _) => {
                    if m.params.contains_key(key) {
                        return Err(Error::Manifest(format!(
                            "line {}: duplicate key {key:?}",
                            lineno + 1
                        )));
                    }
                    if FLAGS.contains(&key) && value != "true" && value != "false" {
                        return Err(Error::Manifest(format!(
                            "line {}: {key} must be true or false",
                            lineno + 1
                        )));
                    }
                    m.set(key, value)?
                }
            }
        }
        manifest.ok_or_else(|| Error::Manifest("missing command".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut m = RunManifest::new("evolve").unwrap();
        m.set("input", "s.txt").unwrap();
        m.set("steps", 5).unwrap();
        m.set("form", "exact").unwrap();
        let text = m.to_string();
        assert_eq!(text, "command=evolve\ninput=s.txt\nsteps=5\nform=exact\n");
        assert_eq!(text.parse::<RunManifest>().unwrap(), m);
        assert_eq!(
            m.to_args(),
            ["f2ca", "evolve", "--steps=5", "--form=exact", "s.txt"]
        );
    }

    #[test]
    fn flags_and_underscores() {
        let m: RunManifest = "command=jost\ninput=a\nsite=-1\nmod2=true\nmeasures=false\n"
            .parse()
            .unwrap();
        assert_eq!(m.to_args(), ["f2ca", "jost", "--site=-1", "--mod2", "a"]);
        let m: RunManifest = "command=census\nmax_width=6".parse().unwrap();
        assert_eq!(m.to_args(), ["f2ca", "census", "--max-width=6"]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "steps=3",
            "command=evolve\nbogus=1",
            "command=nope",
            "command=census\nmax_width=3\nmax_width=4",
            "command=jost\nmod2=yes",
            "command=evolve\njunk",
            "",
        ] {
            assert!(
                matches!(bad.parse::<RunManifest>(), Err(Error::Manifest(_))),
                "{bad:?}"
            );
        }
        assert!("# note\n\ncommand=census\n".parse::<RunManifest>().is_ok());
    }
}
