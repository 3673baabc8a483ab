//! Declarative sweep descriptions and their expansion into ordered tasks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use apery_core::qcomb::is_prime;
use apery_core::TheoremId;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// An inclusive integer range written `lo..hi` (or a single value).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", from = "[i64; 2]")]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn new(lo: i64, hi: i64) -> Self {
        Range { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl From<Range> for [i64; 2] {
    fn from(r: Range) -> Self {
        [r.lo, r.hi]
    }
}

impl From<[i64; 2]> for Range {
    fn from([lo, hi]: [i64; 2]) -> Self {
        Range { lo, hi }
    }
}

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad range bound {t:?} in {s:?}"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Range::new(parse(lo)?, parse(hi.trim_start_matches('='))?)),
            None => {
                let v = parse(s)?;
                Ok(Range::new(v, v))
            }
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Which sign variants of the integer sum to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignChoice {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "both")]
    Both,
}

impl FromStr for SignChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+1" | "1" | "+" | "plus" => Ok(SignChoice::Plus),
            "-1" | "-" | "minus" => Ok(SignChoice::Minus),
            "both" => Ok(SignChoice::Both),
            _ => Err(format!("sign must be +1, -1 or both, got {s:?}")),
        }
    }
}

/// One unit of work: a theorem and its parameters in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub theorem: TheoremId,
    pub params: Vec<(&'static str, i64)>,
}

impl Task {
    pub fn param(&self, name: &str) -> i64 {
        self.params
            .iter()
            .find(|(k, _)| *k == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("task for {} has no parameter {name}", self.theorem))
    }

    pub fn params_map(&self) -> BTreeMap<String, i64> {
        self.params
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect()
    }
}

/// A validated sweep. Serializes to the canonical form hashed into the
/// output header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub theorem: TheoremId,
    pub ranges: BTreeMap<String, Range>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<SignChoice>,
    #[serde(default)]
    pub deterministic: bool,
}

/// Smallest admissible lower bound per parameter.
fn floor(theorem: TheoremId, name: &str) -> i64 {
    match (theorem, name) {
        (_, "n" | "m" | "alpha") => 1,
        (_, "d") => 2,
        (_, "p") => 3,
        _ => 0,
    }
}

/// Parameters that may be omitted, defaulting to `0..d-1`.
fn optional(theorem: TheoremId, name: &str) -> bool {
    matches!(
        (theorem, name),
        (TheoremId::QLucas, "b" | "l") | (TheoremId::BSymmetry, "b")
    )
}

/// Parameters bounded above by `d - 1`.
fn below_d(theorem: TheoremId, name: &str) -> bool {
    matches!(
        (theorem, name),
        (TheoremId::QLucas, "b" | "l") | (TheoremId::BSymmetry, "b")
    )
}

impl SweepSpec {
    /// Checks required and extraneous ranges, emptiness and lower bounds.
    pub fn new(
        theorem: TheoremId,
        ranges: BTreeMap<String, Range>,
        sign: Option<SignChoice>,
        deterministic: bool,
    ) -> Result<Self, CliError> {
        let names = theorem.param_names();
        for name in ranges.keys() {
            if !names.contains(&name.as_str()) {
                return Err(CliError::usage(format!(
                    "--{name} does not apply to {theorem} (expects {})",
                    names
                        .iter()
                        .map(|n| format!("--{n}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
        }
        for &name in names {
            match ranges.get(name) {
                None if optional(theorem, name) => {}
                None => return Err(CliError::usage(format!("{theorem} requires --{name}"))),
                Some(r) if r.is_empty() => {
                    return Err(CliError::usage(format!("--{name} range {r} is empty")))
                }
                Some(r) if r.lo < floor(theorem, name) => {
                    return Err(CliError::usage(format!(
                        "--{name} lower bound {} is below the minimum {}",
                        r.lo,
                        floor(theorem, name)
                    )))
                }
                Some(_) => {}
            }
        }
        if sign.is_some() && !matches!(theorem, TheoremId::T1E1 | TheoremId::T1E2) {
            return Err(CliError::usage(format!(
                "--sign only applies to T1E1/T1E2, not {theorem}"
            )));
        }
        let spec = SweepSpec {
            theorem,
            ranges,
            sign,
            deterministic,
        };
        if spec.tasks().is_empty() {
            return Err(CliError::usage(
                "the sweep contains no admissible parameter tuples",
            ));
        }
        Ok(spec)
    }

    /// Canonical JSON: keys sorted, no whitespace.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    fn theorems(&self) -> Vec<TheoremId> {
        match self.sign {
            None => vec![self.theorem],
            Some(SignChoice::Plus) => vec![TheoremId::T1E1],
            Some(SignChoice::Minus) => vec![TheoremId::T1E2],
            Some(SignChoice::Both) => vec![TheoremId::T1E1, TheoremId::T1E2],
        }
    }

    /// All parameter tuples in deterministic order: parameters nest in the
    /// theorem's canonical order (first outermost), sign variants innermost.
    pub fn tasks(&self) -> Vec<Task> {
        let names = self.theorem.param_names();
        let mut tuples: Vec<Vec<(&'static str, i64)>> = vec![Vec::new()];
        for &name in names {
            let mut next = Vec::new();
            for prefix in &tuples {
                let values: Vec<i64> = if below_d(self.theorem, name) {
                    let d = prefix
                        .iter()
                        .find(|(k, _)| *k == "d")
                        .map(|&(_, v)| v)
                        .expect("d precedes b, l");
                    let r = self
                        .ranges
                        .get(name)
                        .copied()
                        .unwrap_or(Range::new(0, d - 1));
                    r.iter().filter(|&v| v < d).collect()
                } else {
                    let r = self.ranges[name];
                    if name == "p" {
                        r.iter().filter(|&p| p > 2 && is_prime(p as u64)).collect()
                    } else {
                        r.iter().collect()
                    }
                };
                for v in values {
                    let mut t = prefix.clone();
                    t.push((name, v));
                    next.push(t);
                }
            }
            tuples = next;
        }
        let theorems = self.theorems();
        tuples
            .into_iter()
            .flat_map(|params| {
                theorems.iter().map(move |&theorem| Task {
                    theorem,
                    params: params.clone(),
                })
            })
            .collect()
    }
}

/// First line of every sweep output file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub spec_hash: String,
    pub spec: SweepSpec,
}

impl Header {
    pub fn for_spec(spec: &SweepSpec) -> Self {
        Header {
            spec_hash: spec.hash(),
            spec: spec.clone(),
        }
    }
}
