use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use atomwork::pq::{DisjointResult, PropertyReport};
use atomwork::witness::{AtomRecord, VerificationReport, WitnessOutcome};
use atomwork::{GeneratorSpec, PiercingSolution, ShatterMode, ShatterResult};

pub const SCHEMA_VERSION: &str = "v1";

/// Machine-readable output of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub v: String,
    /// Arguments after the program name, minus `--threads` and `--out`.
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub results: Results,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Atoms {
        subfamily: Vec<usize>,
        include_zero_cell: bool,
        atoms: Vec<AtomRecord>,
        target: Option<Vec<usize>>,
        meeting_target: Option<usize>,
    },
    Shatter {
        mode: ShatterMode,
        values: Vec<ShatterResult>,
        exponent: Option<f64>,
    },
    Pq {
        report: PropertyReport,
    },
    Pierce {
        exact: bool,
        solution: PiercingSolution,
        optimal: bool,
        lower_bound: Option<usize>,
        nodes: Option<u64>,
    },
    Disjoint {
        maximum: DisjointResult,
        target: Option<Vec<usize>>,
        greedy_sequence: Option<Vec<usize>>,
    },
    Witness {
        requested_n: usize,
        target: Vec<usize>,
        exhaustive: bool,
        outcome: Box<WitnessOutcome>,
        search_complete: Option<bool>,
        nodes: Option<u64>,
        verification: Box<VerificationReport>,
    },
    Generate {
        spec: GeneratorSpec,
        universe_size: usize,
        set_count: usize,
        family_digest: String,
    },
    Verify {
        report_kind: String,
        checks: Vec<NamedCheck>,
        passed: bool,
    },
}

impl Results {
    pub fn kind(&self) -> &'static str {
        match self {
            Results::Atoms { .. } => "atoms",
            Results::Shatter { .. } => "shatter",
            Results::Pq { .. } => "pq",
            Results::Pierce { .. } => "pierce",
            Results::Disjoint { .. } => "disjoint",
            Results::Witness { .. } => "witness",
            Results::Generate { .. } => "generate",
            Results::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Drops `--threads` and `--out` (with their values) so that reports do not
/// depend on where they were written or how many workers ran.
pub fn command_echo(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_value = false;
    for a in args {
        if skip_value {
            skip_value = false;
            continue;
        }
        if a == "--threads" || a == "--out" {
            skip_value = true;
        } else if !(a.starts_with("--threads=") || a.starts_with("--out=")) {
            out.push(a.clone());
        }
    }
    out
}

/// Value of `--in` in an echoed command, if present.
pub fn echoed_input(command: &[String]) -> Option<&str> {
    let mut it = command.iter();
    while let Some(a) = it.next() {
        if a == "--in" {
            return it.next().map(String::as_str);
        }
        if let Some(v) = a.strip_prefix("--in=") {
            return Some(v);
        }
    }
    None
}

pub fn write_report(path: &Path, report: &RunReport) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(std::io::Error::other)?;
    text.push('\n');
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn echo_strips_threads_and_out() {
        let echo = command_echo(&args(
            "pierce --in a.fam --threads 4 --out r.json --strict --out=x",
        ));
        assert_eq!(echo, args("pierce --in a.fam --strict"));
        assert_eq!(echoed_input(&echo), Some("a.fam"));
        assert_eq!(echoed_input(&args("pq --in=b.fam")), Some("b.fam"));
        assert_eq!(echoed_input(&args("generate --kind random")), None);
    }

    #[test]
    fn digest_tracks_bytes() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_ne!(digest(b"1 1\n1\n"), digest(b"1 1\n0\n"));
    }
}
