use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use atomwork::piercing::verify_solution;
use atomwork::pq::{check_property_report, pairwise_disjoint};
use atomwork::shatter::atom_count;
use atomwork::witness::theta_trace;
use atomwork::{
    atoms_meeting, disjoint_sequence_greedy, serialize_family, verify_partition, verify_witness,
    SetFamily, WitnessOutcome,
};

use crate::commands::{atom_records, load_family};
use crate::report::{digest, echoed_input, NamedCheck, Results, RunReport, SCHEMA_VERSION};
use crate::{Failure, Outcome, Verdict};

struct Checks(Vec<NamedCheck>);

impl Checks {
    fn push(&mut self, name: &str, failure: Option<String>) {
        self.0.push(NamedCheck {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure,
        });
    }

    /// Records a check whose evaluation may itself fail on malformed input.
    fn push_result(&mut self, name: &str, r: atomwork::Result<Option<String>>) {
        self.push(name, r.unwrap_or_else(|e| Some(e.to_string())));
    }
}

fn fail_if(cond: bool, detail: impl FnOnce() -> String) -> Option<String> {
    cond.then(detail)
}

pub fn run(report_path: &Path, family_path: Option<&Path>) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(report_path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", report_path.display())))?;
    let report: RunReport = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: not a report: {e}", report_path.display())))?;
    if report.v != SCHEMA_VERSION {
        return Err(Failure::Input(format!(
            "{}: unsupported report version `{}`",
            report_path.display(),
            report.v
        )));
    }

    let mut checks = Checks(Vec::new());
    let mut trace_line = None;
    match &report.results {
        Results::Generate {
            spec,
            universe_size,
            set_count,
            family_digest,
        } => {
            let family = spec.generate()?;
            let d = digest(serialize_family(&family).as_bytes());
            checks.push(
                "family",
                fail_if(
                    d != *family_digest
                        || family.universe_size() != *universe_size
                        || family.len() != *set_count,
                    || format!("regenerated family has digest {d}"),
                ),
            );
        }
        Results::Verify { .. } => {
            return Err(Failure::Input(
                "verify reports cannot be re-verified".into(),
            ));
        }
        results => {
            let path = match family_path {
                Some(p) => p.to_path_buf(),
                None => locate_family(report_path, &report.command)?,
            };
            let (family, d) = load_family(&path)?;
            checks.push(
                "input_digest",
                fail_if(report.input_digest.as_deref() != Some(d.as_str()), || {
                    format!("{} has digest {d}", path.display())
                }),
            );
            trace_line = check_results(&family, results, &mut checks);
        }
    }

    let passed = checks.0.iter().all(|c| c.passed);
    let mut out = format!("verify: {} report\n", report.results.kind());
    for c in &checks.0 {
        let _ = write!(
            out,
            "  {}: {}",
            c.name,
            if c.passed { "pass" } else { "fail" }
        );
        match &c.detail {
            Some(d) => {
                let _ = writeln!(out, " ({d})");
            }
            None => out.push('\n'),
        }
    }
    if let Some(line) = trace_line {
        out.push_str(&line);
    }
    let _ = writeln!(out, "result: {}", if passed { "pass" } else { "fail" });
    Ok(Outcome {
        text: out,
        results: Results::Verify {
            report_kind: report.results.kind().to_string(),
            checks: checks.0,
            passed,
        },
        input_digest: Some(digest(text.as_bytes())),
        verdict: if passed {
            Verdict::Positive
        } else {
            Verdict::Failed
        },
    })
}

/// The recorded `--in` path, tried as given and then relative to the report.
fn locate_family(report_path: &Path, command: &[String]) -> Result<PathBuf, Failure> {
    let recorded = echoed_input(command)
        .ok_or_else(|| Failure::Input("report records no family file; pass --in".into()))?;
    let direct = PathBuf::from(recorded);
    if direct.exists() {
        return Ok(direct);
    }
    if let Some(dir) = report_path.parent() {
        let beside = dir.join(recorded);
        if beside.exists() {
            return Ok(beside);
        }
    }
    Err(Failure::Input(format!(
        "family file `{recorded}` recorded in the report was not found; pass --in"
    )))
}

/// Runs the kind-specific checks; returns an extra summary line for witness
/// reports.
fn check_results(family: &SetFamily, results: &Results, checks: &mut Checks) -> Option<String> {
    match results {
        Results::Atoms {
            subfamily,
            include_zero_cell,
            atoms,
            target,
            meeting_target,
        } => {
            checks.push_result(
                "atoms",
                atom_records(family, subfamily, *include_zero_cell).map(|fresh| {
                    fail_if(fresh != *atoms, || {
                        format!("recomputed {} cells", fresh.len())
                    })
                }),
            );
            if let (Some(b), Some(k)) = (target, meeting_target) {
                checks.push_result(
                    "meeting_target",
                    family
                        .point_set(b.iter().copied())
                        .and_then(|b| atoms_meeting(family, subfamily, &b))
                        .map(|fresh| fail_if(fresh != *k, || format!("recounted {fresh}"))),
                );
            }
        }
        Results::Shatter { values, .. } => {
            let mut failure = None;
            for r in values {
                let distinct = r.witness.windows(2).all(|w| w[0] < w[1]);
                match atom_count(family, &r.witness) {
                    Ok(count) if distinct && r.witness.len() == r.n && count == r.value => {}
                    Ok(count) => {
                        failure = Some(format!("n={}: witness has {count} atoms", r.n));
                        break;
                    }
                    Err(e) => {
                        failure = Some(format!("n={}: {e}", r.n));
                        break;
                    }
                }
            }
            checks.push("witnesses", failure);
        }
        Results::Pq { report } => {
            checks.push_result(
                "report",
                check_property_report(family, report)
                    .map(|ok| fail_if(!ok, || "witness sets do not support the verdict".into())),
            );
        }
        Results::Pierce {
            solution,
            optimal,
            lower_bound,
            ..
        } => {
            checks.push_result(
                "solution",
                verify_solution(family, solution)
                    .map(|ok| fail_if(!ok, || "a set misses its class point".into())),
            );
            checks.push_result(
                "partition",
                verify_partition(family, &solution.assignment).map(|v| {
                    v.first_failing_class
                        .map(|k| format!("class {k} has empty intersection"))
                }),
            );
            if let Some(lb) = lower_bound {
                checks.push(
                    "bounds",
                    fail_if(
                        *lb > solution.tau || (*optimal && *lb != solution.tau),
                        || format!("lower bound {lb} against tau {}", solution.tau),
                    ),
                );
            }
        }
        Results::Disjoint {
            maximum,
            target,
            greedy_sequence,
        } => {
            let ok = maximum.witness.len() == maximum.size
                && maximum.witness.windows(2).all(|w| w[0] < w[1])
                && maximum.witness.iter().all(|&i| i < family.len())
                && pairwise_disjoint(family, &maximum.witness);
            checks.push(
                "maximum",
                fail_if(!ok, || "witness is not pairwise disjoint".into()),
            );
            if let (Some(b), Some(seq)) = (target, greedy_sequence) {
                checks.push_result(
                    "greedy_sequence",
                    family.point_set(b.iter().copied()).map(|b| {
                        let fresh = disjoint_sequence_greedy(family, &b);
                        fail_if(fresh != *seq, || format!("recomputed {fresh:?}"))
                    }),
                );
            }
        }
        Results::Witness {
            requested_n,
            target,
            outcome,
            verification,
            ..
        } => {
            let b = match family.point_set(target.iter().copied()) {
                Ok(b) => b,
                Err(e) => {
                    checks.push("target", Some(e.to_string()));
                    return None;
                }
            };
            let chain = outcome.chain();
            let fresh = match verify_witness(family, &b, chain) {
                Ok(r) => r,
                Err(e) => {
                    checks.push("chain", Some(e.to_string()));
                    return None;
                }
            };
            checks.push(
                "chain",
                fail_if(!fresh.all_passed(), || first_failure(&fresh)),
            );
            checks.push(
                "recorded_verification",
                fail_if(fresh != **verification, || {
                    "differs from recomputation".into()
                }),
            );
            let length = match &**outcome {
                WitnessOutcome::Complete { .. } => fail_if(chain.len() != *requested_n, || {
                    format!("complete chain has length {}", chain.len())
                }),
                WitnessOutcome::Stuck { certificate, .. } => match theta_trace(family, &b, chain) {
                    Ok(t) => fail_if(
                        certificate.reached_n != chain.len()
                            || t != certificate.candidate_trace
                            || !t.candidates().is_empty(),
                        || "stuck certificate does not match the candidate sets".into(),
                    ),
                    Err(e) => Some(e.to_string()),
                },
            };
            checks.push("outcome", length);
            return Some(format!(
                "traces: {} distinct (required {})\n",
                fresh.trace_count, fresh.required_traces
            ));
        }
        Results::Generate { .. } | Results::Verify { .. } => unreachable!("handled by caller"),
    }
    None
}

fn first_failure(r: &atomwork::VerificationReport) -> String {
    [
        ("target_external", &r.target_external),
        ("c_points_base", &r.c_points_base),
        ("condition_i", &r.condition_i),
        ("condition_ii", &r.condition_ii),
        ("distinct_traces", &r.distinct_traces),
        ("bound", &r.bound),
        ("s_values", &r.s_values),
    ]
    .iter()
    .find(|(_, c)| !c.passed)
    .map(|(name, c)| format!("{name}: {}", c.detail.clone().unwrap_or_default()))
    .unwrap_or_default()
}
