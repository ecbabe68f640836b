use std::fmt::Write as _;
use std::path::Path;

use atomwork::pq::max_disjoint;
use atomwork::witness::{build_quadratic_witness_exhaustive, AtomRecord, VerificationReport};
use atomwork::{
    atoms_meeting, boolean_atoms, build_quadratic_witness, disjoint_sequence_greedy, dual_shatter,
    growth_profile, has_pq, parse_family, serialize_family, transversal_exact, transversal_greedy,
    verify_witness, GeneratorSpec, PointSet, SetFamily, ShatterMode, WitnessOutcome,
};

use crate::report::{digest, Results};
use crate::{Failure, Outcome, Verdict};

pub fn load_family(path: &Path) -> Result<(SetFamily, String), Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::Input(format!("{}: not UTF-8: {e}", path.display())))?;
    let family =
        parse_family(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((family, digest(&bytes)))
}

fn resolve_target(
    family: &SetFamily,
    points: Option<&[usize]>,
    from_file: bool,
) -> Result<Option<PointSet>, Failure> {
    if from_file {
        return family
            .target()
            .cloned()
            .map(Some)
            .ok_or_else(|| Failure::Input("family file has no target".into()));
    }
    match points {
        Some(p) => Ok(Some(family.point_set(p.iter().copied())?)),
        None => Ok(None),
    }
}

pub fn names(family: &SetFamily, indices: &[usize]) -> String {
    let v: Vec<&str> = indices.iter().map(|&i| family.name(i)).collect();
    v.join(" ")
}

fn joined(p: &[usize]) -> String {
    let v: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    v.join(",")
}

pub fn points(p: &[usize]) -> String {
    format!("{{{}}}", joined(p))
}

fn resolve_sets(family: &SetFamily, tokens: &[String]) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::with_capacity(tokens.len());
    for t in tokens {
        let index = match family.index_of(t) {
            Some(i) => i,
            None => t
                .parse::<usize>()
                .ok()
                .filter(|&i| i < family.len())
                .ok_or_else(|| Failure::Input(format!("no set named or numbered `{t}`")))?,
        };
        out.push(index);
    }
    Ok(out)
}

pub fn atom_records(
    family: &SetFamily,
    subfamily: &[usize],
    include_zero_cell: bool,
) -> atomwork::Result<Vec<AtomRecord>> {
    let atoms = boolean_atoms(family, subfamily, include_zero_cell)?;
    Ok(atoms
        .cells
        .iter()
        .map(|(sig, cell)| AtomRecord {
            signature: sig.to_string(),
            points: cell.to_vec(),
        })
        .collect())
}

pub fn atoms(
    path: &Path,
    sets: Option<&[String]>,
    include_zero_cell: bool,
    target: Option<&[usize]>,
    target_from_file: bool,
) -> Result<Outcome, Failure> {
    let (family, input_digest) = load_family(path)?;
    let subfamily = match sets {
        Some(tokens) => resolve_sets(&family, tokens)?,
        None => (0..family.len()).collect(),
    };
    let target = resolve_target(&family, target, target_from_file)?;
    let records = atom_records(&family, &subfamily, include_zero_cell)?;
    let meeting = match &target {
        Some(b) => Some(atoms_meeting(&family, &subfamily, b)?),
        None => None,
    };

    let mut text = format!(
        "atoms: {} cells over {} sets ({})\n",
        records.len(),
        subfamily.len(),
        names(&family, &subfamily)
    );
    for r in &records {
        let _ = writeln!(text, "  {}  {}", r.signature, points(&r.points));
    }
    if let Some(k) = meeting {
        let _ = writeln!(text, "meeting target: {k}");
    }
    Ok(Outcome {
        text,
        results: Results::Atoms {
            subfamily,
            include_zero_cell,
            atoms: records,
            target: target.map(|b| b.to_vec()),
            meeting_target: meeting,
        },
        input_digest: Some(input_digest),
        verdict: Verdict::Positive,
    })
}

pub fn shatter(
    path: &Path,
    n: Option<usize>,
    profile: Option<usize>,
    greedy: bool,
    budget: u64,
) -> Result<Outcome, Failure> {
    let (family, input_digest) = load_family(path)?;
    let mode = if greedy {
        ShatterMode::GreedyLowerBound
    } else {
        ShatterMode::Exact
    };
    let (values, exponent) = match (n, profile) {
        (Some(n), _) => (vec![dual_shatter(&family, n, mode, budget)?], None),
        (None, Some(n_max)) => {
            let p = growth_profile(&family, n_max, mode, budget)?;
            (p.results, Some(p.exponent))
        }
        (None, None) => return Err(Failure::Input("either --n or --profile is required".into())),
    };
    let label = if greedy {
        "greedy lower bound"
    } else {
        "exact"
    };
    let mut text = format!("shatter ({label}):\n");
    for r in &values {
        let _ = writeln!(
            text,
            "  n={} value={} witness={}",
            r.n,
            r.value,
            names(&family, &r.witness)
        );
    }
    if let Some(e) = exponent {
        let _ = writeln!(text, "growth exponent: {e:.4}");
    }
    Ok(Outcome {
        text,
        results: Results::Shatter {
            mode,
            values,
            exponent,
        },
        input_digest: Some(input_digest),
        verdict: Verdict::Positive,
    })
}

pub fn pq(path: &Path, p: usize, q: usize, budget: u64) -> Result<Outcome, Failure> {
    let (family, input_digest) = load_family(path)?;
    let report = has_pq(&family, p, q, budget)?;
    let mut text = format!(
        "pq: ({p},{q})-property {}\n",
        if report.holds { "holds" } else { "fails" }
    );
    if let Some(v) = &report.violation {
        let _ = writeln!(text, "violation: {}", names(&family, v));
    }
    if let Some(w) = &report.disjoint_witness {
        let _ = writeln!(text, "max disjoint: {} ({})", w.len(), names(&family, w));
    }
    let verdict = if report.holds {
        Verdict::Positive
    } else {
        Verdict::Negative
    };
    Ok(Outcome {
        text,
        results: Results::Pq { report },
        input_digest: Some(input_digest),
        verdict,
    })
}

pub fn pierce(path: &Path, greedy: bool, budget: u64) -> Result<Outcome, Failure> {
    let (family, input_digest) = load_family(path)?;
    let (solution, optimal, lower_bound, nodes) = if greedy {
        (transversal_greedy(&family)?, false, None, None)
    } else {
        let e = transversal_exact(&family, budget)?;
        (e.solution, e.optimal, Some(e.lower_bound), Some(e.nodes))
    };
    let mut text = if greedy {
        format!("pierce (greedy): tau={}\n", solution.tau)
    } else {
        format!(
            "pierce (exact): tau={} optimal={} lower_bound={} nodes={}\n",
            solution.tau,
            optimal,
            lower_bound.unwrap_or(0),
            nodes.unwrap_or(0)
        )
    };
    for (k, &pt) in solution.piercing_points.iter().enumerate() {
        let class: Vec<usize> = (0..family.len())
            .filter(|&i| solution.assignment[i] == k)
            .collect();
        let _ = writeln!(text, "  class {k} point {pt}: {}", names(&family, &class));
    }
    let verdict = if greedy || optimal {
        Verdict::Positive
    } else {
        Verdict::Incomplete
    };
    Ok(Outcome {
        text,
        results: Results::Pierce {
            exact: !greedy,
            solution,
            optimal,
            lower_bound,
            nodes,
        },
        input_digest: Some(input_digest),
        verdict,
    })
}

pub fn disjoint(
    path: &Path,
    cap: Option<usize>,
    target: Option<&[usize]>,
    target_from_file: bool,
) -> Result<Outcome, Failure> {
    let (family, input_digest) = load_family(path)?;
    let target = resolve_target(&family, target, target_from_file)?;
    let maximum = max_disjoint(&family, cap);
    let sequence = target
        .as_ref()
        .map(|b| disjoint_sequence_greedy(&family, b));
    let mut text = format!(
        "disjoint: {}={} ({})\n",
        if cap.is_some() { "capped" } else { "max" },
        maximum.size,
        names(&family, &maximum.witness)
    );
    if let Some(s) = &sequence {
        let _ = writeln!(
            text,
            "greedy sequence avoiding target: {} ({})",
            s.len(),
            names(&family, s)
        );
    }
    Ok(Outcome {
        text,
        results: Results::Disjoint {
            maximum,
            target: target.map(|b| b.to_vec()),
            greedy_sequence: sequence,
        },
        input_digest: Some(input_digest),
        verdict: Verdict::Positive,
    })
}

pub fn witness_text(
    family: &SetFamily,
    requested_n: usize,
    outcome: &WitnessOutcome,
    verification: &VerificationReport,
) -> String {
    let chain = outcome.chain();
    let mut text = match outcome {
        WitnessOutcome::Complete { .. } => {
            format!(
                "witness: complete, n={} (requested {requested_n})\n",
                chain.len()
            )
        }
        WitnessOutcome::Stuck { certificate, .. } => format!(
            "witness: stuck at n={} (requested {requested_n}): {}\n",
            certificate.reached_n,
            match certificate.reason {
                atomwork::StuckReason::NoSplittingSet => "no set splits an atom of the target",
                atomwork::StuckReason::NoSetMeetingAllAtoms =>
                    "no splitting set meets every required atom in base points",
                atomwork::StuckReason::NoSetAvoidingWitnesses =>
                    "every remaining candidate contains an earlier c point",
            }
        ),
    };
    for (k, step) in chain.steps.iter().enumerate() {
        let _ = writeln!(
            text,
            "  step {}: a={} c=[{}] s={}",
            k + 1,
            family.name(step.a_index),
            joined(&step.c_points),
            chain.s_values[k]
        );
    }
    let _ = writeln!(
        text,
        "traces: {} distinct (required {})",
        verification.trace_count, verification.required_traces
    );
    let _ = writeln!(
        text,
        "verification: {}",
        if verification.all_passed() {
            "pass"
        } else {
            "fail"
        }
    );
    text
}

pub fn witness(
    path: &Path,
    n: usize,
    exhaustive: bool,
    target: Option<&[usize]>,
    target_from_file: bool,
    budget: u64,
) -> Result<Outcome, Failure> {
    let (family, input_digest) = load_family(path)?;
    let target = resolve_target(&family, target, target_from_file)?
        .ok_or_else(|| Failure::Input("a target is required (--B or --B-from-file)".into()))?;
    let (outcome, search_complete, nodes) = if exhaustive {
        let e = build_quadratic_witness_exhaustive(&family, &target, n, budget)?;
        (e.outcome, Some(e.search_complete), Some(e.nodes))
    } else {
        (build_quadratic_witness(&family, &target, n)?, None, None)
    };
    let verification = verify_witness(&family, &target, outcome.chain())?;
    let mut text = witness_text(&family, n, &outcome, &verification);
    if let Some(nodes) = nodes {
        let _ = writeln!(
            text,
            "search: {} after {nodes} nodes",
            if search_complete == Some(true) {
                "complete"
            } else {
                "budget exhausted"
            }
        );
    }
    let verdict = if !verification.all_passed() {
        Verdict::Failed
    } else if search_complete == Some(false) && !outcome.is_complete() {
        Verdict::Incomplete
    } else if outcome.is_complete() {
        Verdict::Positive
    } else {
        Verdict::Negative
    };
    Ok(Outcome {
        text,
        results: Results::Witness {
            requested_n: n,
            target: target.to_vec(),
            exhaustive,
            outcome: Box::new(outcome),
            search_complete,
            nodes,
            verification: Box::new(verification),
        },
        input_digest: Some(input_digest),
        verdict,
    })
}

pub fn generate(spec: GeneratorSpec, out: Option<&Path>) -> Result<Outcome, Failure> {
    let family = spec.generate()?;
    let serialized = serialize_family(&family);
    let family_digest = digest(serialized.as_bytes());
    let text = match out {
        Some(path) => {
            std::fs::write(path, &serialized)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            format!(
                "generate: {} sets over {} points -> {}\n",
                family.len(),
                family.universe_size(),
                path.display()
            )
        }
        None => serialized,
    };
    Ok(Outcome {
        text,
        results: Results::Generate {
            spec,
            universe_size: family.universe_size(),
            set_count: family.len(),
            family_digest,
        },
        input_digest: None,
        verdict: Verdict::Positive,
    })
}
