//! Quadratic lower-bound witnesses for the dual shatter function.
//!
//! Given a family and an external target `B` (a set of extension points, so
//! it has no base members), the construction picks sets `a_1, a_2, ...` and
//! base points `c_{i,j}` (`j <= i`) such that all `c` points have pairwise
//! distinct traces on `{a_1, ..., a_n}`. That exhibits `n(n+1)/2` atoms among
//! `n` sets.
//!
//! Step `n` looks at the atoms `C_1, ..., C_s` of `{a_1, ..., a_{n-1}}` that
//! meet `B` (signature order; `s >= n` holds inductively) and accepts a set
//! `a` as a candidate when
//!
//! 1. `a` contains no earlier `c` point,
//! 2. `a` meets each of `C_1, ..., C_n` in a base point, and
//! 3. `a` splits `B` inside some atom: `B ∩ C ∩ a` and `(B ∩ C) \ a` are
//!    both nonempty.
//!
//! The lowest-index candidate becomes `a_n`, and `c_{n,j}` is the lowest base
//! point of `C_j ∩ a_n`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::family::{boolean_atoms, SetFamily, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub a_index: usize,
    /// `c_{i,1}, ..., c_{i,i}`, one per atom `C_1, ..., C_i`.
    pub c_points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub signature: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChain {
    pub steps: Vec<WitnessStep>,
    /// After step `i`: the atoms of `{a_1..a_i}` meeting the target.
    pub atom_history: Vec<Vec<AtomRecord>>,
    /// After step `i`: the number of atoms of `{a_1..a_i}` meeting the target.
    pub s_values: Vec<usize>,
}

impl WitnessChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn a_indices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.a_index).collect()
    }
}

/// Which candidate condition emptied the candidate list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StuckReason {
    NoSplittingSet,
    NoSetMeetingAllAtoms,
    NoSetAvoidingWitnesses,
}

/// Candidate computation, one filter at a time: splitting, then meeting the
/// atoms in base points, then avoiding earlier `c` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaTrace {
    pub splitting: Vec<usize>,
    pub meeting_atoms: Vec<usize>,
    pub avoiding_witnesses: Vec<usize>,
}

impl ThetaTrace {
    pub fn candidates(&self) -> &[usize] {
        &self.avoiding_witnesses
    }

    fn stuck_reason(&self) -> Option<StuckReason> {
        if self.splitting.is_empty() {
            Some(StuckReason::NoSplittingSet)
        } else if self.meeting_atoms.is_empty() {
            Some(StuckReason::NoSetMeetingAllAtoms)
        } else if self.avoiding_witnesses.is_empty() {
            Some(StuckReason::NoSetAvoidingWitnesses)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuckCertificate {
    pub reached_n: usize,
    pub reason: StuckReason,
    pub candidate_trace: ThetaTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WitnessOutcome {
    Complete {
        chain: WitnessChain,
    },
    Stuck {
        chain: WitnessChain,
        certificate: StuckCertificate,
    },
}

impl WitnessOutcome {
    pub fn chain(&self) -> &WitnessChain {
        match self {
            WitnessOutcome::Complete { chain } | WitnessOutcome::Stuck { chain, .. } => chain,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, WitnessOutcome::Complete { .. })
    }
}

fn check_target(family: &SetFamily, target: &PointSet) -> Result<()> {
    if target.capacity() != family.universe_size() {
        return Err(Error::InvalidParameter(format!(
            "target has capacity {} for universe {}",
            target.capacity(),
            family.universe_size()
        )));
    }
    if let Some(point) = target.iter().find(|&p| family.is_base(p)) {
        return Err(Error::TargetMeetsBase { point });
    }
    Ok(())
}

/// Atoms of `sets` that meet `target`, in signature order.
fn target_atoms(
    family: &SetFamily,
    sets: &[usize],
    target: &PointSet,
) -> Result<Vec<(Signature, PointSet)>> {
    Ok(boolean_atoms(family, sets, true)?
        .cells
        .into_iter()
        .filter(|(_, c)| c.intersects(target))
        .collect())
}

fn check_state(family: &SetFamily, state: &WitnessChain) -> Result<()> {
    for (k, step) in state.steps.iter().enumerate() {
        family.check_index(step.a_index)?;
        if step.c_points.len() != k + 1 {
            return Err(Error::MalformedChain(format!(
                "step {} has {} c points, expected {}",
                k + 1,
                step.c_points.len(),
                k + 1
            )));
        }
        for &c in &step.c_points {
            family.check_point(c)?;
        }
    }
    Ok(())
}

/// Full candidate computation for the step after `state`.
pub fn theta_trace(
    family: &SetFamily,
    target: &PointSet,
    state: &WitnessChain,
) -> Result<ThetaTrace> {
    check_target(family, target)?;
    check_state(family, state)?;
    let n = state.len() + 1;
    let atoms = target_atoms(family, &state.a_indices(), target)?;
    if atoms.len() < n {
        return Err(Error::MalformedChain(format!(
            "only {} atoms meet the target before step {n}",
            atoms.len()
        )));
    }
    let base = family.base_points();
    let live: Vec<PointSet> = atoms[..n]
        .iter()
        .map(|(_, c)| c.intersection(&base))
        .collect();
    let target_parts: Vec<PointSet> = atoms.iter().map(|(_, c)| c.intersection(target)).collect();
    let earlier: Vec<usize> = state
        .steps
        .iter()
        .flat_map(|s| s.c_points.iter().copied())
        .collect();

    let splitting: Vec<usize> = (0..family.len())
        .filter(|&i| {
            let a = family.members(i);
            target_parts
                .iter()
                .any(|part| part.intersects(a) && !part.is_subset(a))
        })
        .collect();
    let meeting_atoms: Vec<usize> = splitting
        .iter()
        .copied()
        .filter(|&i| live.iter().all(|c| c.intersects(family.members(i))))
        .collect();
    let avoiding_witnesses: Vec<usize> = meeting_atoms
        .iter()
        .copied()
        .filter(|&i| !earlier.iter().any(|&c| family.members(i).contains(c)))
        .collect();
    Ok(ThetaTrace {
        splitting,
        meeting_atoms,
        avoiding_witnesses,
    })
}

/// Sets admissible as the next `a` after `state`.
pub fn candidate_theta(
    family: &SetFamily,
    target: &PointSet,
    state: &WitnessChain,
) -> Result<Vec<usize>> {
    Ok(theta_trace(family, target, state)?.avoiding_witnesses)
}

fn atom_records(atoms: &[(Signature, PointSet)]) -> Vec<AtomRecord> {
    atoms
        .iter()
        .map(|(sig, c)| AtomRecord {
            signature: sig.to_string(),
            points: c.to_vec(),
        })
        .collect()
}

/// Appends `a` to the chain, choosing `c_{n,j}` as the lowest base point of
/// `C_j ∩ a`.
fn extend(family: &SetFamily, target: &PointSet, state: &mut WitnessChain, a: usize) -> Result<()> {
    let n = state.len() + 1;
    let atoms = target_atoms(family, &state.a_indices(), target)?;
    let base = family.base_points();
    let c_points = atoms[..n]
        .iter()
        .map(|(_, c)| {
            c.intersection(&base)
                .intersection(family.members(a))
                .first()
                .ok_or_else(|| {
                    Error::MalformedChain(format!("set {a} misses a live atom in base points"))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    state.steps.push(WitnessStep {
        a_index: a,
        c_points,
    });
    let after = target_atoms(family, &state.a_indices(), target)?;
    state.s_values.push(after.len());
    state.atom_history.push(atom_records(&after));
    Ok(())
}

fn check_build_args(family: &SetFamily, target: &PointSet, n_target: usize) -> Result<()> {
    check_target(family, target)?;
    if target.is_empty() {
        return Err(Error::InvalidParameter("target must be nonempty".into()));
    }
    if n_target == 0 {
        return Err(Error::InvalidParameter(
            "chain length must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Greedy construction with lowest-index choices and no backtracking.
pub fn build_quadratic_witness(
    family: &SetFamily,
    target: &PointSet,
    n_target: usize,
) -> Result<WitnessOutcome> {
    check_build_args(family, target, n_target)?;
    let mut chain = WitnessChain::default();
    while chain.len() < n_target {
        let trace = theta_trace(family, target, &chain)?;
        if let Some(reason) = trace.stuck_reason() {
            return Ok(WitnessOutcome::Stuck {
                certificate: StuckCertificate {
                    reached_n: chain.len(),
                    reason,
                    candidate_trace: trace,
                },
                chain,
            });
        }
        extend(family, target, &mut chain, trace.candidates()[0])?;
    }
    Ok(WitnessOutcome::Complete { chain })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveWitness {
    pub outcome: WitnessOutcome,
    /// False when the node budget stopped the search before it finished.
    pub search_complete: bool,
    pub nodes: u64,
}

struct Backtrack<'a> {
    family: &'a SetFamily,
    target: &'a PointSet,
    n_target: usize,
    budget: u64,
    nodes: u64,
    aborted: bool,
    deepest: Option<(WitnessChain, Option<StuckCertificate>)>,
}

impl Backtrack<'_> {
    fn finished(&self) -> bool {
        self.aborted || matches!(&self.deepest, Some((c, None)) if c.len() == self.n_target)
    }

    fn visit(&mut self, chain: &mut WitnessChain) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return Ok(());
        }
        if chain.len() == self.n_target {
            self.deepest = Some((chain.clone(), None));
            return Ok(());
        }
        let trace = theta_trace(self.family, self.target, chain)?;
        if let Some(reason) = trace.stuck_reason() {
            if self
                .deepest
                .as_ref()
                .is_none_or(|(c, _)| chain.len() > c.len())
            {
                let cert = StuckCertificate {
                    reached_n: chain.len(),
                    reason,
                    candidate_trace: trace,
                };
                self.deepest = Some((chain.clone(), Some(cert)));
            }
            return Ok(());
        }
        for &a in trace.candidates() {
            let mut next = chain.clone();
            extend(self.family, self.target, &mut next, a)?;
            self.visit(&mut next)?;
            if self.finished() {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Backtracking over every candidate choice, returning the first deepest
/// chain in depth-first order. `c` points are chosen as in the greedy run.
pub fn build_quadratic_witness_exhaustive(
    family: &SetFamily,
    target: &PointSet,
    n_target: usize,
    budget: u64,
) -> Result<ExhaustiveWitness> {
    check_build_args(family, target, n_target)?;
    let mut bt = Backtrack {
        family,
        target,
        n_target,
        budget,
        nodes: 0,
        aborted: false,
        deepest: None,
    };
    bt.visit(&mut WitnessChain::default())?;
    let outcome = match bt.deepest {
        Some((chain, None)) => WitnessOutcome::Complete { chain },
        Some((chain, Some(certificate))) => WitnessOutcome::Stuck { chain, certificate },
        None => {
            // budget of zero: report the empty state
            let chain = WitnessChain::default();
            let trace = theta_trace(family, target, &chain)?;
            WitnessOutcome::Stuck {
                certificate: StuckCertificate {
                    reached_n: 0,
                    reason: trace.stuck_reason().unwrap_or(StuckReason::NoSplittingSet),
                    candidate_trace: trace,
                },
                chain,
            }
        }
    };
    Ok(ExhaustiveWitness {
        outcome,
        search_complete: !bt.aborted,
        nodes: bt.nodes,
    })
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    /// First failure found, if any.
    pub detail: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Self {
            passed: true,
            detail: None,
        }
    }

    fn fail(detail: String) -> Self {
        Self {
            passed: false,
            detail: Some(detail),
        }
    }

    fn from_first_failure(failure: Option<String>) -> Self {
        failure.map_or_else(Self::pass, Self::fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub target_external: Check,
    pub c_points_base: Check,
    /// `c_{i,j} ∈ a_i`, and `c_{i',j'} ∉ a_i` whenever `i' < i`.
    pub condition_i: Check,
    /// Within step `i >= 2`, the `c` points have distinct traces on
    /// `{a_1..a_{i-1}}`.
    pub condition_ii: Check,
    /// All `c` points have pairwise distinct traces on `{a_1..a_n}`.
    pub distinct_traces: Check,
    pub trace_count: usize,
    pub required_traces: usize,
    pub bound: Check,
    /// Independently recounted `s` values.
    pub recomputed_s: Vec<usize>,
    pub s_values: Check,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.target_external,
            &self.c_points_base,
            &self.condition_i,
            &self.condition_ii,
            &self.distinct_traces,
            &self.bound,
            &self.s_values,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

fn trace_on(family: &SetFamily, sets: &[usize], point: usize) -> Vec<bool> {
    sets.iter()
        .map(|&a| family.members(a).contains(point))
        .collect()
}

/// Re-derives every property of a chain from the family alone. Only the
/// chain's sets and `c` points are trusted; recorded `s` values are compared
/// against a fresh count.
pub fn verify_witness(
    family: &SetFamily,
    target: &PointSet,
    chain: &WitnessChain,
) -> Result<VerificationReport> {
    if target.capacity() != family.universe_size() {
        return Err(Error::InvalidParameter("target universe mismatch".into()));
    }
    check_state(family, chain)?;
    if chain.s_values.len() != chain.len() {
        return Err(Error::MalformedChain(format!(
            "{} s values for {} steps",
            chain.s_values.len(),
            chain.len()
        )));
    }
    let n = chain.len();
    let a = chain.a_indices();

    let target_external = Check::from_first_failure(
        target
            .iter()
            .find(|&p| family.is_base(p))
            .map(|p| format!("target point {p} is a base point")),
    );

    let c_points_base =
        Check::from_first_failure(chain.steps.iter().enumerate().find_map(|(i, s)| {
            s.c_points
                .iter()
                .position(|&c| !family.is_base(c))
                .map(|j| {
                    format!(
                        "c[{},{}] = {} is not a base point",
                        i + 1,
                        j + 1,
                        s.c_points[j]
                    )
                })
        }));

    let mut failure = None;
    'outer: for (i, step) in chain.steps.iter().enumerate() {
        let set = family.members(step.a_index);
        for (j, &c) in step.c_points.iter().enumerate() {
            if !set.contains(c) {
                failure = Some(format!(
                    "c[{},{}] = {c} is not in a_{}",
                    i + 1,
                    j + 1,
                    i + 1
                ));
                break 'outer;
            }
        }
        for (ip, earlier) in chain.steps[..i].iter().enumerate() {
            for (jp, &c) in earlier.c_points.iter().enumerate() {
                if set.contains(c) {
                    failure = Some(format!(
                        "c[{},{}] = {c} lies in a_{}",
                        ip + 1,
                        jp + 1,
                        i + 1
                    ));
                    break 'outer;
                }
            }
        }
    }
    let condition_i = Check::from_first_failure(failure);

    let mut failure = None;
    'rows: for (i, step) in chain.steps.iter().enumerate().skip(1) {
        let traces: Vec<Vec<bool>> = step
            .c_points
            .iter()
            .map(|&c| trace_on(family, &a[..i], c))
            .collect();
        for j in 0..traces.len() {
            for jp in (j + 1)..traces.len() {
                if traces[j] == traces[jp] {
                    failure = Some(format!(
                        "c[{},{}] and c[{},{}] share a trace on a_1..a_{}",
                        i + 1,
                        j + 1,
                        i + 1,
                        jp + 1,
                        i
                    ));
                    break 'rows;
                }
            }
        }
    }
    let condition_ii = Check::from_first_failure(failure);

    let labelled: Vec<((usize, usize), Vec<bool>)> = chain
        .steps
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.c_points
                .iter()
                .enumerate()
                .map(move |(j, &c)| ((i + 1, j + 1), c))
        })
        .map(|(ij, c)| (ij, trace_on(family, &a, c)))
        .collect();
    let mut failure = None;
    'pairs: for x in 0..labelled.len() {
        for y in (x + 1)..labelled.len() {
            if labelled[x].1 == labelled[y].1 {
                let ((i, j), (ip, jp)) = (labelled[x].0, labelled[y].0);
                failure = Some(format!(
                    "c[{i},{j}] and c[{ip},{jp}] share a trace on a_1..a_{n}"
                ));
                break 'pairs;
            }
        }
    }
    let distinct_traces = Check::from_first_failure(failure);

    let trace_count = labelled
        .iter()
        .map(|(_, t)| t.clone())
        .collect::<HashSet<_>>()
        .len();
    let required_traces = n * (n + 1) / 2;
    let bound = if trace_count >= required_traces {
        Check::pass()
    } else {
        Check::fail(format!(
            "{trace_count} distinct traces, need {required_traces}"
        ))
    };

    let recomputed_s: Vec<usize> = (1..=n)
        .map(|i| {
            target
                .iter()
                .map(|p| trace_on(family, &a[..i], p))
                .collect::<HashSet<_>>()
                .len()
        })
        .collect();
    let mut failure = None;
    for i in 0..n {
        if recomputed_s[i] != chain.s_values[i] {
            failure = Some(format!(
                "recorded s_{} = {}, recount gives {}",
                i + 1,
                chain.s_values[i],
                recomputed_s[i]
            ));
        } else if recomputed_s[i] < i + 2 {
            failure = Some(format!("s_{} = {} < {}", i + 1, recomputed_s[i], i + 2));
        } else if i > 0 && recomputed_s[i] <= recomputed_s[i - 1] {
            failure = Some(format!(
                "s values not strictly increasing at step {}",
                i + 1
            ));
        }
        if failure.is_some() {
            break;
        }
    }
    let s_values = Check::from_first_failure(failure);

    Ok(VerificationReport {
        n,
        target_external,
        c_points_base,
        condition_i,
        condition_ii,
        distinct_traces,
        trace_count,
        required_traces,
        bound,
        recomputed_s,
        s_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> (SetFamily, PointSet) {
        let f = SetFamily::new(10, [8, 9], [("S1", vec![8, 0])]).unwrap();
        let b = f.point_set([8, 9]).unwrap();
        (f, b)
    }

    #[test]
    fn candidate_on_empty_chain() {
        let (f, b) = single();
        let c = candidate_theta(&f, &b, &WitnessChain::default()).unwrap();
        assert_eq!(c, vec![0]);
    }

    #[test]
    fn single_set_gets_stuck_after_one_step() {
        let (f, b) = single();
        let out = build_quadratic_witness(&f, &b, 2).unwrap();
        match out {
            WitnessOutcome::Stuck { chain, certificate } => {
                assert_eq!(chain.len(), 1);
                assert_eq!(chain.s_values, vec![2]);
                assert_eq!(chain.steps[0].c_points, vec![0]);
                assert_eq!(certificate.reached_n, 1);
                assert_eq!(certificate.reason, StuckReason::NoSplittingSet);
                assert!(candidate_theta(&f, &b, &chain).unwrap().is_empty());
                assert!(verify_witness(&f, &b, &chain).unwrap().all_passed());
            }
            other => panic!("expected stuck, got {other:?}"),
        }
    }

    #[test]
    fn singleton_atoms_cannot_split() {
        // after a_1, both target atoms are singletons
        let f = SetFamily::new(
            6,
            [4, 5],
            [("A", vec![0, 4]), ("B", vec![1, 5]), ("C", vec![2, 4])],
        )
        .unwrap();
        let b = f.point_set([4, 5]).unwrap();
        let chain = build_quadratic_witness(&f, &b, 1).unwrap();
        let chain = chain.chain().clone();
        assert_eq!(chain.len(), 1);
        assert!(candidate_theta(&f, &b, &chain).unwrap().is_empty());
        let t = theta_trace(&f, &b, &chain).unwrap();
        assert!(t.splitting.is_empty());
    }

    #[test]
    fn sets_containing_first_c_are_excluded() {
        // every set contains point 0, which becomes c_{1,1}
        let f = SetFamily::new(
            8,
            [4, 5, 6, 7],
            [
                ("A", vec![0, 1, 4, 5]),
                ("B", vec![0, 2, 4, 6]),
                ("C", vec![0, 3, 5, 6]),
            ],
        )
        .unwrap();
        let b = f.point_set([4, 5, 6, 7]).unwrap();
        let out = build_quadratic_witness(&f, &b, 3).unwrap();
        let chain = out.chain();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.steps[0].c_points, vec![0]);
        assert!(candidate_theta(&f, &b, chain).unwrap().is_empty());
        match out {
            WitnessOutcome::Stuck { certificate, .. } => {
                assert_eq!(certificate.reason, StuckReason::NoSetAvoidingWitnesses)
            }
            _ => panic!("expected stuck"),
        }
    }

    #[test]
    fn target_must_be_external() {
        let (f, _) = single();
        let bad = f.point_set([0, 9]).unwrap();
        assert!(matches!(
            build_quadratic_witness(&f, &bad, 1),
            Err(Error::TargetMeetsBase { point: 0 })
        ));
        assert!(matches!(
            candidate_theta(&f, &bad, &WitnessChain::default()),
            Err(Error::TargetMeetsBase { .. })
        ));
        assert!(build_quadratic_witness(&f, &f.empty_points(), 1).is_err());
    }

    #[test]
    fn swapped_c_points_break_condition_i() {
        let (f, b) = crate::generators::gen_witness_rich(3, 7).unwrap();
        let chain = build_quadratic_witness(&f, &b, 3).unwrap().chain().clone();
        assert!(verify_witness(&f, &b, &chain).unwrap().all_passed());
        let mut bad = chain.clone();
        let x = bad.steps[0].c_points[0];
        bad.steps[0].c_points[0] = bad.steps[2].c_points[1];
        bad.steps[2].c_points[1] = x;
        let r = verify_witness(&f, &b, &bad).unwrap();
        assert!(!r.condition_i.passed);
        assert!(r.condition_i.detail.is_some());
    }

    #[test]
    fn malformed_chain_rejected() {
        let (f, b) = single();
        let chain = WitnessChain {
            steps: vec![WitnessStep {
                a_index: 0,
                c_points: vec![0, 1],
            }],
            atom_history: vec![],
            s_values: vec![2],
        };
        assert!(matches!(
            verify_witness(&f, &b, &chain),
            Err(Error::MalformedChain(_))
        ));
    }

    #[test]
    fn exhaustive_beats_greedy_when_greedy_choice_is_bad() {
        // Greedy takes A first; its c point (0) lies in C, the only set that
        // could split further. Starting with B leaves C admissible.
        let f = SetFamily::new(
            12,
            [8, 9, 10, 11],
            [
                ("A", vec![0, 8, 9]),
                ("B", vec![1, 4, 8, 9]),
                ("C", vec![0, 2, 3, 4, 8, 10]),
            ],
        )
        .unwrap();
        let b = f.point_set([8, 9, 10, 11]).unwrap();
        let greedy = build_quadratic_witness(&f, &b, 2).unwrap();
        assert_eq!(greedy.chain().len(), 1);
        let ex = build_quadratic_witness_exhaustive(&f, &b, 2, 1000).unwrap();
        assert!(ex.search_complete);
        assert!(ex.outcome.is_complete());
        let chain = ex.outcome.chain();
        assert_eq!(chain.a_indices(), vec![1, 2]);
        assert!(verify_witness(&f, &b, chain).unwrap().all_passed());
    }
}
