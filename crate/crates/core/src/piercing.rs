//! Minimum partitions into consistent subfamilies.
//!
//! For a finite family a class is consistent iff its members share a point,
//! so a partition into `k` consistent classes is the same thing as a set of
//! `k` points meeting every set. We solve the piercing problem as set cover
//! over candidate points and emit the partition explicitly.

use serde::{Deserialize, Serialize};

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::pq::{intersection_graph, max_disjoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingSolution {
    pub tau: usize,
    pub piercing_points: Vec<usize>,
    /// `assignment[set] = class`; every set of class `k` contains
    /// `piercing_points[k]`.
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactPiercing {
    pub solution: PiercingSolution,
    /// False when the node budget ran out before optimality was proved.
    pub optimal: bool,
    pub lower_bound: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionVerdict {
    pub valid: bool,
    pub first_failing_class: Option<usize>,
}

fn reject_empty(family: &SetFamily) -> Result<()> {
    match family.sets().iter().find(|s| s.members.is_empty()) {
        Some(s) => Err(Error::EmptySet {
            name: s.name.clone(),
        }),
        None => Ok(()),
    }
}

/// Column of a point: the sets containing it.
fn column(family: &SetFamily, point: usize) -> PointSet {
    let mut c = PointSet::empty(family.len());
    for (i, s) in family.sets().iter().enumerate() {
        if s.members.contains(point) {
            c.insert(i);
        }
    }
    c
}

/// Points worth branching on: one representative (lowest index) per distinct
/// nonempty column, with columns strictly contained in another dropped.
fn candidate_points(family: &SetFamily) -> Vec<(usize, PointSet)> {
    let mut reps: Vec<(usize, PointSet)> = Vec::new();
    for p in 0..family.universe_size() {
        let c = column(family, p);
        if !c.is_empty() && !reps.iter().any(|(_, r)| *r == c) {
            reps.push((p, c));
        }
    }
    reps.iter()
        .filter(|(_, c)| !reps.iter().any(|(_, d)| d != c && c.is_subset(d)))
        .cloned()
        .collect()
}

/// Assigns each set to the first listed point containing it and drops
/// points left without sets.
fn partition_from_points(family: &SetFamily, points: &[usize]) -> PiercingSolution {
    let owner: Vec<usize> = (0..family.len())
        .map(|i| {
            points
                .iter()
                .position(|&p| family.members(i).contains(p))
                .expect("points pierce every set")
        })
        .collect();
    let mut used = vec![false; points.len()];
    for &o in &owner {
        used[o] = true;
    }
    let mut remap = vec![0; points.len()];
    let mut kept = Vec::new();
    for (k, &u) in used.iter().enumerate() {
        if u {
            remap[k] = kept.len();
            kept.push(points[k]);
        }
    }
    PiercingSolution {
        tau: kept.len(),
        piercing_points: kept,
        assignment: owner.into_iter().map(|o| remap[o]).collect(),
    }
}

/// Repeatedly takes the point in the most unassigned sets (lowest index on
/// ties). Feasible, not necessarily optimal.
pub fn transversal_greedy(family: &SetFamily) -> Result<PiercingSolution> {
    reject_empty(family)?;
    let columns: Vec<PointSet> = (0..family.universe_size())
        .map(|p| column(family, p))
        .collect();
    let mut unassigned = PointSet::full(family.len());
    let mut points = Vec::new();
    let mut assignment = vec![usize::MAX; family.len()];
    while !unassigned.is_empty() {
        let (p, hit) = columns
            .iter()
            .enumerate()
            .map(|(p, c)| (p, c.intersection(&unassigned)))
            .fold(None::<(usize, PointSet)>, |acc, (p, hit)| match acc {
                Some((_, ref h)) if h.len() >= hit.len() => acc,
                _ => Some((p, hit)),
            })
            .expect("universe is nonempty when a nonempty set exists");
        for i in hit.iter() {
            assignment[i] = points.len();
        }
        unassigned = unassigned.difference(&hit);
        points.push(p);
    }
    Ok(PiercingSolution {
        tau: points.len(),
        piercing_points: points,
        assignment,
    })
}

struct Cover<'a> {
    cands: &'a [(usize, PointSet)],
    /// candidate indices containing each set, cheapest branching first
    by_set: Vec<Vec<usize>>,
    adj: &'a [PointSet],
    budget: u64,
    nodes: u64,
    aborted: bool,
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl Cover<'_> {
    /// Greedy packing of pairwise-disjoint uncovered sets.
    fn packing_bound(&self, uncovered: &PointSet) -> usize {
        let mut blocked = PointSet::empty(uncovered.capacity());
        let mut count = 0;
        for s in uncovered.iter() {
            if !blocked.contains(s) {
                count += 1;
                blocked.union_with(&self.adj[s]);
                blocked.insert(s);
            }
        }
        count
    }

    fn search(&mut self, uncovered: PointSet) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.packing_bound(&uncovered) >= self.best.len() {
            return;
        }
        let s = uncovered
            .iter()
            .min_by_key(|&s| (self.by_set[s].len(), s))
            .expect("nonempty");
        let mut options: Vec<(usize, usize)> = self.by_set[s]
            .iter()
            .map(|&c| (c, self.cands[c].1.intersection(&uncovered).len()))
            .collect();
        options.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (c, _) in options {
            self.chosen.push(self.cands[c].0);
            self.search(uncovered.difference(&self.cands[c].1));
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

/// Minimum piercing set, proved optimal against the disjoint-packing lower
/// bound or by exhausting the cover search within `budget` nodes.
pub fn transversal_exact(family: &SetFamily, budget: u64) -> Result<ExactPiercing> {
    reject_empty(family)?;
    let greedy = transversal_greedy(family)?;
    let nu = max_disjoint(family, None).size;
    let mut best: Vec<usize> = greedy.piercing_points.clone();
    let mut nodes = 0;
    let mut optimal = best.len() == nu;
    if !optimal {
        let cands = candidate_points(family);
        let adj = intersection_graph(family);
        let by_set = (0..family.len())
            .map(|s| {
                (0..cands.len())
                    .filter(|&c| cands[c].1.contains(s))
                    .collect()
            })
            .collect();
        let mut cover = Cover {
            cands: &cands,
            by_set,
            adj: &adj,
            budget,
            nodes: 0,
            aborted: false,
            best,
            chosen: Vec::new(),
        };
        cover.search(PointSet::full(family.len()));
        nodes = cover.nodes;
        optimal = !cover.aborted;
        best = cover.best;
    }
    best.sort_unstable();
    let solution = partition_from_points(family, &best);
    Ok(ExactPiercing {
        lower_bound: if optimal { solution.tau } else { nu },
        solution,
        optimal,
        nodes,
    })
}

/// True iff every class of `assignment` has a nonempty common intersection.
pub fn verify_partition(family: &SetFamily, assignment: &[usize]) -> Result<PartitionVerdict> {
    if assignment.len() != family.len() {
        return Err(Error::PartialAssignment {
            expected: family.len(),
            got: assignment.len(),
        });
    }
    let classes = assignment.iter().max().map_or(0, |&k| k + 1);
    let mut common = vec![PointSet::full(family.universe_size()); classes];
    for (i, &k) in assignment.iter().enumerate() {
        common[k].intersect_with(family.members(i));
    }
    let failing = (0..classes).find(|&k| assignment.contains(&k) && common[k].is_empty());
    Ok(PartitionVerdict {
        valid: failing.is_none(),
        first_failing_class: failing,
    })
}

/// Checks a solution's own claims: class count, and that each set contains
/// its class's piercing point.
pub fn verify_solution(family: &SetFamily, solution: &PiercingSolution) -> Result<bool> {
    if solution.assignment.len() != family.len() {
        return Err(Error::PartialAssignment {
            expected: family.len(),
            got: solution.assignment.len(),
        });
    }
    if solution.tau != solution.piercing_points.len() {
        return Ok(false);
    }
    for (i, &k) in solution.assignment.iter().enumerate() {
        match solution.piercing_points.get(k) {
            Some(&p) if family.members(i).contains(p) => {}
            _ => return Ok(false),
        }
    }
    Ok(verify_partition(family, &solution.assignment)?.valid)
}
