//! (p,q)-properties, maximum pairwise-disjoint subfamilies and the greedy
//! extraction of pairwise-disjoint sequences avoiding an external target.

use serde::{Deserialize, Serialize};

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::shatter::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointResult {
    pub size: usize,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub p: usize,
    pub q: usize,
    pub holds: bool,
    /// `p` sets no `q` of which share a point.
    pub violation: Option<Vec<usize>>,
    pub disjoint_witness: Option<Vec<usize>>,
}

/// Adjacency over set indices: `adj[i]` holds every other set meeting set `i`.
pub fn intersection_graph(family: &SetFamily) -> Vec<PointSet> {
    let m = family.len();
    let mut adj = vec![PointSet::empty(m); m];
    for i in 0..m {
        for j in (i + 1)..m {
            if family.members(i).intersects(family.members(j)) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

struct Mis<'a> {
    adj: &'a [PointSet],
    cap: usize,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Mis<'_> {
    /// Greedy clique cover of `cand`; its size bounds any independent subset.
    fn clique_cover(&self, cand: &PointSet) -> usize {
        let mut common: Vec<PointSet> = Vec::new();
        for v in cand.iter() {
            match common.iter_mut().find(|c| c.contains(v)) {
                Some(c) => c.intersect_with(&self.adj[v]),
                None => common.push(self.adj[v].clone()),
            }
        }
        common.len()
    }

    fn done(&self) -> bool {
        self.best.len() >= self.cap
    }

    fn expand(&mut self, mut cand: PointSet) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.done() {
                return;
            }
        }
        if cand.is_empty() || self.current.len() + self.clique_cover(&cand) <= self.best.len() {
            return;
        }
        while let Some(v) = cand.first() {
            if self.current.len() + cand.len() <= self.best.len() {
                return;
            }
            cand.remove(v);
            let next = cand.difference(&self.adj[v]);
            self.current.push(v);
            self.expand(next);
            self.current.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// Largest pairwise-disjoint subfamily (lexicographically first among the
/// largest). With `cap`, stops as soon as `cap` disjoint sets are found.
pub fn max_disjoint(family: &SetFamily, cap: Option<usize>) -> DisjointResult {
    let m = family.len();
    let adj = intersection_graph(family);
    let mut mis = Mis {
        adj: &adj,
        cap: cap.unwrap_or(usize::MAX),
        best: Vec::new(),
        current: Vec::new(),
    };
    if mis.cap > 0 {
        mis.expand(PointSet::full(m));
    }
    DisjointResult {
        size: mis.best.len(),
        witness: mis.best,
    }
}

pub fn has_pq(family: &SetFamily, p: usize, q: usize, budget: u64) -> Result<PropertyReport> {
    if q < 2 || p < q {
        return Err(Error::InvalidParameter(format!(
            "(p,q) needs p >= q >= 2, got ({p},{q})"
        )));
    }
    if q == 2 {
        let r = max_disjoint(family, Some(p));
        let holds = r.size < p;
        return Ok(PropertyReport {
            p,
            q,
            holds,
            violation: (!holds).then(|| r.witness.clone()),
            disjoint_witness: Some(r.witness),
        });
    }
    let m = family.len();
    if m < p {
        return Ok(PropertyReport {
            p,
            q,
            holds: true,
            violation: None,
            disjoint_witness: None,
        });
    }
    let needed = binomial(m, p);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut search = DepthSearch {
        family,
        p,
        q,
        chosen: Vec::with_capacity(p),
    };
    let mut levels = vec![family.empty_points(); q + 1];
    levels[0] = PointSet::full(family.universe_size());
    let violation = search.find_violation(&levels, 0);
    Ok(PropertyReport {
        p,
        q,
        holds: violation.is_none(),
        violation,
        disjoint_witness: None,
    })
}

struct DepthSearch<'a> {
    family: &'a SetFamily,
    p: usize,
    q: usize,
    chosen: Vec<usize>,
}

impl DepthSearch<'_> {
    /// `levels[k]` holds the points lying in at least `k` chosen sets.
    fn find_violation(&mut self, levels: &[PointSet], start: usize) -> Option<Vec<usize>> {
        if !levels[self.q].is_empty() {
            // every extension keeps a point of multiplicity >= q
            return None;
        }
        if self.chosen.len() == self.p {
            return Some(self.chosen.clone());
        }
        let remaining = self.p - self.chosen.len();
        for i in start..=(self.family.len() - remaining) {
            let s = self.family.members(i);
            let mut next = levels.to_vec();
            for k in (1..=self.q).rev() {
                let add = next[k - 1].intersection(s);
                next[k].union_with(&add);
            }
            self.chosen.push(i);
            let found = self.find_violation(&next, i + 1);
            self.chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// True iff the listed sets are pairwise disjoint.
pub fn pairwise_disjoint(family: &SetFamily, indices: &[usize]) -> bool {
    indices.iter().enumerate().all(|(k, &i)| {
        indices[k + 1..]
            .iter()
            .all(|&j| !family.members(i).intersects(family.members(j)))
    })
}

/// Re-checks the witnesses carried by a report by direct membership counts.
pub fn check_property_report(family: &SetFamily, report: &PropertyReport) -> Result<bool> {
    if let Some(v) = &report.violation {
        family.check_indices(v)?;
        if report.holds || v.len() != report.p || !strictly_increasing(v) {
            return Ok(false);
        }
        let max_mult = (0..family.universe_size())
            .map(|pt| {
                v.iter()
                    .filter(|&&i| family.members(i).contains(pt))
                    .count()
            })
            .max()
            .unwrap_or(0);
        if max_mult >= report.q {
            return Ok(false);
        }
    } else if !report.holds {
        return Ok(false);
    }
    if let Some(w) = &report.disjoint_witness {
        family.check_indices(w)?;
        if !strictly_increasing(w) || !pairwise_disjoint(family, w) {
            return Ok(false);
        }
        if report.q == 2 && report.holds != (w.len() < report.p) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Picks, in index order, every set disjoint from `avoid` and from all sets
/// picked before it. The result is maximal.
pub fn disjoint_sequence_greedy(family: &SetFamily, avoid: &PointSet) -> Vec<usize> {
    assert_eq!(
        avoid.capacity(),
        family.universe_size(),
        "avoid set must live in the family's universe"
    );
    let mut blocked = avoid.clone();
    let mut out = Vec::new();
    for (i, s) in family.sets().iter().enumerate() {
        if !s.members.intersects(&blocked) {
            blocked.union_with(&s.members);
            out.push(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singletons() -> SetFamily {
        SetFamily::all_base(3, [vec![0], vec![1], vec![2]]).unwrap()
    }

    fn star() -> SetFamily {
        SetFamily::all_base(4, [vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap()
    }

    fn intervals() -> SetFamily {
        SetFamily::all_base(10, [0..=3, 2..=5, 4..=7, 6..=9]).unwrap()
    }

    #[test]
    fn max_disjoint_examples() {
        assert_eq!(
            max_disjoint(&singletons(), None),
            DisjointResult {
                size: 3,
                witness: vec![0, 1, 2]
            }
        );
        assert_eq!(max_disjoint(&star(), None).size, 1);
        let r = max_disjoint(&intervals(), None);
        assert_eq!(r.size, 2);
        assert_eq!(r.witness, vec![0, 2]);
        assert_eq!(max_disjoint(&singletons(), Some(2)).size, 2);
        assert_eq!(max_disjoint(&singletons(), Some(0)).size, 0);
        let empty = SetFamily::all_base(3, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(max_disjoint(&empty, None).size, 0);
    }

    #[test]
    fn pq_examples() {
        let r = has_pq(&star(), 5, 2, 1000).unwrap();
        assert!(r.holds);
        let r = has_pq(&singletons(), 3, 2, 1000).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violation, Some(vec![0, 1, 2]));
        assert!(has_pq(&intervals(), 3, 2, 1000).unwrap().holds);
        assert!(matches!(
            has_pq(&star(), 1, 1, 10),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            has_pq(&star(), 2, 3, 10),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn general_q() {
        // 3 intervals pairwise overlapping but with no common point
        let f = SetFamily::all_base(6, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let r = has_pq(&f, 3, 3, 1000).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violation, Some(vec![0, 1, 2]));
        assert!(check_property_report(&f, &r).unwrap());
        assert!(has_pq(&f, 3, 2, 1000).unwrap().holds);
        assert!(has_pq(&star(), 3, 3, 1000).unwrap().holds);
        let many = SetFamily::all_base(3, (0..40).map(|k| vec![k % 3])).unwrap();
        assert!(matches!(
            has_pq(&many, 10, 3, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn report_checks_reject_tampering() {
        let f = singletons();
        let mut r = has_pq(&f, 3, 2, 1000).unwrap();
        assert!(check_property_report(&f, &r).unwrap());
        r.violation = Some(vec![0, 1, 1]);
        assert!(!check_property_report(&f, &r).unwrap());
        let s = star();
        let mut r = has_pq(&s, 2, 2, 1000).unwrap();
        assert!(check_property_report(&s, &r).unwrap());
        r.disjoint_witness = Some(vec![0, 1]);
        assert!(!check_property_report(&s, &r).unwrap());
    }

    #[test]
    fn greedy_sequence_examples() {
        let f = singletons();
        assert_eq!(
            disjoint_sequence_greedy(&f, &f.empty_points()),
            vec![0, 1, 2]
        );
        let s = star();
        assert_eq!(disjoint_sequence_greedy(&s, &s.empty_points()), vec![0]);
        let g = SetFamily::all_base(10, [vec![8, 0], vec![9, 1], vec![0, 1]]).unwrap();
        let b = g.point_set([8, 9]).unwrap();
        assert_eq!(disjoint_sequence_greedy(&g, &b), vec![2]);
        let all = g.point_set(0..10).unwrap();
        assert!(disjoint_sequence_greedy(&g, &all).is_empty());
    }
}
