//! Dual shatter function: the largest number of boolean atoms (zero cell
//! included) induced by any `n` sets of a family.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::family::{initial_cells, refine, SetFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShatterMode {
    Exact,
    GreedyLowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterResult {
    pub n: usize,
    pub value: usize,
    pub witness: Vec<usize>,
    pub mode: ShatterMode,
}

/// Atom count of a subfamily by partition refinement.
pub fn atom_count(family: &SetFamily, subfamily: &[usize]) -> Result<usize> {
    family.check_indices(subfamily)?;
    let mut cells = initial_cells(family);
    for &i in subfamily {
        cells = refine(&cells, family.members(i));
    }
    Ok(cells.len())
}

/// `C(m, k)`, saturating at `u128::MAX`.
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (m - i) / (i + 1) stays integral at every step
        match acc.checked_mul((m - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

pub fn dual_shatter(
    family: &SetFamily,
    n: usize,
    mode: ShatterMode,
    budget: u64,
) -> Result<ShatterResult> {
    let m = family.len();
    if n == 0 || n > m {
        return Err(Error::InvalidParameter(format!(
            "subfamily size {n} must lie in 1..={m}"
        )));
    }
    match mode {
        ShatterMode::Exact => {
            let needed = binomial(m, n);
            if needed > budget as u128 {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let (value, witness) = exact_max(family, n);
            Ok(ShatterResult {
                n,
                value,
                witness,
                mode,
            })
        }
        ShatterMode::GreedyLowerBound => {
            let (value, witness) = greedy_max(family, n);
            Ok(ShatterResult {
                n,
                value,
                witness,
                mode,
            })
        }
    }
}

struct Search<'a> {
    family: &'a SetFamily,
    /// No subfamily can exceed the atom count of the whole family.
    cap: usize,
    global: &'a AtomicUsize,
    best: Option<(usize, Vec<usize>)>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, cells: &[PointSet], start: usize, remaining: usize) {
        if remaining == 0 {
            let v = cells.len();
            if self.best.as_ref().is_none_or(|(b, _)| v > *b) {
                self.best = Some((v, self.chosen.clone()));
                self.global.fetch_max(v, Ordering::Relaxed);
            }
            return;
        }
        let growth = 1usize.checked_shl(remaining as u32).unwrap_or(usize::MAX);
        let bound = cells.len().saturating_mul(growth).min(self.cap);
        if let Some((b, _)) = &self.best {
            if bound <= *b {
                return;
            }
        }
        // Strict: another branch only beats this one with a strictly larger value.
        if bound < self.global.load(Ordering::Relaxed) {
            return;
        }
        let m = self.family.len();
        for i in start..=(m - remaining) {
            self.chosen.push(i);
            let next = refine(cells, self.family.members(i));
            self.run(&next, i + 1, remaining - 1);
            self.chosen.pop();
            if matches!(&self.best, Some((b, _)) if *b >= self.cap) {
                return;
            }
        }
    }
}

/// Lexicographically-first maximizer over all `n`-subsets. Branches on the
/// first index run in parallel; the reduction keeps the lowest first index
/// among ties, which is the sequential answer.
fn exact_max(family: &SetFamily, n: usize) -> (usize, Vec<usize>) {
    let m = family.len();
    let root = initial_cells(family);
    let all: Vec<usize> = (0..m).collect();
    let cap = atom_count(family, &all).expect("indices valid");
    let global = AtomicUsize::new(0);

    let branches: Vec<Option<(usize, Vec<usize>)>> = (0..=(m - n))
        .into_par_iter()
        .map(|first| {
            let mut s = Search {
                family,
                cap,
                global: &global,
                best: None,
                chosen: vec![first],
            };
            let cells = refine(&root, family.members(first));
            s.run(&cells, first + 1, n - 1);
            s.best
        })
        .collect();

    let mut best: Option<(usize, Vec<usize>)> = None;
    for (v, w) in branches.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, w));
        }
    }
    best.expect("at least one branch reaches a leaf")
}

/// Adds, one at a time, the set that splits the most current atoms.
fn greedy_max(family: &SetFamily, n: usize) -> (usize, Vec<usize>) {
    let mut cells = initial_cells(family);
    let mut used = vec![false; family.len()];
    let mut chosen = Vec::with_capacity(n);
    for _ in 0..n {
        let mut pick: Option<(usize, Vec<PointSet>)> = None;
        for i in (0..family.len()).filter(|&i| !used[i]) {
            let next = refine(&cells, family.members(i));
            if pick.as_ref().is_none_or(|(_, c)| next.len() > c.len()) {
                pick = Some((i, next));
            }
        }
        let (i, next) = pick.expect("n does not exceed the number of sets");
        used[i] = true;
        chosen.push(i);
        cells = next;
    }
    chosen.sort_unstable();
    (cells.len(), chosen)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub results: Vec<ShatterResult>,
    /// Least-squares slope of `ln value` against `ln n` over the upper half
    /// of the computed range. Diagnostic only.
    pub exponent: f64,
}

/// Values for `n = 1..=min(n_max, |family|)` plus a fitted growth exponent.
pub fn growth_profile(
    family: &SetFamily,
    n_max: usize,
    mode: ShatterMode,
    budget: u64,
) -> Result<GrowthProfile> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "growth profile needs n_max >= 2, got {n_max}"
        )));
    }
    if family.is_empty() {
        return Err(Error::InvalidParameter("family has no sets".into()));
    }
    let top = n_max.min(family.len());
    let results = (1..=top)
        .map(|n| dual_shatter(family, n, mode, budget))
        .collect::<Result<Vec<_>>>()?;
    let lo = (top / 2).max(1);
    let pts: Vec<(f64, f64)> = results[lo - 1..]
        .iter()
        .filter(|r| r.value > 0)
        .map(|r| ((r.n as f64).ln(), (r.value as f64).ln()))
        .collect();
    Ok(GrowthProfile {
        results,
        exponent: slope(&pts),
    })
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    if pts.len() < 2 {
        return 0.0;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
