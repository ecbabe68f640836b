//! Families with known structure, reproducible from a 64-bit seed.

use serde::{Deserialize, Serialize};

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::rng::SplitMix64;
use crate::shatter::atom_count;

/// Everything needed to regenerate a family. Stored in structured family
/// files as the `generator` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Intervals {
        count: usize,
        universe_size: usize,
        seed: u64,
    },
    HalfplaneGrid {
        count: usize,
        grid_side: usize,
        seed: u64,
    },
    Random {
        count: usize,
        universe_size: usize,
        density: f64,
        seed: u64,
        #[serde(default)]
        nonempty: bool,
    },
    WitnessRich {
        depth: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    /// Builds the family, with this spec attached as provenance (and the
    /// target attached for `WitnessRich`).
    pub fn generate(&self) -> Result<SetFamily> {
        let family = match *self {
            GeneratorSpec::Intervals {
                count,
                universe_size,
                seed,
            } => gen_intervals(count, universe_size, seed)?,
            GeneratorSpec::HalfplaneGrid {
                count,
                grid_side,
                seed,
            } => gen_halfplane_grid(count, grid_side, seed)?,
            GeneratorSpec::Random {
                count,
                universe_size,
                density,
                seed,
                nonempty,
            } => gen_random(count, universe_size, density, seed, nonempty)?,
            GeneratorSpec::WitnessRich { depth, seed } => {
                let (f, b) = gen_witness_rich(depth, seed)?;
                f.with_target(b.iter())?
            }
        };
        Ok(family.with_generator(self.clone()))
    }
}

/// `count` random integer intervals `[l, r]` over `0..universe_size`.
pub fn gen_intervals(count: usize, universe_size: usize, seed: u64) -> Result<SetFamily> {
    if count == 0 || universe_size < 2 * count {
        return Err(Error::InvalidParameter(format!(
            "intervals need count >= 1 and universe >= 2*count, got count={count}, universe={universe_size}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let sets = (0..count).map(|k| {
        let a = rng.below_usize(universe_size);
        let b = rng.below_usize(universe_size);
        (format!("I{k}"), a.min(b)..=a.max(b))
    });
    let sets: Vec<_> = sets.collect();
    SetFamily::new(universe_size, [], sets)
}

const LINE_TRIES: usize = 10_000;
const GRID_CLEARANCE: f64 = 1e-9;

/// Lines `y = slope * x + intercept` through two uniform points of the
/// square `[0, side-1]^2`; each set holds the grid points strictly below its
/// line. Grid point `(x, y)` has index `y * side + x`.
///
/// A line is accepted only if it passes no grid point and the first `k`
/// accepted lines cut the grid into exactly `1 + k + k(k-1)/2` nonempty
/// cells, so every sub-arrangement is simple with all crossings realized on
/// grid points.
pub fn gen_halfplane_grid(count: usize, grid_side: usize, seed: u64) -> Result<SetFamily> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "halfplane count must be at least 1".into(),
        ));
    }
    if grid_side < 2 {
        return Err(Error::InvalidParameter(
            "grid side must be at least 2".into(),
        ));
    }
    let n_points = grid_side * grid_side;
    let span = (grid_side - 1) as f64;
    let mut rng = SplitMix64::new(seed);
    let mut family = SetFamily::all_base(n_points, Vec::<Vec<usize>>::new())?;
    for k in 0..count {
        let mut accepted = false;
        for _ in 0..LINE_TRIES {
            let (x1, y1) = (rng.unit() * span, rng.unit() * span);
            let (x2, y2) = (rng.unit() * span, rng.unit() * span);
            let dx = x2 - x1;
            if dx.abs() < 1e-3 * span {
                continue;
            }
            let slope = (y2 - y1) / dx;
            let intercept = y1 - slope * x1;
            let mut members = PointSet::empty(n_points);
            let mut clear = true;
            for y in 0..grid_side {
                for x in 0..grid_side {
                    let h = slope * x as f64 + intercept - y as f64;
                    if h.abs() < GRID_CLEARANCE {
                        clear = false;
                    } else if h > 0.0 {
                        members.insert(y * grid_side + x);
                    }
                }
            }
            if !clear {
                continue;
            }
            let candidate = family.with_set(format!("H{k}"), members)?;
            let lines = k + 1;
            let all: Vec<usize> = (0..lines).collect();
            if atom_count(&candidate, &all)? == 1 + lines + lines * (lines - 1) / 2 {
                family = candidate;
                accepted = true;
                break;
            }
        }
        if !accepted {
            return Err(Error::ResamplingExhausted {
                what: format!("line {k} in general position on a {grid_side}x{grid_side} grid"),
                tries: LINE_TRIES,
            });
        }
    }
    Ok(family)
}

/// Independent coin flips with probability `density`. With `nonempty`, an
/// empty draw gets one uniformly chosen point.
pub fn gen_random(
    count: usize,
    universe_size: usize,
    density: f64,
    seed: u64,
    nonempty: bool,
) -> Result<SetFamily> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    if universe_size == 0 && nonempty && count > 0 {
        return Err(Error::InvalidParameter(
            "nonempty sets need a nonempty universe".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut sets = Vec::with_capacity(count);
    for _ in 0..count {
        let mut s: Vec<usize> = (0..universe_size).filter(|_| rng.chance(density)).collect();
        if s.is_empty() && nonempty {
            s.push(rng.below_usize(universe_size));
        }
        sets.push(s);
    }
    SetFamily::all_base(universe_size, sets)
}

/// A family and extension-only target on which the greedy witness
/// construction reaches length `depth`.
///
/// The target has `2^depth` points; set `A_k` holds the target points whose
/// `(k-1)`-th bit is set, so `A_1..A_k` split the target dyadically. For every
/// step `n` and every signature `σ` on `A_1..A_{n-1}` there is a fresh base
/// point lying in `A_i` (for `i < n`) exactly when `σ_i = 1`, in `A_n`, and in
/// no later `A`. Base points of step `n` get lower indices than those of later
/// steps, so the construction's lowest-index pick always takes a point of the
/// current step. Base-only distractor sets (never splitting the target) are
/// mixed in; the seed drives the distractors and the order of points within
/// each step.
pub fn gen_witness_rich(depth: usize, seed: u64) -> Result<(SetFamily, PointSet)> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    if depth > 16 {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} would need 2^{depth} target points"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let target_len = 1usize << depth;
    let base_len = target_len - 1;
    let universe = base_len + target_len;

    // base points grouped by step; entry = (step n, signature bits on A_1..A_{n-1})
    let mut base_labels: Vec<(usize, usize)> = Vec::with_capacity(base_len);
    for n in 1..=depth {
        let mut group: Vec<(usize, usize)> = (0..(1usize << (n - 1))).map(|sig| (n, sig)).collect();
        rng.shuffle(&mut group);
        base_labels.extend(group);
    }

    let mut a_sets: Vec<Vec<usize>> = vec![Vec::new(); depth];
    for (label, &(n, sig)) in base_labels.iter().enumerate() {
        for (k, set) in a_sets.iter_mut().enumerate().take(n - 1) {
            if sig >> k & 1 == 1 {
                set.push(label);
            }
        }
        a_sets[n - 1].push(label);
    }
    for t in 0..target_len {
        for (k, set) in a_sets.iter_mut().enumerate() {
            if t >> k & 1 == 1 {
                set.push(base_len + t);
            }
        }
    }

    let mut sets: Vec<(String, Vec<usize>)> = Vec::new();
    let mut next_a = 0;
    let mut distractors = 0;
    while next_a < depth || distractors < depth {
        let take_distractor = distractors < depth && (next_a == depth || rng.chance(0.5));
        if take_distractor {
            let members: Vec<usize> = (0..base_len).filter(|_| rng.chance(0.5)).collect();
            sets.push((format!("D{distractors}"), members));
            distractors += 1;
        } else {
            sets.push((
                format!("A{}", next_a + 1),
                std::mem::take(&mut a_sets[next_a]),
            ));
            next_a += 1;
        }
    }

    let family = SetFamily::new(universe, base_len..universe, sets)?;
    let target = family.point_set(base_len..universe)?;
    Ok((family, target))
}
