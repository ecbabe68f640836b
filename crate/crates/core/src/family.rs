//! Finite set families, membership signatures and boolean atoms.
//!
//! A [`SetFamily`] lives over the dense universe `0..universe_size`, split into
//! base points and extension points. Extension points model elements that
//! exist only in an elementary extension: an external target living entirely
//! in extension points has no base members by construction.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::PointSet;
use crate::error::{Error, Location, Result};
use crate::generators::GeneratorSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSet {
    pub name: String,
    pub members: PointSet,
}

/// Immutable incidence structure of named sets over a finite universe.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFamily {
    universe_size: usize,
    extension: PointSet,
    sets: Vec<NamedSet>,
    target: Option<PointSet>,
    generator: Option<GeneratorSpec>,
}

impl SetFamily {
    /// Builds a family, checking ranges and name uniqueness.
    pub fn new<N, I>(
        universe_size: usize,
        extension: impl IntoIterator<Item = usize>,
        sets: impl IntoIterator<Item = (N, I)>,
    ) -> Result<Self>
    where
        N: Into<String>,
        I: IntoIterator<Item = usize>,
    {
        let extension = PointSet::from_indices(universe_size, extension).map_err(|point| {
            Error::FieldPointOutOfRange {
                location: Location::Field("extension"),
                point,
                universe: universe_size,
            }
        })?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (k, (name, points)) in sets.into_iter().enumerate() {
            let name = name.into();
            let members = PointSet::from_indices(universe_size, points).map_err(|point| {
                Error::PointOutOfRange {
                    location: Location::Entry(k),
                    set: name.clone(),
                    point,
                    universe: universe_size,
                }
            })?;
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateName {
                    location: Location::Entry(k),
                    name,
                });
            }
            out.push(NamedSet { name, members });
        }
        Ok(Self {
            universe_size,
            extension,
            sets: out,
            target: None,
            generator: None,
        })
    }

    /// All points base; sets are named `S0`, `S1`, ...
    pub fn all_base<I>(universe_size: usize, sets: impl IntoIterator<Item = I>) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        Self::new(
            universe_size,
            [],
            sets.into_iter()
                .enumerate()
                .map(|(k, s)| (format!("S{k}"), s)),
        )
    }

    /// Attaches an external target (stored in the structured file as `target`).
    pub fn with_target(mut self, target: impl IntoIterator<Item = usize>) -> Result<Self> {
        let universe = self.universe_size;
        let t = PointSet::from_indices(universe, target).map_err(|point| {
            Error::FieldPointOutOfRange {
                location: Location::Field("target"),
                point,
                universe,
            }
        })?;
        self.target = Some(t);
        Ok(self)
    }

    pub fn with_generator(mut self, spec: GeneratorSpec) -> Self {
        self.generator = Some(spec);
        self
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[NamedSet] {
        &self.sets
    }

    pub fn members(&self, index: usize) -> &PointSet {
        &self.sets[index].members
    }

    pub fn name(&self, index: usize) -> &str {
        &self.sets[index].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.sets.iter().position(|s| s.name == name)
    }

    pub fn extension_points(&self) -> &PointSet {
        &self.extension
    }

    pub fn base_points(&self) -> PointSet {
        self.extension.complement()
    }

    pub fn is_base(&self, point: usize) -> bool {
        point < self.universe_size && !self.extension.contains(point)
    }

    pub fn target(&self) -> Option<&PointSet> {
        self.target.as_ref()
    }

    pub fn generator(&self) -> Option<&GeneratorSpec> {
        self.generator.as_ref()
    }

    pub fn empty_points(&self) -> PointSet {
        PointSet::empty(self.universe_size)
    }

    pub fn point_set(&self, points: impl IntoIterator<Item = usize>) -> Result<PointSet> {
        PointSet::from_indices(self.universe_size, points).map_err(|point| Error::InvalidPoint {
            point,
            universe: self.universe_size,
        })
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.sets.len() {
            Ok(())
        } else {
            Err(Error::InvalidSetIndex {
                index,
                count: self.sets.len(),
            })
        }
    }

    pub(crate) fn check_indices(&self, indices: &[usize]) -> Result<()> {
        indices.iter().try_for_each(|&i| self.check_index(i))
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<()> {
        if point < self.universe_size {
            Ok(())
        } else {
            Err(Error::InvalidPoint {
                point,
                universe: self.universe_size,
            })
        }
    }

    /// Returns a copy with one more set appended (names must stay unique).
    pub fn with_set(&self, name: impl Into<String>, members: PointSet) -> Result<Self> {
        let name = name.into();
        if self.index_of(&name).is_some() {
            return Err(Error::DuplicateName {
                location: Location::Entry(self.sets.len()),
                name,
            });
        }
        if members.capacity() != self.universe_size {
            return Err(Error::InvalidParameter(format!(
                "set `{name}` has capacity {} for universe {}",
                members.capacity(),
                self.universe_size
            )));
        }
        let mut out = self.clone();
        out.sets.push(NamedSet { name, members });
        Ok(out)
    }
}

/// Membership bits of one point across a subfamily, in subfamily order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<bool>);

impl Signature {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// The nonempty signature cells of a subfamily, keyed in signature order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomDecomposition {
    pub subfamily: Vec<usize>,
    pub cells: BTreeMap<Signature, PointSet>,
}

impl AtomDecomposition {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, sig: &Signature) -> Option<&PointSet> {
        self.cells.get(sig)
    }
}

pub fn point_signature(family: &SetFamily, subfamily: &[usize], point: usize) -> Result<Signature> {
    family.check_indices(subfamily)?;
    family.check_point(point)?;
    Ok(signature_unchecked(family, subfamily, point))
}

fn signature_unchecked(family: &SetFamily, subfamily: &[usize], point: usize) -> Signature {
    Signature(
        subfamily
            .iter()
            .map(|&i| family.members(i).contains(point))
            .collect(),
    )
}

/// Groups universe points by their signature on `subfamily`.
///
/// With `include_zero_cell` the all-zero cell is kept whenever it is nonempty
/// (atoms of the closure under complements); without it that cell is dropped.
pub fn boolean_atoms(
    family: &SetFamily,
    subfamily: &[usize],
    include_zero_cell: bool,
) -> Result<AtomDecomposition> {
    family.check_indices(subfamily)?;
    let mut cells: BTreeMap<Signature, PointSet> = BTreeMap::new();
    for p in 0..family.universe_size() {
        let sig = signature_unchecked(family, subfamily, p);
        if !include_zero_cell && sig.is_zero() {
            continue;
        }
        cells
            .entry(sig)
            .or_insert_with(|| family.empty_points())
            .insert(p);
    }
    Ok(AtomDecomposition {
        subfamily: subfamily.to_vec(),
        cells,
    })
}

/// Number of atoms (zero cell included) that meet `target`.
pub fn atoms_meeting(family: &SetFamily, subfamily: &[usize], target: &PointSet) -> Result<usize> {
    if target.capacity() != family.universe_size() {
        return Err(Error::InvalidParameter(format!(
            "target has capacity {} for universe {}",
            target.capacity(),
            family.universe_size()
        )));
    }
    let atoms = boolean_atoms(family, subfamily, true)?;
    Ok(atoms
        .cells
        .values()
        .filter(|c| c.intersects(target))
        .count())
}

/// Splits every cell by `set`, dropping empty halves.
pub(crate) fn refine(cells: &[PointSet], set: &PointSet) -> Vec<PointSet> {
    let mut out = Vec::with_capacity(cells.len() * 2);
    for c in cells {
        let inside = c.intersection(set);
        if inside.is_empty() {
            out.push(c.clone());
            continue;
        }
        let outside = c.difference(set);
        out.push(inside);
        if !outside.is_empty() {
            out.push(outside);
        }
    }
    out
}

/// Cells of the whole universe before any set is applied.
pub(crate) fn initial_cells(family: &SetFamily) -> Vec<PointSet> {
    if family.universe_size() == 0 {
        Vec::new()
    } else {
        vec![PointSet::full(family.universe_size())]
    }
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    universe: usize,
    #[serde(default)]
    base: Option<Vec<usize>>,
    #[serde(default)]
    extension: Vec<usize>,
    sets: Vec<SetEntry>,
    #[serde(default)]
    target: Option<Vec<usize>>,
    #[serde(default)]
    generator: Option<GeneratorSpec>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SetEntry {
    name: String,
    points: Vec<usize>,
}

/// Parses either the compact incidence format or the structured JSON format.
///
/// Input whose first non-blank character is `{` is read as structured.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    if text.trim_start().starts_with('{') {
        parse_structured(text)
    } else {
        parse_incidence(text)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        location: Location::Line { line, column },
        message: message.into(),
    }
}

fn parse_incidence(text: &str) -> Result<SetFamily> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, 0, "empty input; expected header `m n`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(syntax(hline, 1, "header must be `m n` (sets, points)"));
    }
    let parse_num = |s: &str, what: &str| {
        s.parse::<usize>().map_err(|_| {
            syntax(
                hline,
                1,
                format!("{what} `{s}` is not a nonnegative integer"),
            )
        })
    };
    let m = parse_num(fields[0], "set count")?;
    let n = parse_num(fields[1], "point count")?;

    let mut rows = Vec::with_capacity(m);
    for k in 0..m {
        let (lineno, row) = lines.next().ok_or_else(|| {
            syntax(
                hline,
                0,
                format!("header declares {m} sets, found only {k} rows"),
            )
        })?;
        let row = row.trim();
        let mut points = Vec::new();
        let mut width = 0;
        for (col, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => {
                    if col >= n {
                        return Err(Error::PointOutOfRange {
                            location: Location::Line {
                                line: lineno,
                                column: col + 1,
                            },
                            set: format!("S{k}"),
                            point: col,
                            universe: n,
                        });
                    }
                    points.push(col);
                }
                other => {
                    return Err(syntax(
                        lineno,
                        col + 1,
                        format!("unexpected character `{other}`; rows use only 0 and 1"),
                    ))
                }
            }
            width += 1;
        }
        if width != n {
            return Err(syntax(
                lineno,
                width + 1,
                format!("row has {width} columns, expected {n}"),
            ));
        }
        rows.push((format!("S{k}"), points));
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(syntax(
            lineno,
            1,
            format!("trailing content after {m} rows"),
        ));
    }
    SetFamily::new(n, [], rows)
}

fn parse_structured(text: &str) -> Result<SetFamily> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        location: Location::Line {
            line: e.line(),
            column: e.column(),
        },
        message: e.to_string(),
    })?;
    let universe = file.universe;
    for &p in &file.extension {
        if p >= universe {
            return Err(Error::FieldPointOutOfRange {
                location: Location::Field("extension"),
                point: p,
                universe,
            });
        }
    }
    if let Some(base) = &file.base {
        let ext: HashSet<usize> = file.extension.iter().copied().collect();
        let mut covered = vec![false; universe];
        for &p in base {
            if p >= universe {
                return Err(Error::FieldPointOutOfRange {
                    location: Location::Field("base"),
                    point: p,
                    universe,
                });
            }
            if ext.contains(&p) {
                return Err(Error::BaseExtensionOverlap {
                    location: Location::Field("base"),
                    point: p,
                });
            }
            covered[p] = true;
        }
        for &p in &file.extension {
            covered[p] = true;
        }
        if let Some(p) = covered.iter().position(|c| !c) {
            return Err(Error::UncoveredPoint {
                location: Location::Field("base"),
                point: p,
            });
        }
    }
    let mut family = SetFamily::new(
        universe,
        file.extension,
        file.sets.into_iter().map(|e| (e.name, e.points)),
    )?;
    if let Some(t) = file.target {
        family = family.with_target(t)?;
    }
    if let Some(g) = file.generator {
        family = family.with_generator(g);
    }
    Ok(family)
}

fn json_list(points: impl Iterator<Item = usize>) -> String {
    let items: Vec<String> = points.map(|p| p.to_string()).collect();
    format!("[{}]", items.join(", "))
}

/// Structured serialization; byte-stable for a given family.
pub fn serialize_family(family: &SetFamily) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"universe\": {},\n", family.universe_size));
    out.push_str(&format!(
        "  \"extension\": {},\n",
        json_list(family.extension.iter())
    ));
    out.push_str("  \"sets\": [");
    for (k, s) in family.sets.iter().enumerate() {
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        out.push_str(&format!(
            "    {{\"name\": {}, \"points\": {}}}",
            serde_json::to_string(&s.name).expect("string serializes"),
            json_list(s.members.iter())
        ));
    }
    out.push_str(if family.sets.is_empty() { "]" } else { "\n  ]" });
    if let Some(t) = &family.target {
        out.push_str(&format!(",\n  \"target\": {}", json_list(t.iter())));
    }
    if let Some(g) = &family.generator {
        out.push_str(&format!(
            ",\n  \"generator\": {}",
            serde_json::to_string(g).expect("generator spec serializes")
        ));
    }
    out.push_str("\n}\n");
    out
}

/// Compact incidence serialization; only defined when every point is base
/// and no target or provenance would be lost.
pub fn serialize_incidence(family: &SetFamily) -> Option<String> {
    if !family.extension.is_empty() || family.target.is_some() {
        return None;
    }
    let n = family.universe_size;
    let mut out = format!("{} {}\n", family.sets.len(), n);
    for s in &family.sets {
        out.extend((0..n).map(|p| if s.members.contains(p) { '1' } else { '0' }));
        out.push('\n');
    }
    Some(out)
}
