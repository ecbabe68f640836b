use std::fmt;

use thiserror::Error;

/// Where in a family file a problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// 1-based line (and column, when known) of the compact incidence format.
    Line { line: usize, column: usize },
    /// 0-based position of an entry in the structured format's `sets` list.
    Entry(usize),
    /// A top-level field of the structured format.
    Field(&'static str),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line { line, column: 0 } => write!(f, "line {line}"),
            Location::Line { line, column } => write!(f, "line {line}, column {column}"),
            Location::Entry(i) => write!(f, "sets[{i}]"),
            Location::Field(name) => write!(f, "field `{name}`"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{location}: {message}")]
    Syntax { location: Location, message: String },

    #[error("{location}: set `{set}` contains point {point}, outside universe of size {universe}")]
    PointOutOfRange {
        location: Location,
        set: String,
        point: usize,
        universe: usize,
    },

    #[error("{location}: point {point} is outside universe of size {universe}")]
    FieldPointOutOfRange {
        location: Location,
        point: usize,
        universe: usize,
    },

    #[error("{location}: duplicate set name `{name}`")]
    DuplicateName { location: Location, name: String },

    #[error("{location}: point {point} is declared both base and extension")]
    BaseExtensionOverlap { location: Location, point: usize },

    #[error("{location}: point {point} is neither base nor extension")]
    UncoveredPoint { location: Location, point: usize },

    #[error("set index {index} out of range (family has {count} sets)")]
    InvalidSetIndex { index: usize, count: usize },

    #[error("point {point} out of range (universe has {universe} points)")]
    InvalidPoint { point: usize, universe: usize },

    #[error("set `{name}` is empty and cannot be pierced")]
    EmptySet { name: String },

    #[error("search needs {needed} nodes, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("target point {point} is a base point; targets must lie in extension points")]
    TargetMeetsBase { point: usize },

    #[error("assignment covers {got} sets, family has {expected}")]
    PartialAssignment { expected: usize, got: usize },

    #[error("no acceptable sample after {tries} tries: {what}")]
    ResamplingExhausted { what: String, tries: usize },

    #[error("malformed witness chain: {0}")]
    MalformedChain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
