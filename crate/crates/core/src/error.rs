use std::fmt;

use thiserror::Error;

use crate::lattice::ElementId;

/// What went wrong when a candidate order or pair of tables failed to be a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeDefect {
    NoUpperBound,
    NoLowerBound,
    NoLeastUpperBound,
    NoGreatestLowerBound,
    /// A named identity (commutativity, absorption, ...) failed on the tables.
    LawViolated(&'static str),
}

impl fmt::Display for LatticeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeDefect::NoUpperBound => f.write_str("no common upper bound"),
            LatticeDefect::NoLowerBound => f.write_str("no common lower bound"),
            LatticeDefect::NoLeastUpperBound => f.write_str("no least upper bound"),
            LatticeDefect::NoGreatestLowerBound => f.write_str("no greatest lower bound"),
            LatticeDefect::LawViolated(law) => write!(f, "{law} fails"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a lattice needs at least one element")]
    EmptyLattice,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("not a lattice: `{x}` and `{y}` have {defect}")]
    NotALattice {
        x: String,
        y: String,
        defect: LatticeDefect,
    },
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("element index {index} out of range for {n} elements")]
    IndexOutOfRange { index: ElementId, n: usize },
    #[error("{pairs} candidate pairs exceed the enumeration cap of {cap}")]
    TooLarge { pairs: usize, cap: usize },
    #[error("relation is not a tolerance")]
    NotATolerance,
    #[error("relation is not a congruence")]
    NotACongruence,
    #[error("map is not a lattice homomorphism")]
    NotAHomomorphism,
    #[error("{0:?} is not a block of the tolerance")]
    NotABlock(Vec<ElementId>),
    #[error("set {set:?} is included in {} blocks ({candidates:?}), expected exactly one", candidates.len())]
    UniquenessViolation {
        set: Vec<ElementId>,
        candidates: Vec<Vec<ElementId>>,
    },
    #[error("({a}, {x}) and ({b}, {y}) combine outside the combined block")]
    ClosureViolation {
        a: usize,
        x: ElementId,
        b: usize,
        y: ElementId,
    },
    #[error("no isomorphism between the quotient and the target lattice")]
    IsomorphismNotFound,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
