use thiserror::Error;

/// Errors produced by graph construction, the deciders and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a maximal outerplanar graph needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("expected {expected} diagonals for n = {n}, found {found}")]
    WrongDiagonalCount {
        n: usize,
        expected: usize,
        found: usize,
    },

    #[error("diagonals ({}, {}) and ({}, {}) cross", .0.0, .0.1, .1.0, .1.1)]
    CrossingDiagonals((u32, u32), (u32, u32)),

    #[error("diagonal ({}, {}) is a duplicate or a boundary edge", .0.0, .0.1)]
    DuplicateOrBoundary((u32, u32)),

    #[error("vertex label {label} is outside 1..={n}")]
    BadLabel { label: u32, n: usize },

    #[error("not a maximal outerplanar graph: {0}")]
    NotMop(String),

    #[error("vertices {0} and {1} have identical metric vectors")]
    NotResolving(u32, u32),

    #[error("scan invariant violated: {0}")]
    InvariantViolation(String),

    #[error("constructed set failed verification: vertices {0} and {1} are unresolved")]
    ConstructionFailed(u32, u32),

    #[error("order {n} exceeds the brute-force limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("order {0} is not supported by the closed-form construction")]
    UnsupportedOrder(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
