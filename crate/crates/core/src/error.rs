use thiserror::Error;

/// Everything that can go wrong when building or mapping the objects in
/// this crate. Messages name the violated invariant so the CLI can print
/// them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: parts must be weakly decreasing")]
    InvalidPartition { parts: Vec<usize> },

    #[error("partition {inner} is not contained in {outer}")]
    NotContained { outer: String, inner: String },

    #[error("invalid ascent sequence {entries:?}: {reason}")]
    InvalidAscentSequence { entries: Vec<usize>, reason: String },

    #[error("invalid pattern {letters:?}: every value 0..=max must occur")]
    InvalidPattern { letters: Vec<usize> },

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("invalid arc diagram: {0}")]
    InvalidArcDiagram(String),

    #[error("invalid Ferrers shape {rows:?}: row lengths must be positive and weakly increasing downwards")]
    InvalidShape { rows: Vec<usize> },

    #[error("invalid boundary word {0:?}")]
    InvalidBoundaryWord(String),

    #[error("cell ({row},{col}) lies outside the shape")]
    CellOutsideShape { row: usize, col: usize },

    #[error("corner ({row},{col}) is not a lattice corner of the shape")]
    InvalidCorner { row: usize, col: usize },

    #[error("invalid triangular filling {a:?}: need 1 <= a_i <= i")]
    InvalidTriangularFilling { a: Vec<usize> },

    #[error("filling is not a triangular shape")]
    NotTriangular,

    #[error("row {0} of the filling does not contain exactly one 1")]
    RowNotSingle(usize),

    #[error("filling has two 1s in {0}")]
    DoubledLine(String),

    #[error("local rule precondition violated: {0}")]
    LocalRule(String),

    #[error("inconsistent labels: backward rule produced m = {m}")]
    InconsistentLabels { m: i64 },

    #[error("boundary sequence rejected: {0}")]
    InvalidBoundary(String),

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
