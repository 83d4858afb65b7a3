use thiserror::Error;

use crate::link::ArcLabel;

/// Problems found while reading or validating a link diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {crossing}: expected 4 arc labels, found {found}")]
    BadArity { crossing: usize, found: usize },
    #[error("crossing {crossing}: arc labels must be positive integers, found {label}")]
    BadLabel { crossing: usize, label: i64 },
    #[error("dangling arc {arc}: label appears {count} time(s), first at crossing {crossing}")]
    DanglingArc { arc: ArcLabel, count: usize, crossing: usize },
    #[error("arc {arc} appears more than twice (third use at crossing {crossing})")]
    OverusedArc { arc: ArcLabel, crossing: usize },
    #[error("inconsistent orientation at crossing {crossing} (arc {arc})")]
    InconsistentOrientation { crossing: usize, arc: ArcLabel },
    #[error("free loop {arc} reuses a label")]
    DuplicateLoop { arc: ArcLabel },
    #[error("diagram is not planar: component containing crossing {crossing} has genus {genus}")]
    NonPlanar { crossing: usize, genus: usize },
    #[error("{crossings} crossings exceed the limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("invalid diagram document: {0}")]
    Json(String),
}

/// Failures of the algebraic layer (complexes, chain maps, homology).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),
    #[error("not a chain map: d∘f ≠ f∘d at bigrading ({i}, {j})")]
    NotChainMap { i: i32, j: i32 },
    #[error("declared bidegree ({0}, {1}) does not match entry shift ({2}, {3})")]
    BidegreeMismatch(i32, i32, i32, i32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elimination pivot is not a unit: {0}")]
    NonUnitPivot(String),
    #[error("{0}")]
    Identification(String),
}

/// Errors raised while applying or evaluating movie events.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MovieError {
    #[error("event {index}: {message}")]
    InvalidSite { index: usize, message: String },
    #[error("event {index}: {source}")]
    Diagram { index: usize, source: DiagramError },
    #[error("event {index}: {source}")]
    Algebra { index: usize, source: AlgebraError },
    #[error("invalid movie document: {0}")]
    Json(String),
}

impl MovieError {
    pub fn site(index: usize, message: impl Into<String>) -> Self {
        MovieError::InvalidSite { index, message: message.into() }
    }

    /// Rewrites the event index, used when an event is applied inside a movie.
    pub fn at(self, index: usize) -> Self {
        match self {
            MovieError::InvalidSite { message, .. } => MovieError::InvalidSite { index, message },
            MovieError::Diagram { source, .. } => MovieError::Diagram { index, source },
            MovieError::Algebra { source, .. } => MovieError::Algebra { index, source },
            other => other,
        }
    }
}
