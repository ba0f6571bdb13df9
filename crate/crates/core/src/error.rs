use thiserror::Error;

use crate::graph::{Pair, Vertex};
use crate::triple::PointedTriple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Pair),
    #[error("invalid path {vertices:?}: {reason}")]
    InvalidPath {
        vertices: Vec<Vertex>,
        reason: &'static str,
    },
    #[error("pointed triple needs three distinct vertices, got {{{a},{b};{c}}}")]
    InvalidTriple { a: Vertex, b: Vertex, c: Vertex },
    #[error("triple {0} listed twice")]
    DuplicateTriple(PointedTriple),
    #[error("pair {0} has more than one path")]
    DuplicatePair(Pair),
    #[error("pair {0} has no path")]
    MissingPair(Pair),
    #[error("expected {expected} vertices, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("path system is inconsistent at {0} / {1}")]
    Inconsistent(Pair, Pair),
    #[error("résumé maps {pair} to one of its own endpoints ({via})")]
    ResumeEndpoint { pair: Pair, via: Vertex },
    #[error("{what} exceed the cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("pair {0} never resolved")]
    UnresolvedPair(Pair),
    #[error("concatenation for pair {0} is not a simple path")]
    NonSimpleConcatenation(Pair),
    #[error("recovered system is inconsistent at {0} / {1}")]
    InconsistentResult(Pair, Pair),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("weight on {0} must be positive")]
    NonPositiveWeight(Pair),
    #[error("no weight for edge {0}")]
    MissingWeight(Pair),
    #[error("not a pseudometric: {0}")]
    NotPseudometric(&'static str),
    #[error("colinear triples of the metric differ from those of the system")]
    TripleSetMismatch,
    #[error("row {row} of the monotone matrix decreases")]
    MonotonicityViolation { row: usize },
    #[error("invalid monotone matrix: {0}")]
    InvalidMatrix(&'static str),
    #[error("not a matching in the graph: {0}")]
    NotAMatching(&'static str),
    #[error("no perfect matching found")]
    NoPerfectMatching,
    #[error("choice for {0} is not an admissible pair")]
    ChoiceMismatch(Pair),
    #[error("weights never certified a unique geodesic system after {0} draws")]
    UniquenessNotCertified(usize),
    #[error("chosen path for {0} is not the induced geodesic")]
    ChosenPathMissing(Pair),
    #[error("probability must lie in [0, 1]")]
    InvalidProbability,
    #[error("fraction must lie strictly between 0 and 1")]
    InvalidFraction,
    #[error("face {0:?} does not have k + 1 distinct vertices")]
    InvalidFace(Vec<Vertex>),
    #[error("set {0:?} is a face of the complex")]
    FaceNotAllowed(Vec<Vertex>),
    #[error("set {0:?} has no compatible extension")]
    NoCompatibleExtension(Vec<Vertex>),
    #[error("set systems support at most 64 points, got {0}")]
    TooManyPoints(usize),
    #[error("path system has diameter {0}, expected at most 2")]
    DiameterTooLarge(usize),
    #[error("constructed family failed a check: {0}")]
    ConstructionCheck(&'static str),
}
