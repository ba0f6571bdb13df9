//! Path systems on graphs.
//!
//! A path system fixes one simple path between every pair of vertices. This
//! crate checks consistency (intersection closure), encodes systems by
//! résumés, decides metric and strictly metric realizability with exact
//! rational linear programs, generates strictly metric families, counts
//! systems and plane partitions, and builds maximum VC classes.
//!
//! Vertices are labelled `1..=n` throughout.

pub mod counting;
pub mod error;
pub mod generators;
pub mod graph;
pub mod json;
pub mod metrize;
pub mod path;
pub mod resume;
pub mod system;
pub mod triple;
pub mod vc;

pub use error::Error;
pub use graph::{Graph, Pair, Vertex};
pub use path::{path_intersection, Intersection, Path};
pub use ratlp::Rational;
pub use resume::{all_resumes, extract_resume, recover_from_resume, Resume};
pub use system::{Consistency, PathSystem};
pub use triple::{PointedTriple, TripleSet};
