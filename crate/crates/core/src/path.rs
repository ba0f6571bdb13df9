use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::graph::{Pair, Vertex};

/// A simple path with at least one edge.
///
/// Stored oriented from the smaller endpoint, so a path and its reversal
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Path, Error> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath {
                vertices,
                reason: "a path needs at least two vertices",
            });
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidPath {
                vertices,
                reason: "vertices repeat",
            });
        }
        if vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        Ok(Path { vertices })
    }

    pub fn edge(u: Vertex, v: Vertex) -> Path {
        Path::new(vec![u, v]).expect("an edge is a path")
    }

    /// Canonically oriented vertex sequence.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn endpoints(&self) -> Pair {
        Pair::new(self.vertices[0], self.vertices[self.vertices.len() - 1])
    }

    /// Number of edges; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_edge(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn interior(&self) -> &[Vertex] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.vertices.windows(2).map(|w| Pair::new(w[0], w[1]))
    }

    /// The sub-path between two of its vertices, or `None` if either is missing or they coincide.
    pub fn between(&self, a: Vertex, b: Vertex) -> Option<Path> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        if i == j {
            return None;
        }
        let (i, j) = (i.min(j), i.max(j));
        Some(
            Path {
                vertices: self.vertices[i..=j].to_vec(),
            }
            .canonical(),
        )
    }

    fn canonical(mut self) -> Path {
        if self.vertices[0] > self.vertices[self.vertices.len() - 1] {
            self.vertices.reverse();
        }
        self
    }

    /// Concatenation `self · other` when `self` ends where `other` starts (either orientation).
    /// Returns `None` if they share no endpoint or the result is not simple.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        let ends = |p: &Path| (p.vertices[0], p.vertices[p.vertices.len() - 1]);
        let (a0, a1) = ends(self);
        let (b0, b1) = ends(other);
        let mut left = self.vertices.clone();
        let mut right = other.vertices.clone();
        if a1 == b0 {
        } else if a1 == b1 {
            right.reverse();
        } else if a0 == b0 {
            left.reverse();
        } else if a0 == b1 {
            left.reverse();
            right.reverse();
        } else {
            return None;
        }
        left.extend_from_slice(&right[1..]);
        Path::new(left).ok()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// How two paths meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    SingleVertex(Vertex),
    SubPath(Path),
    /// The common part is neither a vertex nor a path.
    Violation,
}

/// Classifies the common subgraph (shared vertices and shared edges) of two paths.
pub fn path_intersection(p: &Path, q: &Path) -> Intersection {
    let common: Vec<(usize, Vertex)> = p
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| q.contains(**v))
        .map(|(i, &v)| (i, v))
        .collect();
    match common.len() {
        0 => return Intersection::Empty,
        1 => return Intersection::SingleVertex(common[0].1),
        _ => {}
    }
    let q_edges: BTreeSet<Pair> = q.edges().collect();
    let shared_edges = p.edges().filter(|e| q_edges.contains(e)).count();
    // Shared edges lie on p, so they form a forest on the common vertices;
    // it is one path exactly when it has |V| - 1 edges.
    if shared_edges + 1 != common.len() {
        return Intersection::Violation;
    }
    let (first, last) = (common[0].0, common[common.len() - 1].0);
    Intersection::SubPath(
        Path {
            vertices: p.vertices[first..=last].to_vec(),
        }
        .canonical(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[Vertex]) -> Path {
        Path::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reversal_is_equal() {
        assert_eq!(p(&[3, 2, 1]), p(&[1, 2, 3]));
        assert_eq!(p(&[3, 2, 1]).vertices(), &[1, 2, 3]);
    }

    #[test]
    fn rejects_non_simple() {
        assert!(Path::new(vec![1, 2, 1]).is_err());
        assert!(Path::new(vec![1]).is_err());
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            path_intersection(&p(&[1, 2, 3]), &p(&[2, 3, 4])),
            Intersection::SubPath(p(&[2, 3]))
        );
        assert_eq!(
            path_intersection(&p(&[1, 3, 2]), &p(&[1, 2, 3])),
            Intersection::Violation
        );
        assert_eq!(path_intersection(&p(&[1, 2]), &p(&[3, 4])), Intersection::Empty);
        assert_eq!(
            path_intersection(&p(&[1, 2, 3]), &p(&[3, 4])),
            Intersection::SingleVertex(3)
        );
        // Two shared vertices without the shared edge.
        assert_eq!(
            path_intersection(&p(&[1, 2, 3]), &p(&[1, 4, 3])),
            Intersection::Violation
        );
    }

    #[test]
    fn concat_and_between() {
        let a = p(&[1, 2]);
        let b = p(&[2, 3, 4]);
        assert_eq!(a.concat(&b), Some(p(&[1, 2, 3, 4])));
        assert_eq!(b.concat(&a), Some(p(&[1, 2, 3, 4])));
        assert_eq!(p(&[1, 2, 3]).concat(&p(&[3, 2])), None);
        assert_eq!(p(&[1, 2, 3, 4]).between(4, 2), Some(p(&[2, 3, 4])));
        assert_eq!(p(&[1, 2, 3, 4]).between(2, 2), None);
    }
}
