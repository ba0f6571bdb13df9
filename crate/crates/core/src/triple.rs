//! Pointed triples `{a,b;c}` and sets of them.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::graph::{Pair, Vertex};

/// `{a,b;c}`: the pair `{a,b}` with the distinguished middle point `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedTriple {
    pair: Pair,
    point: Vertex,
}

impl PointedTriple {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<PointedTriple, Error> {
        if a == b || a == c || b == c {
            return Err(Error::InvalidTriple { a, b, c });
        }
        Ok(PointedTriple {
            pair: Pair::new(a, b),
            point: c,
        })
    }

    pub fn pair(self) -> Pair {
        self.pair
    }

    pub fn point(self) -> Vertex {
        self.point
    }

    pub fn max_vertex(self) -> Vertex {
        self.pair.hi().max(self.point)
    }
}

impl fmt::Display for PointedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{};{}}}", self.pair.lo(), self.pair.hi(), self.point)
    }
}

/// All `3·C(n,3)` pointed triples over `[n]`, in lexicographic order.
pub fn all_triples(n: usize) -> Vec<PointedTriple> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) * n.saturating_sub(2) / 2);
    for a in 1..=n {
        for b in a + 1..=n {
            for c in 1..=n {
                if c != a && c != b {
                    out.push(PointedTriple {
                        pair: Pair::new(a, b),
                        point: c,
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSet {
    n: usize,
    triples: BTreeSet<PointedTriple>,
}

impl TripleSet {
    pub fn new(n: usize) -> TripleSet {
        TripleSet {
            n,
            triples: BTreeSet::new(),
        }
    }

    /// Rejects out-of-range vertices and repeated triples.
    pub fn from_triples<I>(n: usize, triples: I) -> Result<TripleSet, Error>
    where
        I: IntoIterator<Item = PointedTriple>,
    {
        let mut set = TripleSet::new(n);
        for t in triples {
            if t.pair.lo() == 0 || t.max_vertex() > n {
                return Err(Error::VertexOutOfRange {
                    vertex: t.max_vertex(),
                    n,
                });
            }
            if !set.triples.insert(t) {
                return Err(Error::DuplicateTriple(t));
            }
        }
        Ok(set)
    }

    pub fn full(n: usize) -> TripleSet {
        TripleSet {
            n,
            triples: all_triples(n).into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &PointedTriple) -> bool {
        self.triples.contains(t)
    }

    pub fn insert(&mut self, t: PointedTriple) -> bool {
        debug_assert!(t.max_vertex() <= self.n);
        self.triples.insert(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PointedTriple> {
        self.triples.iter()
    }

    pub fn is_subset(&self, other: &TripleSet) -> bool {
        self.triples.is_subset(&other.triples)
    }
}

impl fmt::Display for TripleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.triples.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
