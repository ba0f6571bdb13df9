//! Path systems: one designated simple path per unordered vertex pair.

use std::fmt;

use crate::error::Error;
use crate::graph::{num_pairs, pairs, Graph, Pair, Vertex};
use crate::path::{path_intersection, Intersection, Path};
use crate::triple::{PointedTriple, TripleSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathSystem {
    n: usize,
    /// Indexed by [`Pair::index`].
    paths: Vec<Path>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconsistencyReason {
    /// The two paths share something that is neither a vertex nor a path.
    NotAPath,
    /// They share a path that is not the system's path between its ends.
    NotAMember,
    /// A vertex of the first path splits it into pieces that are not the system's paths.
    NotAConcatenation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent {
        first: Pair,
        second: Pair,
        reason: InconsistencyReason,
    },
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

impl PathSystem {
    /// Builds a system from exactly one path per pair.
    pub fn from_paths<I>(n: usize, paths: I) -> Result<PathSystem, Error>
    where
        I: IntoIterator<Item = Path>,
    {
        let mut slots: Vec<Option<Path>> = vec![None; num_pairs(n)];
        for p in paths {
            if let Some(&v) = p.vertices().iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let pair = p.endpoints();
            let slot = &mut slots[pair.index(n)];
            if slot.is_some() {
                return Err(Error::DuplicatePair(pair));
            }
            *slot = Some(p);
        }
        let paths = slots
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::MissingPair(Pair::from_index(n, i))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PathSystem { n, paths })
    }

    /// Every pair joined by its edge (the unique system of diameter 1 on `K_n`).
    pub fn all_edges(n: usize) -> PathSystem {
        PathSystem {
            n,
            paths: pairs(n).map(|p| Path::edge(p.lo(), p.hi())).collect(),
        }
    }

    /// `P_{i,j} = i, i+1, …, j` along the line `1-2-…-n`.
    pub fn line(n: usize) -> PathSystem {
        PathSystem {
            n,
            paths: pairs(n)
                .map(|p| Path::new((p.lo()..=p.hi()).collect()).expect("increasing run is simple"))
                .collect(),
        }
    }

    pub(crate) fn from_slots(n: usize, paths: Vec<Path>) -> PathSystem {
        debug_assert_eq!(paths.len(), num_pairs(n));
        PathSystem { n, paths }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn path(&self, u: Vertex, v: Vertex) -> &Path {
        &self.paths[Pair::new(u, v).index(self.n)]
    }

    pub fn path_of(&self, pair: Pair) -> &Path {
        &self.paths[pair.index(self.n)]
    }

    /// `(pair, path)` in lexicographic pair order.
    pub fn iter(&self) -> impl Iterator<Item = (Pair, &Path)> {
        pairs(self.n).zip(self.paths.iter())
    }

    /// Graph of all edges used by some path.
    pub fn support_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for p in &self.paths {
            for e in p.edges() {
                g.add_edge(e.lo(), e.hi());
            }
        }
        g
    }

    /// Longest path length in edges.
    pub fn diameter(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0)
    }

    /// First pair of paths whose intersection is not empty, a vertex, or a member path.
    pub fn intersection_violation(&self) -> Option<(Pair, Pair, InconsistencyReason)> {
        let pairs: Vec<Pair> = pairs(self.n).collect();
        for i in 0..self.paths.len() {
            for j in i + 1..self.paths.len() {
                match path_intersection(&self.paths[i], &self.paths[j]) {
                    Intersection::Empty | Intersection::SingleVertex(_) => {}
                    Intersection::SubPath(sub) => {
                        if *self.path_of(sub.endpoints()) != sub {
                            return Some((pairs[i], pairs[j], InconsistencyReason::NotAMember));
                        }
                    }
                    Intersection::Violation => return Some((pairs[i], pairs[j], InconsistencyReason::NotAPath)),
                }
            }
        }
        None
    }

    /// First `(pair, a)` with `a` interior to `P_pair` but `P_pair ≠ P_{u,a}·P_{a,v}`.
    pub fn concatenation_violation(&self) -> Option<(Pair, Vertex)> {
        for (pair, p) in self.iter() {
            for &a in p.interior() {
                let left = self.path(pair.lo(), a);
                let right = self.path(a, pair.hi());
                if left.concat(right).as_ref() != Some(p) {
                    return Some((pair, a));
                }
            }
        }
        None
    }

    /// Checks pairwise intersections, then re-checks via concatenation.
    pub fn check_consistency(&self) -> Consistency {
        if let Some((first, second, reason)) = self.intersection_violation() {
            return Consistency::Inconsistent { first, second, reason };
        }
        if let Some((pair, a)) = self.concatenation_violation() {
            // Unreachable when the intersection test is correct; kept as an independent check.
            return Consistency::Inconsistent {
                first: pair,
                second: Pair::new(pair.lo(), a),
                reason: InconsistencyReason::NotAConcatenation,
            };
        }
        Consistency::Consistent
    }

    pub fn is_consistent(&self) -> bool {
        self.check_consistency().is_consistent()
    }

    pub(crate) fn require_consistent(&self) -> Result<(), Error> {
        match self.check_consistency() {
            Consistency::Consistent => Ok(()),
            Consistency::Inconsistent { first, second, .. } => Err(Error::Inconsistent(first, second)),
        }
    }

    /// Every edge of `g` is its own path and every path runs inside `g`.
    pub fn is_neighborly(&self, g: &Graph) -> Result<bool, Error> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: g.n(),
            });
        }
        let edges_ok = g.edges().iter().all(|e| self.path_of(*e).is_edge());
        let inside = self.paths.iter().all(|p| p.edges().all(|e| g.has_edge(e.lo(), e.hi())));
        Ok(edges_ok && inside)
    }

    /// `T(P)`: every `{a,b;c}` with `c` interior to `P_{a,b}`.
    pub fn colinear_triples(&self) -> TripleSet {
        let mut set = TripleSet::new(self.n);
        for (pair, p) in self.iter() {
            for &c in p.interior() {
                set.insert(PointedTriple::new(pair.lo(), pair.hi(), c).expect("interior vertex is distinct"));
            }
        }
        set
    }

    /// Applies a vertex relabeling `v ↦ perm[v - 1]`.
    pub fn relabel(&self, perm: &[Vertex]) -> PathSystem {
        assert_eq!(perm.len(), self.n);
        let mut slots: Vec<Option<Path>> = vec![None; self.paths.len()];
        for p in &self.paths {
            let q = Path::new(p.vertices().iter().map(|&v| perm[v - 1]).collect()).expect("relabeling is injective");
            let idx = q.endpoints().index(self.n);
            slots[idx] = Some(q);
        }
        PathSystem {
            n: self.n,
            paths: slots.into_iter().map(|p| p.expect("permutation")).collect(),
        }
    }
}

impl fmt::Display for PathSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.paths.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}] {}", self.n, parts.join(" "))
    }
}
