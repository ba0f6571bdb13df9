//! Simple undirected graphs on `[n] = {1, …, n}` and unordered vertex pairs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::Error;

/// Vertices are 1-based labels.
pub type Vertex = usize;

/// An unordered pair `{lo, hi}` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: Vertex,
    hi: Vertex,
}

impl Pair {
    /// Panics if `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Pair {
        assert_ne!(a, b, "a pair needs two distinct vertices");
        Pair {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Option<Pair> {
        (a != b).then(|| Pair::new(a, b))
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// Position of this pair in the lexicographic order of all pairs of `[n]`.
    pub fn index(self, n: usize) -> usize {
        let (u, v) = (self.lo, self.hi);
        debug_assert!(1 <= u && v <= n);
        (u - 1) * (2 * n - u) / 2 + (v - u - 1)
    }

    pub fn from_index(n: usize, mut idx: usize) -> Pair {
        for u in 1..n {
            let row = n - u;
            if idx < row {
                return Pair::new(u, u + 1 + idx);
            }
            idx -= row;
        }
        panic!("pair index out of range");
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

pub fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All pairs of `[n]` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = Pair> {
    (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| Pair::new(u, v)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Pair>,
    neighbors: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: BTreeSet::new(),
            neighbors: vec![BTreeSet::new(); n + 1],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, Error>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if !g.add_edge(u, v) {
                return Err(Error::DuplicateEdge(Pair::new(u, v)));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for p in pairs(n) {
            g.add_edge(p.lo(), p.hi());
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..=n {
            g.add_edge(v, v % n + 1);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v, v + 1);
        }
        g
    }

    /// Returns false when the edge was already present.
    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let fresh = self.edges.insert(Pair::new(u, v));
        if fresh {
            self.neighbors[u].insert(v);
            self.neighbors[v].insert(u);
        }
        fresh
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Pair> {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&Pair::new(u, v))
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.neighbors[v]
    }

    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        self.neighbors[u].intersection(&self.neighbors[v]).copied().collect()
    }

    /// Pairs that are not edges, lexicographically.
    pub fn non_edges(&self) -> impl Iterator<Item = Pair> + '_ {
        pairs(self.n).filter(move |p| !self.edges.contains(p))
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.neighbors[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Graph diameter is at most 2: every non-adjacent pair has a common neighbour.
    pub fn has_diameter_at_most_two(&self) -> bool {
        self.non_edges()
            .all(|p| !self.neighbors[p.lo()].is_disjoint(&self.neighbors[p.hi()]))
    }
}
