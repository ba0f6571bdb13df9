use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graph::{pairs, Graph, Pair, Vertex};
use crate::path::Path;
use crate::system::PathSystem;
use crate::triple::all_triples;
use crate::Rational;

use super::{Pseudometric, WeightFunction};

/// Shortest paths of a weighted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inducement {
    /// Every pair has exactly one shortest path.
    Unique(PathSystem),
    /// The lexicographically first pair with several shortest paths, and how many it has.
    Ties { pair: Pair, count: u64 },
}

struct SingleSource {
    dist: Vec<Option<Rational>>,
    /// Number of shortest paths from the source, saturating.
    count: Vec<u64>,
    /// Some tight predecessor on a shortest path.
    pred: Vec<Vertex>,
}

fn dijkstra(w: &WeightFunction, source: Vertex) -> SingleSource {
    let g = w.graph();
    let n = g.n();
    let mut dist: Vec<Option<Rational>> = vec![None; n + 1];
    let mut done = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        order.push(u);
        for &v in g.neighbors(u) {
            let cand = &d + w.weight(u, v).expect("weighted edge");
            if dist[v].as_ref().is_none_or(|old| cand < *old) {
                dist[v] = Some(cand.clone());
                heap.push(Reverse((cand, v)));
            }
        }
    }
    let mut count = vec![0u64; n + 1];
    let mut pred = vec![0; n + 1];
    count[source] = 1;
    // Positive weights: every tight predecessor is settled earlier.
    for &v in order.iter().skip(1) {
        let dv = dist[v].as_ref().expect("settled");
        for &u in g.neighbors(v) {
            if let Some(du) = &dist[u] {
                if du + w.weight(u, v).expect("weighted edge") == *dv {
                    count[v] = count[v].saturating_add(count[u]);
                    pred[v] = u;
                }
            }
        }
    }
    SingleSource { dist, count, pred }
}

/// All shortest paths of `w`, exactly; reports the first tie if any pair has two.
pub fn induce_system(w: &WeightFunction) -> Result<Inducement, Error> {
    let n = w.graph().n();
    let sources: Vec<SingleSource> = (1..=n).map(|s| dijkstra(w, s)).collect();
    for pair in pairs(n) {
        let from = &sources[pair.lo() - 1];
        if from.dist[pair.hi()].is_none() {
            return Err(Error::Disconnected);
        }
        if from.count[pair.hi()] > 1 {
            return Ok(Inducement::Ties {
                pair,
                count: from.count[pair.hi()],
            });
        }
    }
    let mut paths = Vec::new();
    for pair in pairs(n) {
        let from = &sources[pair.lo() - 1];
        let mut walk = vec![pair.hi()];
        let mut v = pair.hi();
        while v != pair.lo() {
            v = from.pred[v];
            walk.push(v);
        }
        paths.push(Path::new(walk).expect("shortest paths are simple"));
    }
    Ok(Inducement::Unique(PathSystem::from_paths(n, paths)?))
}

/// Positive weights on the edges of `sys` whose unique shortest paths are `sys`.
///
/// `ρ` must have exactly the colinear triples of `sys`. When `ρ` vanishes on
/// some pair, every edge weight is raised by `ε = min(1, δ)/(n+1)`, where `δ`
/// is the smallest positive triangle slack of `ρ`; a path of `k ≤ n − 1` edges
/// gains `kε < δ`, so strict inequalities survive and tight ones gain nothing
/// they could lose.
pub fn realize_weights(sys: &PathSystem, rho: &Pseudometric) -> Result<WeightFunction, Error> {
    sys.require_consistent()?;
    let n = sys.n();
    if rho.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho.n(),
        });
    }
    if rho.colinear_triples() != sys.colinear_triples() {
        return Err(Error::TripleSetMismatch);
    }
    let eps = if rho.is_metric() {
        Rational::zero()
    } else {
        let min_slack = all_triples(n)
            .into_iter()
            .map(|t| rho.slack(t))
            .filter(Signed::is_positive)
            .min()
            .unwrap_or_else(Rational::one);
        let capped = if min_slack < Rational::one() {
            min_slack
        } else {
            Rational::one()
        };
        capped / Rational::from_integer((n as i64 + 1).into())
    };
    let edges: Vec<Pair> = sys.iter().filter(|(_, p)| p.is_edge()).map(|(pair, _)| pair).collect();
    let graph = Graph::from_edges(n, edges.iter().map(|e| (e.lo(), e.hi())))?;
    let weights: BTreeMap<Pair, Rational> = edges.iter().map(|e| (*e, rho.get(e.lo(), e.hi()) + &eps)).collect();
    WeightFunction::new(graph, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratlp::{int, rat};

    #[test]
    fn unit_four_cycle_ties() {
        let w = WeightFunction::uniform(Graph::cycle(4), rat(1, 1)).unwrap();
        assert_eq!(
            induce_system(&w).unwrap(),
            Inducement::Ties {
                pair: Pair::new(1, 3),
                count: 2
            }
        );
    }

    #[test]
    fn heavy_edge_is_bypassed() {
        let g = Graph::complete(3);
        let w: BTreeMap<Pair, Rational> = [((1, 2), 1), ((2, 3), 1), ((1, 3), 3)]
            .iter()
            .map(|&((a, b), x)| (Pair::new(a, b), int(x)))
            .collect();
        match induce_system(&WeightFunction::new(g, w).unwrap()).unwrap() {
            Inducement::Unique(sys) => {
                assert_eq!(sys.path(1, 3).vertices(), &[1, 2, 3]);
                assert!(sys.path(1, 2).is_edge());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disconnected_graph() {
        let g = Graph::from_edges(3, [(1, 2)]).unwrap();
        let w = WeightFunction::uniform(g, rat(1, 1)).unwrap();
        assert_eq!(induce_system(&w), Err(Error::Disconnected));
    }

    #[test]
    fn realize_line_with_collapsed_metric() {
        let line = PathSystem::line(4);
        let rho = Pseudometric::line(4);
        let w = realize_weights(&line, &rho).unwrap();
        assert_eq!(induce_system(&w).unwrap(), Inducement::Unique(line.clone()));
        let wrong = Pseudometric::from_pair_values(4, vec![int(1); 6]).unwrap();
        assert_eq!(realize_weights(&line, &wrong), Err(Error::TripleSetMismatch));
    }
}
