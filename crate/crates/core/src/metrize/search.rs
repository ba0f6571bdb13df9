use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use ratlp::{solve_feasibility, Feasibility, LinearSystem};

use crate::graph::num_pairs;
use crate::triple::{all_triples, PointedTriple, TripleSet};
use crate::Rational;

use super::{delta_terms, multiset_signature, triple_signature};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Wall-clock limit; `None` searches to completion.
    pub budget: Option<Duration>,
    /// Report progress after this many nodes (0 disables reports).
    pub progress_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Some(Duration::from_secs(30 * 60)),
            progress_every: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProgress {
    pub nodes: u64,
    pub open: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A multiset of triples with the signature of `S`, not contained in `S`.
    Found(Vec<(PointedTriple, u64)>),
    /// The branch-and-bound tree was exhausted.
    NotFound { nodes: u64 },
    /// The budget ran out first.
    Inconclusive { nodes: u64, elapsed: Duration },
}

struct Node {
    lower: Vec<u64>,
    upper: Vec<u64>,
}

/// Searches for non-negative integers `k_t` with `Σ k_tΔ_t = σ(S)` and some `k_t > 0` for `t ∉ S`.
///
/// Branch and bound over the linear relaxation, branching on the first
/// fractional coordinate (floor side first). Every returned witness is
/// re-checked against the signature.
pub fn integral_witness_search(
    s: &TripleSet,
    options: &SearchOptions,
    progress: &mut dyn FnMut(&SearchProgress),
) -> SearchOutcome {
    let n = s.n();
    let triples = all_triples(n);
    let cap = s.len() as u64;
    let start = Instant::now();
    let mut stack = vec![Node {
        lower: vec![0; triples.len()],
        upper: vec![cap; triples.len()],
    }];
    let mut nodes = 0u64;
    while let Some(node) = stack.pop() {
        if let Some(limit) = options.budget {
            if start.elapsed() > limit {
                return SearchOutcome::Inconclusive {
                    nodes,
                    elapsed: start.elapsed(),
                };
            }
        }
        nodes += 1;
        if options.progress_every > 0 && nodes.is_multiple_of(options.progress_every) {
            progress(&SearchProgress {
                nodes,
                open: stack.len(),
                elapsed: start.elapsed(),
            });
        }
        let x = match solve_feasibility(&relaxation(s, &triples, &node)) {
            Feasibility::Feasible(x) => x,
            Feasibility::Infeasible(_) => continue,
        };
        match x.iter().position(|v| !v.is_integer()) {
            None => {
                let found: Vec<(PointedTriple, u64)> = triples
                    .iter()
                    .zip(&x)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(t, v)| (*t, v.to_integer().to_u64().expect("bounded by |S|")))
                    .collect();
                assert_eq!(multiset_signature(n, &found), triple_signature(s));
                assert!(found.iter().any(|(t, _)| !s.contains(t)));
                return SearchOutcome::Found(found);
            }
            Some(i) => {
                let floor = x[i].floor().to_integer().to_u64().expect("non-negative");
                let mut high = Node {
                    lower: node.lower.clone(),
                    upper: node.upper.clone(),
                };
                high.lower[i] = floor + 1;
                let mut low = node;
                low.upper[i] = floor;
                stack.push(high);
                stack.push(low);
            }
        }
    }
    SearchOutcome::NotFound { nodes }
}

fn relaxation(s: &TripleSet, triples: &[PointedTriple], node: &Node) -> LinearSystem {
    let n = s.n();
    let m = num_pairs(n);
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    for (j, t) in triples.iter().enumerate() {
        for (i, c) in delta_terms(*t, n) {
            rows[i].push((j, c));
        }
    }
    let target = triple_signature(s);
    let mut sys = LinearSystem::new(triples.len());
    for (row, rhs) in rows.iter().zip(target.coords()) {
        sys.add_equality_terms(row, Rational::from_integer(BigInt::from(*rhs)))
            .expect("indices in range");
    }
    let outside: Vec<(usize, Rational)> = triples
        .iter()
        .enumerate()
        .filter(|(_, t)| !s.contains(t))
        .map(|(j, _)| (j, Rational::one()))
        .collect();
    sys.add_inequality_terms(&outside, Rational::one())
        .expect("indices in range");
    let cap = s.len() as u64;
    for j in 0..triples.len() {
        sys.add_inequality_terms(&[(j, Rational::one())], Rational::from_integer(node.lower[j].into()))
            .expect("indices in range");
        if node.upper[j] < cap {
            sys.add_inequality_terms(&[(j, -Rational::one())], -Rational::from_integer(node.upper[j].into()))
                .expect("indices in range");
        }
    }
    sys
}
