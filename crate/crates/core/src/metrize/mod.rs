//! Metric and strictly metric realizability of path systems and triple sets.
//!
//! Everything here is exact: distances and weights are rationals, and every
//! yes/no answer carries an object (a pseudometric, a weight function or a
//! non-negative combination of triangle vectors) that is re-checked.

mod closure;
mod diameter_two;
mod induce;
mod lp;
mod search;

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graph::{num_pairs, pairs, Graph, Pair, Vertex};
use crate::resume::Resume;
use crate::triple::{all_triples, PointedTriple, TripleSet};
use crate::Rational;

pub use closure::closure;
pub use diameter_two::{
    diameter_two_strict_system, diameter_two_witness, verify_diameter_two_witness, DiameterTwoVerdict,
    DiameterTwoWitness,
};
pub use induce::{induce_system, realize_weights, Inducement};
pub use lp::{
    build_lp, is_metric, is_realizable, is_strictly_metric, verify_witness, LpMode, MetricLp, MetricVerdict,
    Realizability, RowTag,
};
pub use search::{integral_witness_search, SearchOptions, SearchOutcome, SearchProgress};

/// Integer vector indexed by the pairs of `[n]` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector {
    n: usize,
    coords: Vec<i64>,
}

impl DeltaVector {
    pub fn zero(n: usize) -> DeltaVector {
        DeltaVector {
            n,
            coords: vec![0; num_pairs(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn get(&self, pair: Pair) -> i64 {
        self.coords[pair.index(self.n)]
    }

    /// `⟨v, 𝟙⟩`.
    pub fn total(&self) -> i64 {
        self.coords.iter().sum()
    }

    fn bump(&mut self, pair: Pair, by: i64) {
        self.coords[pair.index(self.n)] += by;
    }
}

impl AddAssign<&DeltaVector> for DeltaVector {
    fn add_assign(&mut self, rhs: &DeltaVector) {
        assert_eq!(self.n, rhs.n);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl Add<&DeltaVector> for DeltaVector {
    type Output = DeltaVector;

    fn add(mut self, rhs: &DeltaVector) -> DeltaVector {
        self += rhs;
        self
    }
}

/// `Δ_{a,b;c} = e_{a,c} + e_{c,b} − e_{a,b}`.
pub fn delta(t: PointedTriple, n: usize) -> DeltaVector {
    let mut v = DeltaVector::zero(n);
    add_delta(&mut v, t, 1);
    v
}

fn add_delta(v: &mut DeltaVector, t: PointedTriple, times: i64) {
    let (a, b, c) = (t.pair().lo(), t.pair().hi(), t.point());
    v.bump(Pair::new(a, c), times);
    v.bump(Pair::new(c, b), times);
    v.bump(Pair::new(a, b), -times);
}

/// `(pair index, coefficient)` terms of `Δ_t`.
pub(crate) fn delta_terms(t: PointedTriple, n: usize) -> [(usize, Rational); 3] {
    let (a, b, c) = (t.pair().lo(), t.pair().hi(), t.point());
    [
        (Pair::new(a, c).index(n), Rational::one()),
        (Pair::new(c, b).index(n), Rational::one()),
        (Pair::new(a, b).index(n), -Rational::one()),
    ]
}

/// `σ(S) = Σ_{t∈S} Δ_t`.
pub fn triple_signature(s: &TripleSet) -> DeltaVector {
    let mut v = DeltaVector::zero(s.n());
    for t in s.iter() {
        add_delta(&mut v, *t, 1);
    }
    v
}

/// `σ(f) = Σ_{{i,j}∈dom f} Δ_{i,j;f(i,j)}`.
pub fn resume_signature(f: &Resume) -> DeltaVector {
    let mut v = DeltaVector::zero(f.n());
    for (pair, z) in f.iter() {
        add_delta(
            &mut v,
            PointedTriple::new(pair.lo(), pair.hi(), z).expect("résumé value avoids endpoints"),
            1,
        );
    }
    v
}

/// Signature of a multiset given as `(triple, multiplicity)`.
pub fn multiset_signature(n: usize, items: &[(PointedTriple, u64)]) -> DeltaVector {
    let mut v = DeltaVector::zero(n);
    for (t, k) in items {
        add_delta(&mut v, *t, *k as i64);
    }
    v
}

/// Symmetric non-negative distances with zero diagonal satisfying every triangle inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudometric {
    n: usize,
    /// Indexed by [`Pair::index`].
    d: Vec<Rational>,
}

impl Pseudometric {
    /// Validates non-negativity and all triangle inequalities.
    pub fn from_pair_values(n: usize, d: Vec<Rational>) -> Result<Pseudometric, Error> {
        if d.len() != num_pairs(n) {
            return Err(Error::DimensionMismatch {
                expected: num_pairs(n),
                got: d.len(),
            });
        }
        if d.iter().any(Signed::is_negative) {
            return Err(Error::NotPseudometric("negative distance"));
        }
        let m = Pseudometric { n, d };
        if all_triples(n).into_iter().any(|t| m.slack(t).is_negative()) {
            return Err(Error::NotPseudometric("triangle inequality fails"));
        }
        Ok(m)
    }

    /// Reads a full matrix; it must be symmetric with a zero diagonal.
    pub fn from_matrix(rows: &[Vec<Rational>]) -> Result<Pseudometric, Error> {
        let n = rows.len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::NotPseudometric("matrix is not square"));
        }
        for (i, row) in rows.iter().enumerate() {
            if !row[i].is_zero() {
                return Err(Error::NotPseudometric("non-zero diagonal"));
            }
            if row.iter().zip(rows).any(|(x, other)| *x != other[i]) {
                return Err(Error::NotPseudometric("matrix is not symmetric"));
            }
        }
        let d = pairs(n).map(|p| rows[p.lo() - 1][p.hi() - 1].clone()).collect();
        Pseudometric::from_pair_values(n, d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: Vertex, b: Vertex) -> Rational {
        if a == b {
            Rational::zero()
        } else {
            self.d[Pair::new(a, b).index(self.n)].clone()
        }
    }

    pub fn pair_values(&self) -> &[Rational] {
        &self.d
    }

    pub fn to_matrix(&self) -> Vec<Vec<Rational>> {
        (1..=self.n)
            .map(|a| (1..=self.n).map(|b| self.get(a, b)).collect())
            .collect()
    }

    /// `⟨Δ_t, d⟩ = d(a,c) + d(c,b) − d(a,b)`.
    pub fn slack(&self, t: PointedTriple) -> Rational {
        let (a, b, c) = (t.pair().lo(), t.pair().hi(), t.point());
        self.get(a, c) + self.get(c, b) - self.get(a, b)
    }

    /// Strictly positive off the diagonal.
    pub fn is_metric(&self) -> bool {
        self.d.iter().all(Signed::is_positive)
    }

    /// `T(ρ)`: triples on which the triangle inequality is tight.
    pub fn colinear_triples(&self) -> TripleSet {
        let mut s = TripleSet::new(self.n);
        for t in all_triples(self.n) {
            if self.slack(t).is_zero() {
                s.insert(t);
            }
        }
        s
    }

    /// `|i − j|` on `[n]`.
    pub fn line(n: usize) -> Pseudometric {
        Pseudometric {
            n,
            d: pairs(n)
                .map(|p| Rational::from_integer(((p.hi() - p.lo()) as i64).into()))
                .collect(),
        }
    }
}

/// `T(ρ)` as a free function.
pub fn triples_of_metric(rho: &Pseudometric) -> TripleSet {
    rho.colinear_triples()
}

/// Positive rational weights on exactly the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    graph: Graph,
    w: BTreeMap<Pair, Rational>,
}

impl WeightFunction {
    pub fn new(graph: Graph, w: BTreeMap<Pair, Rational>) -> Result<WeightFunction, Error> {
        for e in graph.edges() {
            match w.get(e) {
                None => return Err(Error::MissingWeight(*e)),
                Some(x) if !x.is_positive() => return Err(Error::NonPositiveWeight(*e)),
                _ => {}
            }
        }
        if let Some(extra) = w.keys().find(|p| !graph.edges().contains(p)) {
            return Err(Error::MissingWeight(*extra));
        }
        Ok(WeightFunction { graph, w })
    }

    pub fn uniform(graph: Graph, value: Rational) -> Result<WeightFunction, Error> {
        let w = graph.edges().iter().map(|e| (*e, value.clone())).collect();
        WeightFunction::new(graph, w)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<&Rational> {
        self.w.get(&Pair::new(u, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, &Rational)> {
        self.w.iter().map(|(p, x)| (*p, x))
    }
}

/// Non-negative coefficients `α_t` on pointed triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessAlpha {
    n: usize,
    alpha: BTreeMap<PointedTriple, Rational>,
}

impl WitnessAlpha {
    /// Zero coefficients are dropped.
    pub fn new<I>(n: usize, entries: I) -> WitnessAlpha
    where
        I: IntoIterator<Item = (PointedTriple, Rational)>,
    {
        let mut alpha = BTreeMap::new();
        for (t, a) in entries {
            if !a.is_zero() {
                *alpha.entry(t).or_insert_with(Rational::zero) += a;
            }
        }
        alpha.retain(|_, a: &mut Rational| !a.is_zero());
        WitnessAlpha { n, alpha }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, t: &PointedTriple) -> Rational {
        self.alpha.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointedTriple, &Rational)> {
        self.alpha.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &PointedTriple> {
        self.alpha.keys()
    }

    /// `Σ α_t Δ_t` as a rational vector.
    pub fn combination(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); num_pairs(self.n)];
        for (t, a) in &self.alpha {
            for (i, c) in delta_terms(*t, self.n) {
                v[i] += a * c;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resume::extract_resume;
    use crate::system::PathSystem;
    use ratlp::rat;

    fn t(a: Vertex, b: Vertex, c: Vertex) -> PointedTriple {
        PointedTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(t(1, 3, 2), 3).coords(), &[1, -1, 1]);
        assert_eq!(delta(t(1, 2, 3), 3).coords(), &[-1, 1, 1]);
        for tr in all_triples(6) {
            let d = delta(tr, 6);
            assert_eq!(d.total(), 1);
            assert_eq!(d.coords().iter().filter(|&&x| x == 1).count(), 2);
            assert_eq!(d.coords().iter().filter(|&&x| x == -1).count(), 1);
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(triple_signature(&TripleSet::new(3)), DeltaVector::zero(3));
        let s = TripleSet::from_triples(3, [t(1, 3, 2)]).unwrap();
        assert_eq!(triple_signature(&s).coords(), &[1, -1, 1]);
        let f = extract_resume(&PathSystem::all_edges(3)).unwrap();
        assert_eq!(resume_signature(&f), DeltaVector::zero(3));
        let f = Resume::from_entries(3, [(Pair::new(1, 3), 2)]).unwrap();
        assert_eq!(resume_signature(&f).coords(), &[1, -1, 1]);
    }

    #[test]
    fn metric_triples() {
        let unit = Pseudometric::from_pair_values(3, vec![rat(1, 1); 3]).unwrap();
        assert!(unit.colinear_triples().is_empty());
        let line = Pseudometric::line(3);
        assert_eq!(
            line.colinear_triples(),
            TripleSet::from_triples(3, [t(1, 3, 2)]).unwrap()
        );
        let zero = Pseudometric::from_pair_values(4, vec![rat(0, 1); 6]).unwrap();
        assert_eq!(zero.colinear_triples().len(), 12);
        assert!(!zero.is_metric());
    }

    #[test]
    fn pseudometric_validation() {
        assert!(Pseudometric::from_pair_values(3, vec![rat(1, 1), rat(3, 1), rat(1, 1)]).is_err());
        assert!(Pseudometric::from_pair_values(3, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]).is_err());
        let m = Pseudometric::line(4);
        assert_eq!(Pseudometric::from_matrix(&m.to_matrix()).unwrap(), m);
    }

    #[test]
    fn weights_must_be_positive_and_complete() {
        let g = Graph::path(3);
        let mut w = BTreeMap::new();
        w.insert(Pair::new(1, 2), rat(1, 1));
        assert!(matches!(
            WeightFunction::new(g.clone(), w.clone()),
            Err(Error::MissingWeight(_))
        ));
        w.insert(Pair::new(2, 3), rat(0, 1));
        assert!(matches!(WeightFunction::new(g, w), Err(Error::NonPositiveWeight(_))));
    }
}
