//! A smaller program for systems whose paths have at most two edges.
//!
//! With `f` the résumé, the system is strictly metric iff some `x` (of any
//! sign) has `x_{a,c} + x_{c,b} ≥ x_{a,f} + x_{f,b} + 1` for every non-edge
//! pair `{a,b}` and every `c ∉ {a, b, f(a,b)}`. Infeasibility is witnessed by
//! a stochastic choice of middle vertex per pair that reproduces the résumé's
//! edge multiset while leaving the résumé somewhere.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use ratlp::{solve_feasibility, verify_certificate, Certificate, Feasibility, LinearSystem};

use crate::error::Error;
use crate::graph::{num_pairs, Pair, Vertex};
use crate::resume::{extract_resume, Resume};
use crate::system::PathSystem;
use crate::Rational;

/// `α_{a,b;i}`: for every non-edge pair a probability vector over middle vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterTwoWitness {
    pub n: usize,
    pub alpha: BTreeMap<Pair, BTreeMap<Vertex, Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiameterTwoVerdict {
    /// Values on pairs satisfying every row.
    Feasible(Vec<Rational>),
    Infeasible(DiameterTwoWitness),
}

impl DiameterTwoVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, DiameterTwoVerdict::Feasible(_))
    }
}

/// Rows of the program with the `(pair, c)` each stands for.
pub fn diameter_two_strict_system(sys: &PathSystem) -> Result<(LinearSystem, Vec<(Pair, Vertex)>), Error> {
    if sys.diameter() > 2 {
        return Err(Error::DiameterTooLarge(sys.diameter()));
    }
    let f = extract_resume(sys)?;
    let n = sys.n();
    let mut lp = LinearSystem::new(num_pairs(n));
    let mut tags = Vec::new();
    for (pair, mid) in f.iter() {
        let (a, b) = (pair.lo(), pair.hi());
        for c in (1..=n).filter(|&c| c != a && c != b && c != mid) {
            let terms = [
                (Pair::new(a, c).index(n), Rational::one()),
                (Pair::new(c, b).index(n), Rational::one()),
                (Pair::new(a, mid).index(n), -Rational::one()),
                (Pair::new(mid, b).index(n), -Rational::one()),
            ];
            lp.add_inequality_terms(&terms, Rational::one())
                .expect("indices in range");
            tags.push((pair, c));
        }
    }
    Ok((lp, tags))
}

/// Decides the program and converts an infeasibility certificate into a verified witness.
pub fn diameter_two_witness(sys: &PathSystem) -> Result<DiameterTwoVerdict, Error> {
    let (lp, tags) = diameter_two_strict_system(sys)?;
    let f = extract_resume(sys)?;
    match solve_feasibility(&lp) {
        Feasibility::Feasible(x) => Ok(DiameterTwoVerdict::Feasible(x)),
        Feasibility::Infeasible(cert) => {
            assert!(verify_certificate(&lp, &cert));
            let w = witness_from_certificate(&f, &tags, &cert);
            assert!(verify_diameter_two_witness(&f, &w));
            Ok(DiameterTwoVerdict::Infeasible(w))
        }
    }
}

/// Scales `λ` so each pair's mass stays below 1 and gives the rest to the résumé's vertex.
fn witness_from_certificate(f: &Resume, tags: &[(Pair, Vertex)], cert: &Certificate) -> DiameterTwoWitness {
    let mut mass: BTreeMap<Pair, Rational> = BTreeMap::new();
    for ((pair, _), lambda) in tags.iter().zip(&cert.inequality_multipliers) {
        *mass.entry(*pair).or_insert_with(Rational::zero) += lambda;
    }
    let max_mass = mass.values().cloned().max().unwrap_or_else(Rational::zero);
    let scale = Rational::one() / (max_mass + Rational::one());
    let mut alpha: BTreeMap<Pair, BTreeMap<Vertex, Rational>> = BTreeMap::new();
    for (pair, mid) in f.iter() {
        let total = mass.get(&pair).cloned().unwrap_or_else(Rational::zero);
        alpha
            .entry(pair)
            .or_default()
            .insert(mid, Rational::one() - &scale * total);
    }
    for ((pair, c), lambda) in tags.iter().zip(&cert.inequality_multipliers) {
        if !lambda.is_zero() {
            alpha.entry(*pair).or_default().insert(*c, &scale * lambda);
        }
    }
    DiameterTwoWitness { n: f.n(), alpha }
}

/// Checks the witness conditions exactly against the résumé `f`.
pub fn verify_diameter_two_witness(f: &Resume, w: &DiameterTwoWitness) -> bool {
    let n = f.n();
    if w.n != n || w.alpha.keys().any(|p| f.get(*p).is_none()) {
        return false;
    }
    let mut lhs = vec![Rational::zero(); num_pairs(n)];
    let mut rhs = vec![Rational::zero(); num_pairs(n)];
    let mut moved = false;
    for (pair, mid) in f.iter() {
        let (a, b) = (pair.lo(), pair.hi());
        lhs[Pair::new(a, mid).index(n)] += Rational::one();
        lhs[Pair::new(mid, b).index(n)] += Rational::one();
        let Some(row) = w.alpha.get(&pair) else {
            return false;
        };
        let mut total = Rational::zero();
        for (&i, a_i) in row {
            if i == 0 || i > n || pair.contains(i) || a_i.is_negative() {
                return false;
            }
            total += a_i;
            rhs[Pair::new(a, i).index(n)] += a_i;
            rhs[Pair::new(i, b).index(n)] += a_i;
        }
        if !total.is_one() {
            return false;
        }
        if row.get(&mid).is_none_or(|v| *v < Rational::one()) {
            moved = true;
        }
    }
    moved && lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrize::is_strictly_metric;
    use crate::path::Path;

    #[test]
    fn star_system_is_feasible() {
        // Every pair of leaves routes through the centre 1.
        let mut paths = Vec::new();
        for a in 1..=4 {
            for b in a + 1..=4 {
                paths.push(if a == 1 {
                    Path::edge(a, b)
                } else {
                    Path::new(vec![a, 1, b]).unwrap()
                });
            }
        }
        let sys = PathSystem::from_paths(4, paths).unwrap();
        assert!(diameter_two_witness(&sys).unwrap().is_feasible());
        assert!(is_strictly_metric(&sys).unwrap().is_yes());
    }

    #[test]
    fn long_paths_are_rejected() {
        assert_eq!(
            diameter_two_witness(&PathSystem::line(4)),
            Err(Error::DiameterTooLarge(3))
        );
    }
}
