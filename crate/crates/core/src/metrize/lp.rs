use num_traits::{One, Signed, Zero};
use ratlp::{solve_feasibility, verify_certificate, Certificate, Feasibility, LinearSystem};

use crate::error::Error;
use crate::graph::{num_pairs, Pair};
use crate::system::PathSystem;
use crate::triple::{all_triples, PointedTriple, TripleSet};
use crate::Rational;

use super::{delta_terms, triple_signature, Pseudometric, WitnessAlpha};

/// Which family of metrics the linear program describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpMode {
    /// `T(P) ⊆ T(x)`, `x ≥ 1`.
    Metric,
    /// `T(P) = T(x)` with slack at least 1 off `T(P)`, `x ≥ 1`.
    Strict,
    /// As `Strict` without the lower bounds; feasible iff `Strict` is (by scaling).
    PseudoStrict,
}

/// What a row of a [`MetricLp`] stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowTag {
    Triple(PointedTriple),
    LowerBound(Pair),
}

/// The linear system on one variable per pair, with the meaning of each row.
#[derive(Debug, Clone)]
pub struct MetricLp {
    pub system: LinearSystem,
    pub equality_tags: Vec<RowTag>,
    pub inequality_tags: Vec<RowTag>,
}

/// Rows `⟨Δ_t, x⟩ = 0` for `t ∈ colinear`, `⟨Δ_t, x⟩ ≥ s` otherwise, plus `x ≥ 1` when bounded.
fn lp_for_triples(colinear: &TripleSet, mode: LpMode) -> MetricLp {
    let n = colinear.n();
    let mut system = LinearSystem::new(num_pairs(n));
    let mut equality_tags = Vec::new();
    let mut inequality_tags = Vec::new();
    let slack = match mode {
        LpMode::Metric => Rational::zero(),
        LpMode::Strict | LpMode::PseudoStrict => Rational::one(),
    };
    for t in all_triples(n) {
        let terms = delta_terms(t, n);
        if colinear.contains(&t) {
            system
                .add_equality_terms(&terms, Rational::zero())
                .expect("indices in range");
            equality_tags.push(RowTag::Triple(t));
        } else {
            system
                .add_inequality_terms(&terms, slack.clone())
                .expect("indices in range");
            inequality_tags.push(RowTag::Triple(t));
        }
    }
    if mode != LpMode::PseudoStrict {
        for (i, pair) in crate::graph::pairs(n).enumerate() {
            system
                .add_inequality_terms(&[(i, Rational::one())], Rational::one())
                .expect("indices in range");
            inequality_tags.push(RowTag::LowerBound(pair));
        }
    }
    MetricLp {
        system,
        equality_tags,
        inequality_tags,
    }
}

/// The metrization program of a path system; interior vertices give equality rows.
pub fn build_lp(sys: &PathSystem, mode: LpMode) -> MetricLp {
    lp_for_triples(&sys.colinear_triples(), mode)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricVerdict {
    /// A metric whose geodesics include every path of the system.
    Yes(Pseudometric),
    /// A verified Farkas certificate for the metric program.
    No(Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizability {
    /// A pseudometric with exactly the requested colinear triples.
    Yes(Pseudometric),
    /// A verified witness: `σ(S)` is a non-negative combination of triangle vectors leaving `S`.
    No(WitnessAlpha),
}

impl Realizability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Realizability::Yes(_))
    }
}

/// Is there a metric in which every path of `sys` is a shortest path?
pub fn is_metric(sys: &PathSystem) -> Result<MetricVerdict, Error> {
    sys.require_consistent()?;
    let lp = build_lp(sys, LpMode::Metric);
    match solve_feasibility(&lp.system) {
        Feasibility::Feasible(x) => {
            let rho = Pseudometric::from_pair_values(sys.n(), x).expect("rows include every triangle inequality");
            assert!(rho.is_metric(), "lower bounds keep distances positive");
            assert!(sys.colinear_triples().is_subset(&rho.colinear_triples()));
            Ok(MetricVerdict::Yes(rho))
        }
        Feasibility::Infeasible(cert) => {
            assert!(verify_certificate(&lp.system, &cert));
            Ok(MetricVerdict::No(cert))
        }
    }
}

/// Is `sys` the unique geodesic system of some positive weighting?
pub fn is_strictly_metric(sys: &PathSystem) -> Result<Realizability, Error> {
    sys.require_consistent()?;
    let target = sys.colinear_triples();
    let lp = build_lp(sys, LpMode::PseudoStrict);
    Ok(decide(&target, &lp))
}

/// Is `S = T(ρ)` for some pseudometric `ρ`?
pub fn is_realizable(s: &TripleSet) -> Realizability {
    decide(s, &lp_for_triples(s, LpMode::PseudoStrict))
}

fn decide(target: &TripleSet, lp: &MetricLp) -> Realizability {
    match solve_feasibility(&lp.system) {
        Feasibility::Feasible(x) => {
            let rho = Pseudometric::from_pair_values(target.n(), x).expect("rows include every triangle inequality");
            assert_eq!(
                &rho.colinear_triples(),
                target,
                "slack rows separate every other triple"
            );
            Realizability::Yes(rho)
        }
        Feasibility::Infeasible(cert) => {
            assert!(verify_certificate(&lp.system, &cert));
            let alpha = witness_from_certificate(target.n(), lp, &cert);
            assert!(verify_witness(target, &alpha), "converted witness must verify");
            Realizability::No(alpha)
        }
    }
}

/// Turns `Σβ_sΔ_s + Σλ_tΔ_t = 0, Σλ_t > 0` into `Σ_{s∈S}Δ_s = Σα_tΔ_t`.
///
/// With `γ = −β` the certificate reads `Σγ_sΔ_s = Σλ_tΔ_t`; after scaling by
/// `c > 0` with `cγ_s ≤ 1`, adding `Σ_{s∈S}(1 − cγ_s)Δ_s` to both sides gives
/// the identity with every coefficient non-negative.
fn witness_from_certificate(n: usize, lp: &MetricLp, cert: &Certificate) -> WitnessAlpha {
    let gammas: Vec<(PointedTriple, Rational)> = lp
        .equality_tags
        .iter()
        .zip(&cert.equality_multipliers)
        .map(|(tag, beta)| match tag {
            RowTag::Triple(t) => (*t, -beta),
            RowTag::LowerBound(_) => unreachable!("bounds are inequalities"),
        })
        .collect();
    let max_gamma = gammas
        .iter()
        .map(|(_, g)| g.clone())
        .fold(Rational::one(), |m, g| if g > m { g } else { m });
    let scale = Rational::one() / max_gamma;
    let mut entries = Vec::new();
    for (tag, lambda) in lp.inequality_tags.iter().zip(&cert.inequality_multipliers) {
        match tag {
            RowTag::Triple(t) => entries.push((*t, &scale * lambda)),
            RowTag::LowerBound(_) => unreachable!("realizability programs carry no bounds"),
        }
    }
    for (s, gamma) in gammas {
        entries.push((s, Rational::one() - &scale * gamma));
    }
    WitnessAlpha::new(n, entries)
}

/// Checks `α ≥ 0`, `supp α ⊄ S` and `Σ_{s∈S}Δ_s = Σα_tΔ_t` exactly.
pub fn verify_witness(s: &TripleSet, alpha: &WitnessAlpha) -> bool {
    if alpha.n() != s.n() || alpha.iter().any(|(_, a)| a.is_negative()) {
        return false;
    }
    if !alpha.iter().any(|(t, a)| a.is_positive() && !s.contains(t)) {
        return false;
    }
    let lhs = triple_signature(s);
    let rhs = alpha.combination();
    lhs.coords()
        .iter()
        .zip(&rhs)
        .all(|(l, r)| Rational::from_integer((*l).into()) == *r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Path;
    use crate::Vertex;
    use ratlp::rat;

    fn t(a: Vertex, b: Vertex, c: Vertex) -> PointedTriple {
        PointedTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn triangle_program_shape() {
        let lp = build_lp(&PathSystem::all_edges(3), LpMode::Strict);
        assert_eq!(lp.system.num_vars(), 3);
        assert_eq!(lp.system.equalities().len(), 0);
        assert_eq!(lp.system.inequalities().len(), 6);
        for n in 3..=6 {
            let lp = build_lp(&PathSystem::all_edges(n), LpMode::Strict);
            let c3 = n * (n - 1) * (n - 2) / 6;
            assert_eq!(lp.system.inequalities().len(), 3 * c3 + n * (n - 1) / 2);
        }
    }

    #[test]
    fn simple_systems_are_strictly_metric() {
        assert!(is_strictly_metric(&PathSystem::all_edges(3)).unwrap().is_yes());
        assert!(is_strictly_metric(&PathSystem::line(4)).unwrap().is_yes());
        assert!(matches!(
            is_metric(&PathSystem::line(5)).unwrap(),
            MetricVerdict::Yes(_)
        ));
    }

    #[test]
    fn inconsistent_system_is_an_error() {
        let p = |v: &[Vertex]| Path::new(v.to_vec()).unwrap();
        let sys = PathSystem::from_paths(3, [p(&[1, 3, 2]), p(&[1, 2, 3]), p(&[2, 3])]).unwrap();
        assert!(matches!(is_metric(&sys), Err(Error::Inconsistent(..))));
    }

    #[test]
    fn opposite_triples_force_more_tight_triples() {
        // {1,2;3} and {1,3;2} force d(2,3) = 0, which makes {2,4;3} tight as well.
        let s = TripleSet::from_triples(3, [t(1, 2, 3), t(1, 3, 2)]).unwrap();
        assert!(is_realizable(&s).is_yes());
        let s = TripleSet::from_triples(4, [t(1, 2, 3), t(1, 3, 2)]).unwrap();
        match is_realizable(&s) {
            Realizability::No(alpha) => {
                assert!(verify_witness(&s, &alpha));
                let inside = WitnessAlpha::new(4, s.iter().map(|x| (*x, rat(1, 1))));
                assert!(!verify_witness(&s, &inside), "support must leave S");
                let mut tampered: Vec<(PointedTriple, Rational)> = alpha.iter().map(|(x, a)| (*x, a.clone())).collect();
                tampered[0].1 += rat(1, 7);
                assert!(!verify_witness(&s, &WitnessAlpha::new(4, tampered)));
            }
            Realizability::Yes(_) => panic!("not realizable"),
        }
        let negative = WitnessAlpha::new(4, [(t(2, 3, 1), rat(-1, 1))]);
        assert!(!verify_witness(&s, &negative));
    }
}
