use num_traits::{One, Zero};
use ratlp::{solve_feasibility, Feasibility, LinearSystem};
use rayon::prelude::*;

use crate::graph::num_pairs;
use crate::triple::{all_triples, PointedTriple, TripleSet};
use crate::Rational;

use super::{delta_terms, is_realizable};

/// `cl(S)`: the triples tight in every pseudometric in which all of `S` is tight.
///
/// `t ∉ S` joins the closure iff no `x` has `⟨Δ_s,x⟩ = 0` on `S`,
/// `⟨Δ_t,x⟩ ≥ 1` and `⟨Δ_r,x⟩ ≥ 0` elsewhere.
pub fn closure(s: &TripleSet) -> TripleSet {
    let n = s.n();
    let triples = all_triples(n);
    let forced: Vec<PointedTriple> = triples
        .par_iter()
        .filter(|t| !s.contains(t))
        .filter(|t| !can_be_loose(s, **t))
        .copied()
        .collect();
    let mut out = s.clone();
    for t in forced {
        out.insert(t);
    }
    assert!(
        is_realizable(&out).is_yes(),
        "a closure is realized by any generic point of its cone"
    );
    out
}

fn can_be_loose(s: &TripleSet, target: PointedTriple) -> bool {
    let n = s.n();
    let mut sys = LinearSystem::new(num_pairs(n));
    for r in all_triples(n) {
        let terms = delta_terms(r, n);
        if s.contains(&r) {
            sys.add_equality_terms(&terms, Rational::zero())
                .expect("indices in range");
        } else {
            let rhs = if r == target { Rational::one() } else { Rational::zero() };
            sys.add_inequality_terms(&terms, rhs).expect("indices in range");
        }
    }
    matches!(solve_feasibility(&sys), Feasibility::Feasible(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Vertex;

    fn t(a: Vertex, b: Vertex, c: Vertex) -> PointedTriple {
        PointedTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn empty_set_is_closed() {
        assert!(closure(&TripleSet::new(4)).is_empty());
    }

    #[test]
    fn opposite_pair_collapses_an_edge() {
        let s = TripleSet::from_triples(4, [t(1, 2, 3), t(1, 3, 2)]).unwrap();
        let c = closure(&s);
        for extra in [t(2, 4, 3), t(3, 4, 2)] {
            assert!(c.contains(&extra));
        }
        assert_eq!(closure(&c), c);
    }

    #[test]
    fn realizable_sets_are_fixed() {
        let s = TripleSet::from_triples(4, [t(1, 3, 2), t(1, 4, 2), t(1, 4, 3), t(2, 4, 3)]).unwrap();
        assert_eq!(closure(&s), s);
    }
}
