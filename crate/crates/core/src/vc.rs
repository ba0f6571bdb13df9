//! Set systems on at most 64 points, VC dimension, and maximum classes built
//! from random simplicial complexes.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;

use crate::error::Error;
use crate::generators::{seeded_rng, Probability};
use crate::graph::Vertex;
use crate::system::PathSystem;
use crate::Rational;

/// Bit `v - 1` stands for vertex `v`.
pub type Mask = u64;

pub fn mask_of(vertices: &[Vertex]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | 1 << (v - 1))
}

pub fn vertices_of(mask: Mask) -> Vec<Vertex> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn check_points(n: usize) -> Result<(), Error> {
    if n > 64 {
        Err(Error::TooManyPoints(n))
    } else {
        Ok(())
    }
}

/// Distinct subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    sets: BTreeSet<Mask>,
}

impl SetSystem {
    pub fn new(n: usize) -> Result<SetSystem, Error> {
        check_points(n)?;
        Ok(SetSystem {
            n,
            sets: BTreeSet::new(),
        })
    }

    /// Duplicates collapse; vertices must lie in `[n]`.
    pub fn from_sets<I>(n: usize, sets: I) -> Result<SetSystem, Error>
    where
        I: IntoIterator<Item = Vec<Vertex>>,
    {
        let mut f = SetSystem::new(n)?;
        for s in sets {
            if let Some(&v) = s.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            f.sets.insert(mask_of(&s));
        }
        Ok(f)
    }

    /// Every subset of `[n]`.
    pub fn power_set(n: usize) -> Result<SetSystem, Error> {
        check_points(n)?;
        if n > 20 {
            return Err(Error::TooManyPoints(n));
        }
        Ok(SetSystem {
            n,
            sets: (0..1u64 << n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.sets.contains(&mask)
    }

    pub fn insert(&mut self, mask: Mask) -> bool {
        self.sets.insert(mask)
    }

    pub fn remove(&mut self, mask: Mask) -> bool {
        self.sets.remove(&mask)
    }

    pub fn masks(&self) -> impl Iterator<Item = Mask> + '_ {
        self.sets.iter().copied()
    }

    /// Sets as sorted vertex lists, ordered by size and then lexicographically.
    pub fn sets(&self) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = self.sets.iter().map(|&m| vertices_of(m)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `A ∩ B ∈ F` for all `A, B ∈ F`.
    pub fn is_intersection_closed(&self) -> bool {
        self.sets
            .iter()
            .all(|&a| self.sets.iter().all(|&b| self.sets.contains(&(a & b))))
    }
}

/// `{V(P) : P ∈ 𝒫} ∪ {∅, {1}, …, {n}}`.
pub fn family_of_system(sys: &PathSystem) -> Result<SetSystem, Error> {
    sys.require_consistent()?;
    let n = sys.n();
    let mut f = SetSystem::new(n)?;
    f.insert(0);
    for v in 1..=n {
        f.insert(mask_of(&[v]));
    }
    for (_, p) in sys.iter() {
        f.insert(mask_of(p.vertices()));
    }
    Ok(f)
}

/// `{S ∩ F : F ∈ 𝓕} = 2^S`.
pub fn shatters(f: &SetSystem, s: Mask) -> bool {
    let size = s.count_ones();
    if size >= 64 || (f.len() as u128) < 1u128 << size {
        return false;
    }
    let traces: BTreeSet<Mask> = f.masks().map(|m| m & s).collect();
    traces.len() as u128 == 1u128 << size
}

/// All `size`-subsets of `[n]` in lexicographic order of their sorted vertex lists.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(size);
    choose(n, size, 1, &mut pick, &mut out);
    out
}

fn choose(n: usize, size: usize, from: Vertex, pick: &mut Vec<Vertex>, out: &mut Vec<Mask>) {
    if pick.len() == size {
        out.push(mask_of(pick));
        return;
    }
    for v in from..=n {
        if n - v + 1 < size - pick.len() {
            break;
        }
        pick.push(v);
        choose(n, size, v + 1, pick, out);
        pick.pop();
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σ_{i≤d} C(n, i)`.
pub fn sauer_bound(n: usize, d: usize) -> BigUint {
    (0..=d).map(|i| binomial(n, i)).sum()
}

/// Largest size of a shattered set; 0 for an empty family.
///
/// Starts at the smallest `d` allowed by `|𝓕| ≤ Σ_{i≤d} C(n,i)` and stops at
/// the first size with no shattered set.
pub fn vc_dim(f: &SetSystem) -> usize {
    if f.is_empty() {
        return 0;
    }
    let size = BigUint::from(f.len());
    let mut d = (0..=f.n()).find(|&d| sauer_bound(f.n(), d) >= size).unwrap_or(f.n());
    let limit = (usize::BITS - 1 - f.len().leading_zeros()) as usize;
    debug_assert!(d == 0 || subsets_of_size(f.n(), d).into_iter().any(|s| shatters(f, s)));
    while d < limit.min(f.n()) && subsets_of_size(f.n(), d + 1).into_iter().any(|s| shatters(f, s)) {
        d += 1;
    }
    d
}

/// VC dimension `d` and exactly `Σ_{i≤d} C(n,i)` sets.
pub fn is_maximum_class(f: &SetSystem, d: usize) -> bool {
    BigUint::from(f.len()) == sauer_bound(f.n(), d) && vc_dim(f) == d
}

/// Full `(k−1)`-skeleton on `[n]` plus a chosen set of `(k+1)`-subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    k: usize,
    top: BTreeSet<Mask>,
}

impl SimplicialComplex {
    pub fn new<I>(n: usize, k: usize, faces: I) -> Result<SimplicialComplex, Error>
    where
        I: IntoIterator<Item = Vec<Vertex>>,
    {
        check_points(n)?;
        let mut top = BTreeSet::new();
        for face in faces {
            if let Some(&v) = face.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let m = mask_of(&face);
            if m.count_ones() as usize != k + 1 || face.len() != k + 1 {
                return Err(Error::InvalidFace(face));
            }
            top.insert(m);
        }
        Ok(SimplicialComplex { n, k, top })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `E(Y)` as sorted vertex lists.
    pub fn top_faces(&self) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = self.top.iter().map(|&m| vertices_of(m)).collect();
        out.sort();
        out
    }

    pub fn num_top_faces(&self) -> usize {
        self.top.len()
    }

    pub fn is_face(&self, s: Mask) -> bool {
        let size = s.count_ones() as usize;
        size <= self.k || (size == self.k + 1 && self.top.contains(&s))
    }
}

/// `Y_k(n, p)`: each `(k+1)`-subset, in lexicographic order, kept with probability `p`.
///
/// Uses the same stream as [`crate::generators::gen_gnp`], so `k = 1` reproduces its edges.
pub fn sample_lm(n: usize, k: usize, p: &Rational, seed: u64) -> Result<SimplicialComplex, Error> {
    check_points(n)?;
    let prob = Probability::new(p)?;
    let mut rng = seeded_rng(seed);
    let top = subsets_of_size(n, k + 1)
        .into_iter()
        .filter(|_| prob.sample(&mut rng))
        .collect();
    Ok(SimplicialComplex { n, k, top })
}

/// Vertices `a ∉ S` with `S ∪ {a} ∖ {x}` a face for every `x ∈ S`.
pub fn compatible_vertices(y: &SimplicialComplex, s: Mask) -> Result<Vec<Vertex>, Error> {
    if s.count_ones() as usize != y.k + 1 || y.top.contains(&s) {
        return Err(Error::FaceNotAllowed(vertices_of(s)));
    }
    let members = vertices_of(s);
    Ok((1..=y.n)
        .filter(|&a| s >> (a - 1) & 1 == 0)
        .filter(|&a| {
            members
                .iter()
                .all(|&x| y.top.contains(&((s | 1 << (a - 1)) & !(1 << (x - 1)))))
        })
        .collect())
}

/// The unique `(k+1)`-subset of an extension that is not a face of `Y`.
pub fn extension_base(y: &SimplicialComplex, t: Mask) -> Option<Mask> {
    let mut bases = vertices_of(t)
        .into_iter()
        .map(|v| t & !(1 << (v - 1)))
        .filter(|s| !y.top.contains(s));
    let base = bases.next()?;
    bases.next().is_none().then_some(base)
}

/// How [`build_maximum_class`] picks among compatible vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chooser {
    Smallest,
    /// Uniform choice from a generator seeded by the build seed.
    Random,
}

/// All faces of `Y` plus one compatible extension of every missing `(k+1)`-set.
///
/// The result is checked to have `Σ_{i≤k+1} C(n,i)` sets and VC dimension `k + 1`.
pub fn build_maximum_class(y: &SimplicialComplex, chooser: Chooser, seed: u64) -> Result<SetSystem, Error> {
    let mut rng = seeded_rng(seed);
    let mut f = SetSystem::new(y.n)?;
    for size in 0..=y.k {
        for s in subsets_of_size(y.n, size) {
            f.insert(s);
        }
    }
    for &s in &y.top {
        f.insert(s);
    }
    for s in subsets_of_size(y.n, y.k + 1) {
        if y.top.contains(&s) {
            continue;
        }
        let options = compatible_vertices(y, s)?;
        let a = match chooser {
            Chooser::Smallest => options.first().copied(),
            Chooser::Random => options.choose(&mut rng).copied(),
        }
        .ok_or_else(|| Error::NoCompatibleExtension(vertices_of(s)))?;
        let ext = s | 1 << (a - 1);
        if !f.insert(ext) {
            return Err(Error::ConstructionCheck("two sets share an extension"));
        }
    }
    let d = y.k + 1;
    if BigUint::from(f.len()) != sauer_bound(y.n, d) {
        return Err(Error::ConstructionCheck("family size differs from the Sauer bound"));
    }
    if vc_dim(&f) != d {
        return Err(Error::ConstructionCheck("VC dimension differs from k + 1"));
    }
    Ok(f)
}

/// Tries seeds `first_seed, first_seed + 1, …` until a complex admits the construction.
pub fn build_with_retries(
    n: usize,
    d: usize,
    p: &Rational,
    first_seed: u64,
    attempts: u64,
    chooser: Chooser,
) -> Result<(u64, SimplicialComplex, SetSystem), Error> {
    assert!(d >= 1, "dimension at least 1");
    let mut last = Error::ConstructionCheck("no attempts made");
    for seed in first_seed..first_seed + attempts {
        let y = sample_lm(n, d - 1, p, seed)?;
        match build_maximum_class(&y, chooser, seed) {
            Ok(f) => return Ok((seed, y, f)),
            Err(e @ Error::NoCompatibleExtension(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_gnp;
    use ratlp::rat;

    #[test]
    fn power_set_and_trivial_families() {
        let p = SetSystem::power_set(3).unwrap();
        assert!(shatters(&p, mask_of(&[1, 2, 3])));
        assert_eq!(vc_dim(&p), 3);
        assert!(is_maximum_class(&p, 3));
        assert_eq!(vc_dim(&SetSystem::from_sets(3, [vec![]]).unwrap()), 0);
        assert!(SetSystem::new(65).is_err());
    }

    #[test]
    fn triangle_family() {
        let f = family_of_system(&PathSystem::all_edges(3)).unwrap();
        assert_eq!(f.len(), 7);
        let line = family_of_system(&PathSystem::line(4)).unwrap();
        assert_eq!(line.len(), 11);
        assert!(is_maximum_class(&line, 2));
        let mut short = line.clone();
        short.remove(mask_of(&[1, 2]));
        assert!(!is_maximum_class(&short, 2));
    }

    #[test]
    fn lexicographic_subsets() {
        let got: Vec<Vec<Vertex>> = subsets_of_size(4, 2).into_iter().map(vertices_of).collect();
        assert_eq!(
            got,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(subsets_of_size(5, 0), vec![0]);
    }

    #[test]
    fn sampling_extremes_and_shared_stream() {
        assert_eq!(sample_lm(6, 2, &rat(1, 1), 0).unwrap().num_top_faces(), 20);
        assert_eq!(sample_lm(6, 2, &rat(0, 1), 0).unwrap().num_top_faces(), 0);
        let y = sample_lm(12, 1, &rat(1, 2), 42).unwrap();
        let g = gen_gnp(12, &rat(1, 2), 42).unwrap();
        let edges: Vec<Vec<Vertex>> = g.edges().iter().map(|e| vec![e.lo(), e.hi()]).collect();
        assert_eq!(y.top_faces(), edges);
    }

    #[test]
    fn compatible_vertex_examples() {
        let c4 = SimplicialComplex::new(4, 1, [vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
        assert_eq!(compatible_vertices(&c4, mask_of(&[1, 3])).unwrap(), vec![2, 4]);
        let path = SimplicialComplex::new(3, 1, [vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(compatible_vertices(&path, mask_of(&[1, 3])).unwrap(), vec![2]);
        assert!(compatible_vertices(&path, mask_of(&[1, 2])).is_err());
    }

    #[test]
    fn full_complex_needs_no_extensions() {
        let y = sample_lm(6, 1, &rat(1, 1), 0).unwrap();
        let f = build_maximum_class(&y, Chooser::Smallest, 0).unwrap();
        assert!(is_maximum_class(&f, 2));
    }

    #[test]
    fn choosers_give_distinct_families() {
        let c4 = SimplicialComplex::new(4, 1, [vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
        let a = build_maximum_class(&c4, Chooser::Smallest, 0).unwrap();
        let mut distinct = false;
        for seed in 0..16 {
            let b = build_maximum_class(&c4, Chooser::Random, seed).unwrap();
            assert!(is_maximum_class(&b, 2));
            distinct |= a != b;
        }
        assert!(distinct);
    }
}
