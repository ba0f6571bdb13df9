//! Constructive families: diameter-2 systems, matching-based strictly metric
//! systems on random and bipartite graphs, join graphs and monotone systems.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{pairs, Graph, Pair, Vertex};
use crate::metrize::{induce_system, Inducement, WeightFunction};
use crate::path::Path;
use crate::system::PathSystem;
use crate::Rational;

/// Default largest `n` accepted by [`enumerate_monotone`].
pub const DEFAULT_MONOTONE_CAP: usize = 6;

/// Default bound on the number of systems [`enumerate_diam2`] may produce.
pub const DEFAULT_DIAM2_CAP: u64 = 1_000_000;

/// How many noise draws [`matching_weights`] tries before giving up.
pub const NOISE_RETRIES: usize = 100;

/// The seeded generator shared by every random construction.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A probability `num/den` with both parts fitting in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(p: &Rational) -> Result<Probability, Error> {
        if p.is_negative_or_above_one() {
            return Err(Error::InvalidProbability);
        }
        let num = p.numer().to_u64().ok_or(Error::InvalidProbability)?;
        let den = p.denom().to_u64().ok_or(Error::InvalidProbability)?;
        Ok(Probability { num, den })
    }

    /// One Bernoulli draw: a uniform integer below `den` compared with `num`.
    pub fn sample<R: Rng>(self, rng: &mut R) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

trait UnitInterval {
    fn is_negative_or_above_one(&self) -> bool;
}

impl UnitInterval for Rational {
    fn is_negative_or_above_one(&self) -> bool {
        *self < Rational::zero() || *self > Rational::from_integer(1.into())
    }
}

/// `G(n,p)`: pairs visited in lexicographic order, one draw each.
pub fn gen_gnp(n: usize, p: &Rational, seed: u64) -> Result<Graph, Error> {
    let prob = Probability::new(p)?;
    let mut rng = seeded_rng(seed);
    let mut g = Graph::empty(n);
    for pair in pairs(n) {
        if prob.sample(&mut rng) {
            g.add_edge(pair.lo(), pair.hi());
        }
    }
    Ok(g)
}

/// Every neighborly system of diameter 2 in `g`: edges stay edges, each
/// non-edge picks one common neighbour as its midpoint.
///
/// Empty when some non-edge has no common neighbour.
pub fn enumerate_diam2(g: &Graph, cap: u64) -> Result<Vec<PathSystem>, Error> {
    let n = g.n();
    let choices: Vec<(Pair, Vec<Vertex>)> = g.non_edges().map(|p| (p, g.common_neighbors(p.lo(), p.hi()))).collect();
    if choices.iter().any(|(_, c)| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut total: u64 = 1;
    for (_, c) in &choices {
        total = total.saturating_mul(c.len() as u64);
        if total > cap {
            return Err(Error::CapExceeded {
                what: "diameter-2 systems",
                cap,
            });
        }
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut odometer = vec![0usize; choices.len()];
    loop {
        let mut mid: BTreeMap<Pair, Vertex> = BTreeMap::new();
        for ((pair, c), &k) in choices.iter().zip(&odometer) {
            mid.insert(*pair, c[k]);
        }
        let paths = pairs(n).map(|p| match mid.get(&p) {
            Some(&z) => Path::new(vec![p.lo(), z, p.hi()]).expect("midpoint is distinct"),
            None => Path::edge(p.lo(), p.hi()),
        });
        out.push(PathSystem::from_paths(n, paths)?);
        let mut i = choices.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < choices[i].1.len() {
                break;
            }
            odometer[i] = 0;
        }
    }
}

/// Disjoint edges `x_i y_i` with named sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(Vertex, Vertex)>,
}

impl Matching {
    /// Checks that the edges are present in `g` and pairwise disjoint.
    pub fn new(g: &Graph, edges: Vec<(Vertex, Vertex)>) -> Result<Matching, Error> {
        let mut used = vec![false; g.n() + 1];
        for &(x, y) in &edges {
            if x == 0 || y == 0 || x > g.n() || y > g.n() || x == y {
                return Err(Error::NotAMatching("vertex out of range"));
            }
            if !g.has_edge(x, y) {
                return Err(Error::NotAMatching("edge missing from the graph"));
            }
            if used[x] || used[y] {
                return Err(Error::NotAMatching("edges overlap"));
            }
            used[x] = true;
            used[y] = true;
        }
        Ok(Matching { edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn x(&self, i: usize) -> Vertex {
        self.edges[i].0
    }

    pub fn y(&self, i: usize) -> Vertex {
        self.edges[i].1
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x == u && y == v) || (x == v && y == u))
    }
}

/// A matching of size `⌊n/2⌋`, found by seeded greedy matching plus
/// augmentations along paths of length three; orientation of each edge is a coin flip.
pub fn perfect_matching(g: &Graph, seed: u64) -> Result<Matching, Error> {
    let n = g.n();
    let mut rng = seeded_rng(seed);
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut mate = vec![0usize; n + 1];
    for &u in &order {
        if mate[u] != 0 {
            continue;
        }
        let free: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&v| mate[v] == 0).collect();
        if let Some(&v) = free.choose(&mut rng) {
            mate[u] = v;
            mate[v] = u;
        }
    }
    loop {
        let free: Vec<Vertex> = order.iter().copied().filter(|&v| mate[v] == 0).collect();
        let mut improved = false;
        'search: for (k, &u) in free.iter().enumerate() {
            for &v in &free[k + 1..] {
                if mate[u] != 0 || mate[v] != 0 {
                    continue;
                }
                if g.has_edge(u, v) {
                    mate[u] = v;
                    mate[v] = u;
                    improved = true;
                    continue 'search;
                }
                // u - a = b - v becomes u = a - b = v.
                for &a in g.neighbors(u) {
                    let b = mate[a];
                    if b != 0 && b != v && g.has_edge(b, v) {
                        mate[u] = a;
                        mate[a] = u;
                        mate[b] = v;
                        mate[v] = b;
                        improved = true;
                        continue 'search;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    let mut edges = Vec::new();
    for &u in &order {
        let v = mate[u];
        if v != 0 && u < v {
            edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    if edges.len() < n / 2 {
        return Err(Error::NoPerfectMatching);
    }
    Matching::new(g, edges)
}

/// Index pairs `(i, j)`, `i < j`, with `x_i x_j ∉ E` and `x_i y_j, x_j y_i ∈ E`.
pub fn admissible_pairs(g: &Graph, m: &Matching) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if !g.has_edge(m.x(i), m.x(j)) && g.has_edge(m.x(i), m.y(j)) && g.has_edge(m.x(j), m.y(i)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Which matched vertex an admissible pair `x_i, x_j` routes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Via {
    /// `x_i y_i x_j`.
    First,
    /// `x_i y_j x_j`.
    Second,
}

/// Weights with certified unique shortest paths and the system they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certified {
    pub weights: WeightFunction,
    pub system: PathSystem,
    /// Noise draws needed before every shortest path was unique.
    pub attempts: usize,
}

fn chosen_path(m: &Matching, (i, j): (usize, usize), via: Via) -> Path {
    let mid = match via {
        Via::First => m.y(i),
        Via::Second => m.y(j),
    };
    Path::new(vec![m.x(i), mid, m.x(j)]).expect("matching vertices are distinct")
}

/// Weights `1` on matching edges, `11/10` on other edges of chosen paths and
/// `12/10` elsewhere, each plus `k/10⁶` with `k` uniform in `0..=10⁴`.
///
/// Redraws the noise until every shortest path is unique, then checks that
/// each chosen path is the induced one.
pub fn matching_weights(
    g: &Graph,
    m: &Matching,
    choices: &BTreeMap<(usize, usize), Via>,
    noise_seed: u64,
) -> Result<Certified, Error> {
    let admissible = admissible_pairs(g, m);
    for key in choices.keys() {
        if !admissible.contains(key) {
            return Err(Error::ChoiceMismatch(pair_of(m, *key)));
        }
    }
    if let Some(missing) = admissible.iter().find(|k| !choices.contains_key(k)) {
        return Err(Error::ChoiceMismatch(pair_of(m, *missing)));
    }
    let chosen: Vec<Path> = choices.iter().map(|(k, v)| chosen_path(m, *k, *v)).collect();
    let mut cheap = std::collections::BTreeSet::new();
    for p in &chosen {
        for e in p.edges() {
            if !m.contains_edge(e.lo(), e.hi()) {
                cheap.insert(e);
            }
        }
    }
    let base: BTreeMap<Pair, Rational> = g
        .edges()
        .iter()
        .map(|e| {
            let w = if m.contains_edge(e.lo(), e.hi()) {
                Rational::from_integer(1.into())
            } else if cheap.contains(e) {
                Rational::new(11.into(), 10.into())
            } else {
                Rational::new(12.into(), 10.into())
            };
            (*e, w)
        })
        .collect();
    let mut rng = seeded_rng(noise_seed);
    for attempt in 1..=NOISE_RETRIES {
        let noisy: BTreeMap<Pair, Rational> = base
            .iter()
            .map(|(e, w)| {
                let k: i64 = rng.gen_range(0..=10_000);
                (*e, w + Rational::new(k.into(), 1_000_000.into()))
            })
            .collect();
        let weights = WeightFunction::new(g.clone(), noisy)?;
        match induce_system(&weights)? {
            Inducement::Ties { .. } => continue,
            Inducement::Unique(system) => {
                for p in &chosen {
                    if system.path_of(p.endpoints()) != p {
                        return Err(Error::ChosenPathMissing(p.endpoints()));
                    }
                }
                return Ok(Certified {
                    weights,
                    system,
                    attempts: attempt,
                });
            }
        }
    }
    Err(Error::UniquenessNotCertified(NOISE_RETRIES))
}

fn pair_of(m: &Matching, (i, j): (usize, usize)) -> Pair {
    if i < m.len() && j < m.len() && i != j {
        Pair::new(m.x(i), m.x(j))
    } else {
        Pair::new(1, 2)
    }
}

/// `K_{h,h}` with `x_i = i`, `y_i = h + i`.
pub fn complete_bipartite(h: usize) -> Graph {
    let mut g = Graph::empty(2 * h);
    for i in 1..=h {
        for j in 1..=h {
            g.add_edge(i, h + j);
        }
    }
    g
}

/// The matching construction on `K_{h,h}` with matching `x_i y_i`.
///
/// `choices` lists one [`Via`] per pair `i < j` of `[h]` in lexicographic order.
pub fn gen_bipartite(h: usize, choices: &[Via], noise_seed: u64) -> Result<Certified, Error> {
    let expected = h * h.saturating_sub(1) / 2;
    if choices.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: choices.len(),
        });
    }
    let g = complete_bipartite(h);
    let m = Matching::new(&g, (1..=h).map(|i| (i, h + i)).collect())?;
    let keyed = pairs(h)
        .zip(choices)
        .map(|(p, v)| ((p.lo() - 1, p.hi() - 1), *v))
        .collect();
    matching_weights(&g, &m, &keyed, noise_seed)
}

/// Uniformly random choices for every admissible pair.
pub fn random_choices(admissible: &[(usize, usize)], seed: u64) -> BTreeMap<(usize, usize), Via> {
    let mut rng = seeded_rng(seed);
    admissible
        .iter()
        .map(|k| (*k, if rng.gen_bool(0.5) { Via::First } else { Via::Second }))
        .collect()
}

/// `𝒥_n`: anticlique `x_i = i`, clique `y_i = n + i`, complete between them.
pub fn gen_join(n: usize) -> Graph {
    join_sized(n, 2 * n)
}

/// Anticlique on `1..=⌊γn⌋`, clique on the remaining vertices, complete between.
pub fn gen_join_gamma(n: usize, gamma: &Rational) -> Result<Graph, Error> {
    if *gamma <= Rational::zero() || *gamma >= Rational::from_integer(1.into()) {
        return Err(Error::InvalidFraction);
    }
    let a = (gamma * Rational::from_integer(n.into()))
        .floor()
        .to_integer()
        .to_usize()
        .expect("below n");
    Ok(join_sized(a, n))
}

fn join_sized(anticlique: usize, n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for p in pairs(n) {
        if p.hi() > anticlique {
            g.add_edge(p.lo(), p.hi());
        }
    }
    g
}

/// Symmetric `n × n` matrix over `[n]` whose rows, off the diagonal, never decrease.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMatrix {
    n: usize,
    /// Row-major with zeros on the diagonal.
    m: Vec<Vec<usize>>,
}

impl MonotoneMatrix {
    /// Rows may carry anything on the diagonal; it is ignored.
    pub fn new(rows: Vec<Vec<Option<usize>>>) -> Result<MonotoneMatrix, Error> {
        let n = rows.len();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix("matrix is not square"));
            }
            for j in (0..n).filter(|&j| j != i) {
                let v = row[j].ok_or(Error::InvalidMatrix("missing off-diagonal entry"))?;
                if v == 0 || v > n {
                    return Err(Error::InvalidMatrix("entry outside 1..=n"));
                }
                m[i][j] = v;
            }
        }
        if (0..n).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
            return Err(Error::InvalidMatrix("matrix is not symmetric"));
        }
        let out = MonotoneMatrix { n, m };
        for i in 0..n {
            let row = out.off_diagonal_row(i + 1);
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::MonotonicityViolation { row: i + 1 });
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_{ij}` for `i ≠ j`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert_ne!(i, j);
        self.m[i - 1][j - 1]
    }

    pub fn off_diagonal_row(&self, i: usize) -> Vec<usize> {
        (1..=self.n).filter(|&j| j != i).map(|j| self.m[i - 1][j - 1]).collect()
    }

    /// Rows with `None` on the diagonal.
    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| (i != j).then_some(self.m[i][j])).collect())
            .collect()
    }
}

/// The system in `𝒥_n` with `P_{x_i x_j} = x_i y_k x_j` for `k = m_{ij}`; all other pairs are edges.
pub fn monotone_system(m: &MonotoneMatrix) -> PathSystem {
    let n = m.n();
    let paths = pairs(2 * n).map(|p| {
        if p.hi() <= n {
            Path::new(vec![p.lo(), n + m.get(p.lo(), p.hi()), p.hi()]).expect("distinct vertices")
        } else {
            Path::edge(p.lo(), p.hi())
        }
    });
    PathSystem::from_paths(2 * n, paths).expect("one path per pair")
}

/// Every monotone matrix of order `n`, filling the upper triangle in lexicographic order.
pub fn enumerate_monotone(n: usize, cap: usize) -> Result<Vec<MonotoneMatrix>, Error> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "monotone matrix order",
            cap: cap as u64,
        });
    }
    let cells: Vec<(usize, usize)> = pairs(n).map(|p| (p.lo() - 1, p.hi() - 1)).collect();
    let mut m = vec![vec![0usize; n]; n];
    let mut out = Vec::new();
    fill(&cells, 0, &mut m, &mut out);
    Ok(out)
}

/// The entry just before `(r, c)` in row `r`, skipping the diagonal.
fn previous_in_row(m: &[Vec<usize>], r: usize, c: usize) -> usize {
    let mut k = c;
    while k > 0 {
        k -= 1;
        if k != r {
            return m[r][k];
        }
    }
    1
}

fn fill(cells: &[(usize, usize)], at: usize, m: &mut Vec<Vec<usize>>, out: &mut Vec<MonotoneMatrix>) {
    let n = m.len();
    if at == cells.len() {
        out.push(MonotoneMatrix { n, m: m.clone() });
        return;
    }
    let (i, j) = cells[at];
    // Row i's predecessor of column j and row j's predecessor of column i are already filled.
    let low = previous_in_row(m, i, j).max(previous_in_row(m, j, i));
    for v in low..=n {
        m[i][j] = v;
        m[j][i] = v;
        fill(cells, at + 1, m, out);
    }
    m[i][j] = 0;
    m[j][i] = 0;
}
