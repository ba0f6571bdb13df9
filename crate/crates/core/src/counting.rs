//! Exact counts: diameter-2 systems, consistent systems, boxed and symmetric
//! plane partitions, and the signature separation experiment.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::graph::{pairs, Graph, Pair, Vertex};
use crate::metrize::{is_strictly_metric, resume_signature, DeltaVector};
use crate::path::{path_intersection, Intersection, Path};
use crate::resume::{all_resumes, Resume, DEFAULT_RESUME_CAP};
use crate::system::PathSystem;
use crate::Rational;

/// Largest `n` accepted by [`enumerate_consistent`] by default.
pub const DEFAULT_CONSISTENT_CAP: usize = 5;

/// `∏_{uv ∉ E} |N(u) ∩ N(v)|`.
pub fn count_d2(g: &Graph) -> BigUint {
    g.non_edges()
        .map(|p| BigUint::from(g.common_neighbors(p.lo(), p.hi()).len()))
        .product()
}

/// Every simple `u`–`v` path in `K_n`, shortest first, then lexicographically.
fn simple_paths(n: usize, u: Vertex, v: Vertex) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![u];
    let mut used = vec![false; n + 1];
    used[u] = true;
    extend(n, v, &mut stack, &mut used, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices().cmp(b.vertices())));
    out
}

fn extend(n: usize, target: Vertex, stack: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Path>) {
    for w in 1..=n {
        if used[w] {
            continue;
        }
        stack.push(w);
        if w == target {
            out.push(Path::new(stack.clone()).expect("simple by construction"));
        } else {
            used[w] = true;
            extend(n, target, stack, used, out);
            used[w] = false;
        }
        stack.pop();
    }
}

/// True if `p` can sit beside the already chosen paths: every pair of its
/// vertices that is already assigned must be assigned its sub-path, it must
/// be the sub-path of any chosen path through both its ends, and no
/// intersection may fail to be a path.
fn compatible(n: usize, chosen: &[Option<Path>], p: &Path) -> bool {
    let vs = p.vertices();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if let Some(q) = &chosen[Pair::new(a, b).index(n)] {
                if p.between(a, b).as_ref() != Some(q) {
                    return false;
                }
            }
        }
    }
    let (u, v) = (p.endpoints().lo(), p.endpoints().hi());
    for q in chosen.iter().flatten() {
        if q.contains(u) && q.contains(v) && q.between(u, v).as_ref() != Some(p) {
            return false;
        }
        if path_intersection(p, q) == Intersection::Violation {
            return false;
        }
    }
    true
}

/// All consistent path systems on `K_n` by pruned backtracking.
pub fn enumerate_consistent(n: usize, cap: usize) -> Result<Vec<PathSystem>, Error> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertices for consistent enumeration",
            cap: cap as u64,
        });
    }
    let candidates: Vec<Vec<Path>> = pairs(n).map(|p| simple_paths(n, p.lo(), p.hi())).collect();
    if candidates.is_empty() {
        return Ok(vec![PathSystem::from_paths(n, [])?]);
    }
    // Split on the first pair's choice; subtrees are independent.
    let mut results: Vec<Vec<PathSystem>> = candidates[0]
        .par_iter()
        .map(|first| {
            let mut chosen: Vec<Option<Path>> = vec![None; candidates.len()];
            chosen[0] = Some(first.clone());
            let mut out = Vec::new();
            backtrack(n, &candidates, 1, &mut chosen, &mut out);
            out
        })
        .collect();
    let mut all: Vec<PathSystem> = results.drain(..).flatten().collect();
    all.sort();
    Ok(all)
}

fn backtrack(n: usize, candidates: &[Vec<Path>], at: usize, chosen: &mut Vec<Option<Path>>, out: &mut Vec<PathSystem>) {
    if at == candidates.len() {
        let sys = PathSystem::from_paths(n, chosen.iter().map(|p| p.clone().expect("all assigned")))
            .expect("one path per pair");
        if sys.is_consistent() {
            out.push(sys);
        }
        return;
    }
    for p in &candidates[at] {
        if compatible(n, chosen, p) {
            chosen[at] = Some(p.clone());
            backtrack(n, candidates, at + 1, chosen, out);
            chosen[at] = None;
        }
    }
}

/// An `r × s` array of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePartition {
    entries: Vec<Vec<u64>>,
}

impl PlanePartition {
    /// Requires a rectangular array with rows and columns non-increasing.
    pub fn new(entries: Vec<Vec<u64>>) -> Option<PlanePartition> {
        let s = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|row| row.len() != s) {
            return None;
        }
        let rows_ok = entries.iter().all(|row| row.windows(2).all(|w| w[0] >= w[1]));
        let cols_ok = entries.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a >= b));
        (rows_ok && cols_ok).then_some(PlanePartition { entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn is_boxed(&self, t: u64) -> bool {
        self.entries.iter().flatten().all(|&x| x <= t)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows() == self.cols() && (0..self.rows()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }
}

fn ratio_to_integer(num: BigUint, den: BigUint) -> BigUint {
    let q = Rational::new(BigInt::from(num), BigInt::from(den));
    assert!(q.is_integer(), "product formula must be an integer");
    q.to_integer().to_biguint().expect("non-negative")
}

/// `N(r,s,t) = ∏_{i≤r} ∏_{j≤s} (i+j+t−1)/(i+j−1)`, as one fraction reduced once.
pub fn boxed_count(r: u64, s: u64, t: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=r {
        for j in 1..=s {
            num *= i + j + t - 1;
            den *= i + j - 1;
        }
    }
    ratio_to_integer(num, den)
}

/// `S(r,t) = ∏_{i≤r} (2i+t−1)/(2i−1) · ∏_{i<j≤r} (i+j+t−1)/(i+j−1)`.
pub fn sym_count(r: u64, t: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=r {
        num *= 2 * i + t - 1;
        den *= 2 * i - 1;
        for j in i + 1..=r {
            num *= i + j + t - 1;
            den *= i + j - 1;
        }
    }
    ratio_to_integer(num, den)
}

/// Non-increasing sequences of length `len` over `0..=t`.
fn non_increasing_rows(len: usize, t: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for row in out {
            let top = row.last().copied().unwrap_or(t);
            for x in 0..=top {
                let mut r = row.clone();
                r.push(x);
                next.push(r);
            }
        }
        out = next;
    }
    out
}

/// Counts `r × s` matrices over `0..=t` with non-increasing rows and columns, row by row.
pub fn boxed_brute(r: usize, s: usize, t: u64) -> BigUint {
    let rows = non_increasing_rows(s, t);
    let mut ways: Vec<BigUint> = vec![BigUint::one(); rows.len()];
    for _ in 1..r {
        ways = rows
            .iter()
            .map(|below| {
                rows.iter()
                    .zip(&ways)
                    .filter(|(above, _)| above.iter().zip(below).all(|(a, b)| a >= b))
                    .map(|(_, w)| w.clone())
                    .sum()
            })
            .collect();
    }
    if r == 0 {
        return BigUint::one();
    }
    ways.into_iter().sum()
}

/// Counts symmetric `r × r` matrices over `0..=t` with non-increasing rows, by direct enumeration.
pub fn sym_brute(r: usize, t: u64) -> BigUint {
    let cells: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let mut m = vec![vec![0u64; r]; r];
    let mut count = BigUint::zero();
    sym_fill(&cells, 0, t, &mut m, &mut count);
    count
}

fn sym_fill(cells: &[(usize, usize)], at: usize, t: u64, m: &mut Vec<Vec<u64>>, count: &mut BigUint) {
    if at == cells.len() {
        let p = PlanePartition::new(m.clone()).expect("bounds keep rows and columns monotone");
        debug_assert!(p.is_symmetric() && p.is_boxed(t));
        *count += 1u32;
        return;
    }
    let (i, j) = cells[at];
    let mut top = t;
    if j > 0 {
        top = top.min(m[i][j - 1]);
    }
    if i > 0 {
        top = top.min(m[i - 1][j]);
    }
    for v in 0..=top {
        m[i][j] = v;
        m[j][i] = v;
        sym_fill(cells, at + 1, t, m, count);
    }
}

/// `N(r,s,t) = ∏_{k≤t} C(r+s+k−1, s) / C(s+k−1, s)`.
pub fn boxed_count_binomial(r: u64, s: u64, t: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 1..=t {
        num *= binomial(r + s + k - 1, s);
        den *= binomial(s + k - 1, s);
    }
    ratio_to_integer(num, den)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Digits kept by the fixed-point logarithm.
pub const LOG_DIGITS: u32 = 20;
const GUARD_DIGITS: u32 = 15;

fn scale() -> BigInt {
    BigInt::from(10u32).pow(LOG_DIGITS + GUARD_DIGITS)
}

/// `2 atanh(1/q)` in fixed point.
fn two_atanh_inv(q: u64) -> BigInt {
    let one = scale();
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut power = &one / &q;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power /= &q2;
        k += 1;
    }
    sum * 2
}

fn ln2_fixed() -> BigInt {
    two_atanh_inv(3)
}

fn ln3_fixed() -> BigInt {
    // ln 3 = ln 2 + ln(3/2) and ln(3/2) = 2 atanh(1/5).
    ln2_fixed() + two_atanh_inv(5)
}

/// `ln x` in fixed point for a positive integer `x`.
fn ln_fixed(x: &BigUint) -> BigInt {
    assert!(!x.is_zero());
    let bits = x.bits();
    let keep = 128u64;
    let (mantissa, shift) = if bits > keep {
        (x >> (bits - keep), bits - keep)
    } else {
        (x.clone(), 0)
    };
    // mantissa = m · 2^e with m ∈ [1, 2).
    let e = mantissa.bits() - 1;
    let one = scale();
    let m_fixed = BigInt::from(mantissa) * &one / (BigInt::one() << e);
    // ln m = 2 atanh(y), y = (m − 1)/(m + 1) ≤ 1/3.
    let y = (&m_fixed - &one) * &one / (&m_fixed + &one);
    let y2 = &y * &y / &one;
    let mut power = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = power * &y2 / &one;
        k += 1;
    }
    sum * 2 + ln2_fixed() * BigInt::from(e + shift)
}

fn fixed_to_rational(v: BigInt) -> Rational {
    let drop = BigInt::from(10u32).pow(GUARD_DIGITS);
    Rational::new(v / drop, BigInt::from(10u32).pow(LOG_DIGITS))
}

/// `ln N(n,n,n) / n²` to [`LOG_DIGITS`] decimal digits.
pub fn asymptotic_check(n: u64) -> Rational {
    let count = boxed_count_binomial(n, n, n);
    let n2 = BigInt::from(n * n);
    fixed_to_rational(ln_fixed(&count) / n2)
}

/// `(9/2) ln 3 − 6 ln 2`, the limit of [`asymptotic_check`].
pub fn asymptotic_limit() -> Rational {
    fixed_to_rational(ln3_fixed() * 9 / 2 - ln2_fixed() * 6)
}

/// Natural logarithm of a positive integer to [`LOG_DIGITS`] digits.
pub fn ln_integer(x: &BigUint) -> Rational {
    fixed_to_rational(ln_fixed(x))
}

/// Outcome of comparing signatures of résumés and of all other partial functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub n: usize,
    pub consistent_systems: usize,
    pub strictly_metric_systems: usize,
    pub partial_functions: usize,
    pub resumes_checked: usize,
    /// `(system, résumé, non-résumé)` triples with equal signatures.
    pub collisions: usize,
}

/// Every partial function sending a pair to nothing or to another vertex of `[n]`.
pub fn all_partial_functions(n: usize) -> Vec<Resume> {
    let slots: Vec<(Pair, Vec<Option<Vertex>>)> = pairs(n)
        .map(|p| {
            let mut opts = vec![None];
            opts.extend((1..=n).filter(|&z| !p.contains(z)).map(Some));
            (p, opts)
        })
        .collect();
    let mut out = vec![Resume::new(n)];
    for (pair, opts) in &slots {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for f in &out {
            for o in opts {
                let mut g = f.clone();
                if let Some(z) = o {
                    g.insert(*pair, *z).expect("valid value");
                }
                next.push(g);
            }
        }
        out = next;
    }
    out
}

/// For every strictly metric system on `[n]`, checks that no résumé shares a
/// signature with a partial function that is not one of its résumés.
pub fn signature_separation_experiment(n: usize) -> Result<SeparationReport, Error> {
    let systems = enumerate_consistent(n, DEFAULT_CONSISTENT_CAP)?;
    let functions = all_partial_functions(n);
    let signatures: Vec<DeltaVector> = functions.iter().map(resume_signature).collect();
    let mut by_signature: HashMap<&DeltaVector, Vec<usize>> = HashMap::new();
    for (i, s) in signatures.iter().enumerate() {
        by_signature.entry(s).or_default().push(i);
    }
    let index: BTreeMap<&Resume, usize> = functions.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let per_system: Vec<Option<(usize, usize)>> = systems
        .par_iter()
        .map(|sys| {
            if !is_strictly_metric(sys).expect("consistent").is_yes() {
                return None;
            }
            let resumes = all_resumes(sys, DEFAULT_RESUME_CAP).expect("small system");
            let own: BTreeSet<usize> = resumes.iter().map(|f| index[f]).collect();
            let mut collisions = 0;
            for &i in &own {
                for &j in &by_signature[&signatures[i]] {
                    if !own.contains(&j) {
                        collisions += 1;
                    }
                }
            }
            Some((own.len(), collisions))
        })
        .collect();
    let strict: Vec<(usize, usize)> = per_system.into_iter().flatten().collect();
    Ok(SeparationReport {
        n,
        consistent_systems: systems.len(),
        strictly_metric_systems: strict.len(),
        partial_functions: functions.len(),
        resumes_checked: strict.iter().map(|x| x.0).sum(),
        collisions: strict.iter().map(|x| x.1).sum(),
    })
}

/// Monotone résumés counted by enumeration, as a plain number.
pub fn count_monotone(n: usize, cap: usize) -> Result<u64, Error> {
    Ok(crate::generators::enumerate_monotone(n, cap)?.len() as u64)
}

/// `f64` view of a rational, for printing only.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
