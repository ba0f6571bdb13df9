//! Résumés: one interior vertex per non-edge path, enough to rebuild the system.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::graph::{num_pairs, pairs, Pair, Vertex};
use crate::path::Path;
use crate::system::PathSystem;

/// Default bound on the size of [`all_resumes`].
pub const DEFAULT_RESUME_CAP: u64 = 1_000_000;

/// A partial map from pairs to a vertex outside the pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Resume {
    n: usize,
    entries: BTreeMap<Pair, Vertex>,
}

impl Resume {
    pub fn new(n: usize) -> Resume {
        Resume {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(n: usize, entries: I) -> Result<Resume, Error>
    where
        I: IntoIterator<Item = (Pair, Vertex)>,
    {
        let mut r = Resume::new(n);
        for (pair, z) in entries {
            r.insert(pair, z)?;
        }
        Ok(r)
    }

    pub fn insert(&mut self, pair: Pair, z: Vertex) -> Result<(), Error> {
        for v in [pair.hi(), z] {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if pair.contains(z) {
            return Err(Error::ResumeEndpoint { pair, via: z });
        }
        if self.entries.insert(pair, z).is_some() {
            return Err(Error::DuplicatePair(pair));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, pair: Pair) -> Option<Vertex> {
        self.entries.get(&pair).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, Vertex)> + '_ {
        self.entries.iter().map(|(p, v)| (*p, *v))
    }

    /// True iff this is a résumé of `sys`: defined exactly on non-edge paths, with interior values.
    pub fn is_resume_of(&self, sys: &PathSystem) -> bool {
        self.n == sys.n()
            && sys.iter().all(|(pair, p)| match self.get(pair) {
                None => p.is_edge(),
                Some(z) => p.interior().contains(&z),
            })
    }
}

/// Canonical résumé: the successor of the smaller endpoint along each non-edge path.
pub fn extract_resume(sys: &PathSystem) -> Result<Resume, Error> {
    sys.require_consistent()?;
    let mut r = Resume::new(sys.n());
    for (pair, p) in sys.iter() {
        if !p.is_edge() {
            r.entries.insert(pair, p.vertices()[1]);
        }
    }
    Ok(r)
}

/// Every résumé of `sys`, in lexicographic order of interior choices.
pub fn all_resumes(sys: &PathSystem, cap: u64) -> Result<Vec<Resume>, Error> {
    sys.require_consistent()?;
    let slots: Vec<(Pair, &[Vertex])> = sys
        .iter()
        .filter(|(_, p)| !p.is_edge())
        .map(|(pair, p)| (pair, p.interior()))
        .collect();
    let mut total: u64 = 1;
    for (_, choices) in &slots {
        total = total.saturating_mul(choices.len() as u64);
        if total > cap {
            return Err(Error::CapExceeded { what: "résumés", cap });
        }
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut odometer = vec![0usize; slots.len()];
    loop {
        let mut r = Resume::new(sys.n());
        for ((pair, choices), &k) in slots.iter().zip(&odometer) {
            r.entries.insert(*pair, choices[k]);
        }
        out.push(r);
        let mut i = slots.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < slots[i].1.len() {
                break;
            }
            odometer[i] = 0;
        }
    }
}

/// A recovered system together with the number of concatenation rounds that made progress.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    pub system: PathSystem,
    pub rounds_used: usize,
}

/// Rebuilds a path system from a résumé.
///
/// Pairs outside the domain become edges. Then `n` rounds follow, each setting
/// `P_{u,v} = P_{u,z}·P_{z,v}` for `z = f(u,v)` whenever both halves exist.
pub fn recover_from_resume(f: &Resume) -> Result<PathSystem, Error> {
    recover_with_rounds(f).map(|r| r.system)
}

pub fn recover_with_rounds(f: &Resume) -> Result<Recovery, Error> {
    let n = f.n();
    let mut slots: Vec<Option<Path>> = vec![None; num_pairs(n)];
    for pair in pairs(n) {
        if f.get(pair).is_none() {
            slots[pair.index(n)] = Some(Path::edge(pair.lo(), pair.hi()));
        }
    }
    let mut rounds_used = 0;
    for round in 1..=n {
        let mut progressed = false;
        for (pair, z) in f.iter() {
            let idx = pair.index(n);
            if slots[idx].is_some() {
                continue;
            }
            let left = &slots[Pair::new(pair.lo(), z).index(n)];
            let right = &slots[Pair::new(z, pair.hi()).index(n)];
            if let (Some(l), Some(r)) = (left, right) {
                let joined = l.concat(r).ok_or(Error::NonSimpleConcatenation(pair))?;
                slots[idx] = Some(joined);
                progressed = true;
            }
        }
        if progressed {
            rounds_used = round;
        }
    }
    let paths = slots
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::UnresolvedPair(Pair::from_index(n, i))))
        .collect::<Result<Vec<_>, _>>()?;
    let system = PathSystem::from_slots(n, paths);
    if let Err(Error::Inconsistent(a, b)) = system.require_consistent() {
        return Err(Error::InconsistentResult(a, b));
    }
    Ok(Recovery { system, rounds_used })
}
