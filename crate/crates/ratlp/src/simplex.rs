//! Dense tableau simplex for `A z = b, z ≥ 0` with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::Rational;

pub(crate) enum Outcome {
    Optimal,
    Unbounded,
}

pub(crate) enum PhaseOne {
    Feasible(Tableau),
    /// Dual ray `y` with `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible(Vec<Rational>),
}

pub(crate) struct Tableau {
    /// `m` rows of `num_cols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry is minus the current (minimization) objective.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    num_struct: usize,
}

impl Tableau {
    fn num_cols(&self) -> usize {
        self.num_struct + self.rows.len()
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.num_struct
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let width = self.num_cols() + 1;
        let inv = self.rows[pr][pc].recip();
        for v in self.rows[pr].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let nz: Vec<usize> = (0..width).filter(|&j| !self.rows[pr][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[pr]);
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for &j in &nz {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        if !self.cost[pc].is_zero() {
            let factor = self.cost[pc].clone();
            for &j in &nz {
                self.cost[j] -= &factor * &pivot_row[j];
            }
        }
        self.rows[pr] = pivot_row;
        self.basis[pr] = pc;
    }

    /// Minimizes from the current basis. Artificial columns never re-enter.
    fn run(&mut self) -> Outcome {
        let rhs = self.num_cols();
        loop {
            // Bland: lowest-index improving column, lowest-index leaving basic variable on ties.
            let entering = (0..self.num_struct).find(|&j| self.cost[j].is_negative());
            let Some(pc) = entering else {
                return Outcome::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[pc].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[pc];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((pr, _)) => self.pivot(pr, pc),
                None => return Outcome::Unbounded,
            }
        }
    }

    /// Current values of the structural variables.
    pub(crate) fn solution(&self) -> Vec<Rational> {
        let rhs = self.num_cols();
        let mut z = vec![Rational::zero(); self.num_struct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_struct {
                z[b] = self.rows[r][rhs].clone();
            }
        }
        z
    }

    /// Maximizes `cᵀz` starting from the feasible basis left by phase one.
    pub(crate) fn maximize(&mut self, c: &[Rational]) -> Outcome {
        assert_eq!(c.len(), self.num_struct);
        // Drive zero-level artificials out of the basis where a structural pivot exists;
        // rows with no such entry are redundant and stay inert.
        for r in 0..self.rows.len() {
            if self.is_artificial(self.basis[r]) {
                if let Some(j) = (0..self.num_struct).find(|&j| !self.rows[r][j].is_zero()) {
                    self.pivot(r, j);
                }
            }
        }
        let width = self.num_cols() + 1;
        let mut cost = vec![Rational::zero(); width];
        for (j, cj) in c.iter().enumerate() {
            cost[j] = -cj;
        }
        for (r, &b) in self.basis.iter().enumerate() {
            if b >= self.num_struct || c[b].is_zero() {
                continue;
            }
            let cb = &c[b];
            for (j, v) in self.rows[r].iter().enumerate() {
                if !v.is_zero() {
                    cost[j] += cb * v;
                }
            }
        }
        self.cost = cost;
        self.run()
    }
}

/// Phase one on `A z = b, z ≥ 0`, one artificial per row.
pub(crate) fn phase_one(a: &[Vec<Rational>], b: &[Rational], num_struct: usize) -> PhaseOne {
    let m = a.len();
    let width = num_struct + m + 1;
    let mut rows = Vec::with_capacity(m);
    let mut flipped = Vec::with_capacity(m);
    for (r, (arow, br)) in a.iter().zip(b).enumerate() {
        debug_assert_eq!(arow.len(), num_struct);
        let flip = br.is_negative();
        let mut row = Vec::with_capacity(width);
        for v in arow {
            row.push(if flip { -v } else { v.clone() });
        }
        row.extend((0..m).map(|k| if k == r { Rational::one() } else { Rational::zero() }));
        row.push(if flip { -br } else { br.clone() });
        rows.push(row);
        flipped.push(flip);
    }
    let mut cost = vec![Rational::zero(); width];
    for row in &rows {
        for j in (0..num_struct).chain(std::iter::once(width - 1)) {
            if !row[j].is_zero() {
                cost[j] -= &row[j];
            }
        }
    }
    let mut t = Tableau {
        rows,
        cost,
        basis: (num_struct..num_struct + m).collect(),
        num_struct,
    };
    match t.run() {
        Outcome::Optimal => {}
        Outcome::Unbounded => unreachable!("phase one objective is bounded below by zero"),
    }
    let value = -&t.cost[width - 1];
    if value.is_positive() {
        let y = (0..m)
            .map(|r| {
                let yr = Rational::one() - &t.cost[num_struct + r];
                if flipped[r] {
                    -yr
                } else {
                    yr
                }
            })
            .collect();
        PhaseOne::Infeasible(y)
    } else {
        PhaseOne::Feasible(t)
    }
}
