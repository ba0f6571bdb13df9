use num_traits::{Signed, Zero};

use crate::simplex::{phase_one, Outcome, PhaseOne};
use crate::system::{Certificate, Feasibility, LinearSystem, LpError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
    Infeasible(Certificate),
}

/// How an original variable maps onto non-negative standard-form columns.
enum VarMap {
    /// `x = lower + z[col]`; `bound_row` is the inequality that supplied the bound.
    Shifted {
        col: usize,
        lower: Rational,
        bound_row: usize,
    },
    /// `x = z[pos] - z[neg]`.
    Split { pos: usize, neg: usize },
}

/// `A z = b, z ≥ 0` form of a system: equalities first, then non-bound
/// inequalities with a surplus column each.
struct Primal {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    vars: Vec<VarMap>,
    /// Inequality indices that became general rows, in row order.
    general_ineqs: Vec<usize>,
    num_cols: usize,
}

fn single_positive_var(coeffs: &[Rational]) -> Option<usize> {
    let mut found = None;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if found.is_some() || !c.is_positive() {
            return None;
        }
        found = Some(i);
    }
    found
}

impl Primal {
    fn build(sys: &LinearSystem) -> Primal {
        let n = sys.num_vars();
        let mut bound: Vec<Option<(usize, Rational)>> = vec![None; n];
        let mut general_ineqs = Vec::new();
        for (k, row) in sys.inequalities().iter().enumerate() {
            match single_positive_var(&row.coeffs) {
                Some(i) if bound[i].is_none() => bound[i] = Some((k, &row.rhs / &row.coeffs[i])),
                _ => general_ineqs.push(k),
            }
        }
        let mut vars = Vec::with_capacity(n);
        let mut col = 0;
        for b in bound {
            match b {
                Some((bound_row, lower)) => {
                    vars.push(VarMap::Shifted { col, lower, bound_row });
                    col += 1;
                }
                None => {
                    vars.push(VarMap::Split { pos: col, neg: col + 1 });
                    col += 2;
                }
            }
        }
        let num_cols = col + general_ineqs.len();
        let rows: Vec<(&crate::system::Row, Option<usize>)> = sys
            .equalities()
            .iter()
            .map(|r| (r, None))
            .chain(
                general_ineqs
                    .iter()
                    .enumerate()
                    .map(|(s, &k)| (&sys.inequalities()[k], Some(col + s))),
            )
            .collect();
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for (row, surplus) in rows {
            let mut out = vec![Rational::zero(); num_cols];
            let mut rhs = row.rhs.clone();
            for (c, v) in row.coeffs.iter().zip(&vars) {
                if c.is_zero() {
                    continue;
                }
                match v {
                    VarMap::Shifted { col, lower, .. } => {
                        out[*col] = c.clone();
                        rhs -= c * lower;
                    }
                    VarMap::Split { pos, neg } => {
                        out[*pos] = c.clone();
                        out[*neg] = -c;
                    }
                }
            }
            if let Some(s) = surplus {
                out[s] = -Rational::from_integer(1.into());
            }
            a.push(out);
            b.push(rhs);
        }
        Primal {
            a,
            b,
            vars,
            general_ineqs,
            num_cols,
        }
    }

    fn recover_x(&self, z: &[Rational]) -> Vec<Rational> {
        self.vars
            .iter()
            .map(|v| match v {
                VarMap::Shifted { col, lower, .. } => lower + &z[*col],
                VarMap::Split { pos, neg } => &z[*pos] - &z[*neg],
            })
            .collect()
    }

    /// Turns a phase-one dual ray into multipliers on the original rows.
    fn certificate(&self, sys: &LinearSystem, y: &[Rational]) -> Certificate {
        let n_eq = sys.equalities().len();
        let equality_multipliers = y[..n_eq].to_vec();
        let mut inequality_multipliers = vec![Rational::zero(); sys.inequalities().len()];
        for (s, &k) in self.general_ineqs.iter().enumerate() {
            inequality_multipliers[k] = y[n_eq + s].clone();
        }
        for v in &self.vars {
            if let VarMap::Shifted { col, bound_row, .. } = v {
                // yᵀA_col ≤ 0; the bound row absorbs the remainder of this column.
                let mut dot = Rational::zero();
                for (row, yr) in self.a.iter().zip(y) {
                    if !row[*col].is_zero() {
                        dot += &row[*col] * yr;
                    }
                }
                let lead = sys.inequalities()[*bound_row]
                    .coeffs
                    .iter()
                    .find(|c| !c.is_zero())
                    .expect("bound row has a coefficient");
                inequality_multipliers[*bound_row] = -dot / lead;
            }
        }
        Certificate {
            equality_multipliers,
            inequality_multipliers,
        }
    }
}

/// Farkas alternative: find `λ ≥ 0, β` with `Σλa + Σβa = 0`, `Σλb + Σβb = 1`.
fn solve_alternative(sys: &LinearSystem) -> Feasibility {
    let n = sys.num_vars();
    let n_eq = sys.equalities().len();
    let n_in = sys.inequalities().len();
    // Columns: λ for each inequality, then β⁺/β⁻ per equality.
    let num_cols = n_in + 2 * n_eq;
    let mut a = vec![vec![Rational::zero(); num_cols]; n + 1];
    for (k, row) in sys.inequalities().iter().enumerate() {
        for (i, c) in row.coeffs.iter().enumerate() {
            if !c.is_zero() {
                a[i][k] = c.clone();
            }
        }
        a[n][k] = row.rhs.clone();
    }
    for (k, row) in sys.equalities().iter().enumerate() {
        let (p, q) = (n_in + 2 * k, n_in + 2 * k + 1);
        for (i, c) in row.coeffs.iter().enumerate() {
            if !c.is_zero() {
                a[i][p] = c.clone();
                a[i][q] = -c;
            }
        }
        a[n][p] = row.rhs.clone();
        a[n][q] = -&row.rhs;
    }
    let mut b = vec![Rational::zero(); n + 1];
    b[n] = Rational::from_integer(1.into());
    match phase_one(&a, &b, num_cols) {
        PhaseOne::Feasible(t) => {
            let z = t.solution();
            Feasibility::Infeasible(Certificate {
                equality_multipliers: (0..n_eq).map(|k| &z[n_in + 2 * k] - &z[n_in + 2 * k + 1]).collect(),
                inequality_multipliers: z[..n_in].to_vec(),
            })
        }
        PhaseOne::Infeasible(y) => {
            // yᵀ(a; b) ≤ 0 on λ columns, = 0 on β columns, τ = y_n > 0.
            let tau = &y[n];
            Feasibility::Feasible(y[..n].iter().map(|v| -(v / tau)).collect())
        }
    }
}

fn solve_primal(sys: &LinearSystem) -> Feasibility {
    let p = Primal::build(sys);
    match phase_one(&p.a, &p.b, p.num_cols) {
        PhaseOne::Feasible(t) => Feasibility::Feasible(p.recover_x(&t.solution())),
        PhaseOne::Infeasible(y) => Feasibility::Infeasible(p.certificate(sys, &y)),
    }
}

fn primal_rows(sys: &LinearSystem) -> usize {
    let mut seen = vec![false; sys.num_vars()];
    let mut rows = sys.equalities().len();
    for row in sys.inequalities() {
        match single_positive_var(&row.coeffs) {
            Some(i) if !seen[i] => seen[i] = true,
            _ => rows += 1,
        }
    }
    rows
}

/// Decides feasibility exactly. The answer is re-checked before it is returned.
pub fn solve_feasibility(sys: &LinearSystem) -> Feasibility {
    let result = if primal_rows(sys) <= sys.num_vars() + 1 {
        solve_primal(sys)
    } else {
        solve_alternative(sys)
    };
    match &result {
        Feasibility::Feasible(x) => assert!(sys.is_satisfied_by(x), "simplex returned a non-solution"),
        Feasibility::Infeasible(c) => assert!(sys.certifies_infeasibility(c), "simplex returned a bad certificate"),
    }
    result
}

/// Maximizes the system's objective exactly.
pub fn maximize(sys: &LinearSystem) -> Result<Optimum, LpError> {
    let obj = sys.objective().ok_or(LpError::MissingObjective)?;
    let p = Primal::build(sys);
    let mut t = match phase_one(&p.a, &p.b, p.num_cols) {
        PhaseOne::Feasible(t) => t,
        PhaseOne::Infeasible(y) => {
            let cert = p.certificate(sys, &y);
            assert!(sys.certifies_infeasibility(&cert), "simplex returned a bad certificate");
            return Ok(Optimum::Infeasible(cert));
        }
    };
    let mut c = vec![Rational::zero(); p.num_cols];
    for (ci, v) in obj.iter().zip(&p.vars) {
        match v {
            VarMap::Shifted { col, .. } => c[*col] = ci.clone(),
            VarMap::Split { pos, neg } => {
                c[*pos] = ci.clone();
                c[*neg] = -ci;
            }
        }
    }
    match t.maximize(&c) {
        Outcome::Unbounded => Ok(Optimum::Unbounded),
        Outcome::Optimal => {
            let x = p.recover_x(&t.solution());
            assert!(sys.is_satisfied_by(&x), "simplex returned a non-solution");
            let value = obj.iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
            Ok(Optimum::Optimal { value, x })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    #[test]
    fn bound_rows_are_absorbed_into_shifts() {
        let mut sys = LinearSystem::new(2);
        sys.add_inequality(vec![int(2), int(0)], int(3)).unwrap();
        sys.add_inequality(vec![int(1), int(1)], int(5)).unwrap();
        let p = Primal::build(&sys);
        assert_eq!(p.general_ineqs, vec![1]);
        assert!(matches!(&p.vars[0], VarMap::Shifted { lower, .. } if *lower == rat(3, 2)));
        assert_eq!(primal_rows(&sys), 1);
    }

    #[test]
    fn both_routes_agree_on_a_small_system() {
        let mut sys = LinearSystem::new(2);
        sys.add_equality(vec![int(1), int(1)], int(2)).unwrap();
        sys.add_inequality(vec![int(1), int(-1)], int(1)).unwrap();
        assert!(solve_primal(&sys).is_feasible());
        assert!(solve_alternative(&sys).is_feasible());
        sys.add_inequality(vec![int(-1), int(0)], int(0)).unwrap();
        sys.add_inequality(vec![int(0), int(-1)], int(0)).unwrap();
        sys.add_inequality(vec![int(-1), int(1)], int(3)).unwrap();
        assert!(!solve_primal(&sys).is_feasible());
        assert!(!solve_alternative(&sys).is_feasible());
    }
}
