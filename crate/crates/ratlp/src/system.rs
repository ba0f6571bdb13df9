use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("row has {got} coefficients, system has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("maximize called on a system without an objective")]
    MissingObjective,
}

/// One linear row `⟨coeffs, x⟩ (= or ≥) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Row {
    fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (a, v) in self.coeffs.iter().zip(x) {
            if !a.is_zero() {
                acc += a * v;
            }
        }
        acc
    }
}

/// A system of linear equalities and `≥` inequalities over free rational variables.
///
/// Strict inequalities are not representable; callers scale them to `≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    num_vars: usize,
    equalities: Vec<Row>,
    inequalities: Vec<Row>,
    objective: Option<Vec<Rational>>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            objective: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn equalities(&self) -> &[Row] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Row] {
        &self.inequalities
    }

    pub fn objective(&self) -> Option<&[Rational]> {
        self.objective.as_deref()
    }

    fn check_len(&self, len: usize) -> Result<(), LpError> {
        if len != self.num_vars {
            return Err(LpError::DimensionMismatch {
                expected: self.num_vars,
                got: len,
            });
        }
        Ok(())
    }

    fn densify(&self, terms: &[(usize, Rational)]) -> Result<Vec<Rational>, LpError> {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (i, c) in terms {
            if *i >= self.num_vars {
                return Err(LpError::VariableOutOfRange {
                    index: *i,
                    num_vars: self.num_vars,
                });
            }
            coeffs[*i] += c;
        }
        Ok(coeffs)
    }

    /// Adds `⟨coeffs, x⟩ = rhs` and returns its index among the equalities.
    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<usize, LpError> {
        self.check_len(coeffs.len())?;
        self.equalities.push(Row { coeffs, rhs });
        Ok(self.equalities.len() - 1)
    }

    /// Adds `⟨coeffs, x⟩ ≥ rhs` and returns its index among the inequalities.
    pub fn add_inequality(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<usize, LpError> {
        self.check_len(coeffs.len())?;
        self.inequalities.push(Row { coeffs, rhs });
        Ok(self.inequalities.len() - 1)
    }

    /// Sparse form of [`add_equality`](Self::add_equality); repeated indices are summed.
    pub fn add_equality_terms(&mut self, terms: &[(usize, Rational)], rhs: Rational) -> Result<usize, LpError> {
        let coeffs = self.densify(terms)?;
        self.add_equality(coeffs, rhs)
    }

    /// Sparse form of [`add_inequality`](Self::add_inequality); repeated indices are summed.
    pub fn add_inequality_terms(&mut self, terms: &[(usize, Rational)], rhs: Rational) -> Result<usize, LpError> {
        let coeffs = self.densify(terms)?;
        self.add_inequality(coeffs, rhs)
    }

    pub fn set_objective(&mut self, coeffs: Vec<Rational>) -> Result<(), LpError> {
        self.check_len(coeffs.len())?;
        self.objective = Some(coeffs);
        Ok(())
    }

    /// Exact membership test for a candidate point.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && self.equalities.iter().all(|r| r.eval(x) == r.rhs)
            && self.inequalities.iter().all(|r| r.eval(x) >= r.rhs)
    }

    pub(crate) fn certifies_infeasibility(&self, cert: &Certificate) -> bool {
        if cert.equality_multipliers.len() != self.equalities.len()
            || cert.inequality_multipliers.len() != self.inequalities.len()
        {
            return false;
        }
        if cert.inequality_multipliers.iter().any(|l| l.is_negative()) {
            return false;
        }
        let mut lhs = vec![Rational::zero(); self.num_vars];
        let mut rhs = Rational::zero();
        let pairs = self
            .equalities
            .iter()
            .zip(&cert.equality_multipliers)
            .chain(self.inequalities.iter().zip(&cert.inequality_multipliers));
        for (row, m) in pairs {
            if m.is_zero() {
                continue;
            }
            for (acc, a) in lhs.iter_mut().zip(&row.coeffs) {
                if !a.is_zero() {
                    *acc += a * m;
                }
            }
            rhs += &row.rhs * m;
        }
        lhs.iter().all(Zero::is_zero) && rhs.is_positive()
    }
}

/// Text dump: one row per line, `eq|ge: c0 c1 ... | rhs`, rationals as `num/den`.
impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "vars {} eq {} ge {}",
            self.num_vars,
            self.equalities.len(),
            self.inequalities.len()
        )?;
        let rows = self
            .equalities
            .iter()
            .map(|r| ("eq", r))
            .chain(self.inequalities.iter().map(|r| ("ge", r)));
        for (kind, row) in rows {
            write!(f, "{kind}:")?;
            for c in &row.coeffs {
                write!(f, " {c}")?;
            }
            writeln!(f, " | {}", row.rhs)?;
        }
        if let Some(obj) = &self.objective {
            write!(f, "max:")?;
            for c in obj {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Farkas multipliers proving a [`LinearSystem`] infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `β`, one per equality, any sign.
    pub equality_multipliers: Vec<Rational>,
    /// `λ ≥ 0`, one per inequality.
    pub inequality_multipliers: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Certificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}
