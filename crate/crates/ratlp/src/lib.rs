//! Exact rational linear programming.
//!
//! Every decision is made over arbitrary-precision rationals. A feasibility
//! query returns either a witness that satisfies each constraint exactly or a
//! Farkas certificate: multipliers `λ ≥ 0` on the inequalities and free
//! multipliers `β` on the equalities such that the combined left-hand side
//! vanishes while the combined right-hand side is positive. Either answer can
//! be re-checked without trusting the solver.
//!
//! The engine is a dense two-phase tableau simplex with Bland's rule. For
//! feasibility it solves whichever of the primal system or its Farkas
//! alternative has fewer rows; both routes produce both kinds of answers.

mod simplex;
mod solve;
mod system;

pub use solve::{maximize, solve_feasibility, Optimum};
pub use system::{Certificate, Feasibility, LinearSystem, LpError};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `num / den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `v` as a [`Rational`].
pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Checks a Farkas certificate against `sys` using exact arithmetic only.
///
/// Accepts iff every inequality multiplier is non-negative, the weighted sum of
/// constraint rows is the zero vector and the weighted sum of right-hand sides
/// is strictly positive.
pub fn verify_certificate(sys: &LinearSystem, cert: &Certificate) -> bool {
    sys.certifies_infeasibility(cert)
}
