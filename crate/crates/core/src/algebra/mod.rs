//! Exact arithmetic: rationals, weighted-graded polynomials and rational matrices.

mod matrix;
mod parse;
mod poly;

pub use matrix::{rank, solve_linear, RatMatrix};
pub use parse::{identifiers, parse_poly, parse_with};
pub use poly::{Exponents, GradedPoly, VarSet};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
