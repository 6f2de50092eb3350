//! Exact rational scalars, dense matrices, linear solving and nonnegative
//! feasibility. Every other module computes over these types; nothing in the
//! crate rounds.

mod matrix;
mod simplex;
mod solve;

pub use matrix::RatMatrix;
pub use simplex::feasible_nonnegative;
pub use solve::{kernel_vector, rank, solve_linear, LinearSystem};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// Parses the `p/q` or `p` text form. `line` and `column` locate the token
/// for error messages.
pub fn parse_rational(token: &str, line: usize, column: usize) -> Result<Rational> {
    let value: Rational = token
        .parse()
        .map_err(|_| parse_error(line, column, format!("invalid rational {token:?}")))?;
    Ok(value)
}

/// Dot product of a dense row with a vector.
pub fn dot(row: &[Rational], x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in row.iter().zip(x) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}
