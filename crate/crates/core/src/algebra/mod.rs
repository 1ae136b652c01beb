//! Exact rational scalars, vectors, multivariate polynomials and dense
//! linear algebra over Q.

pub mod linalg;
mod poly;
mod vector;

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use poly::{divides_linear, poly_quotient_by_linear, LinearForm, Monomial, MultiPoly};
pub use vector::{primitive, RationalVec};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. Whitespace around the value is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed =
        Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(parsed)
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn abs_cmp(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}

pub(crate) fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
