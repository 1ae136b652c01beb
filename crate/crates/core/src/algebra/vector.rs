use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// A point or vector of Q^n. Also used as a linear functional through the
/// standard pairing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVec(Vec<Rational>);

impl RationalVec {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        RationalVec(vec![Rational::zero(); n])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RationalVec(
            entries
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .collect(),
        )
    }

    /// Parses a comma separated list of rationals, e.g. `"3,5/2,-1"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(RationalVec)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|e| e.is_integer())
    }

    pub fn dot(&self, other: &RationalVec) -> Rational {
        assert_eq!(
            self.dim(),
            other.dim(),
            "pairing of vectors of different length"
        );
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RationalVec) -> RationalVec {
        assert_eq!(self.dim(), other.dim());
        RationalVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVec) -> RationalVec {
        assert_eq!(self.dim(), other.dim());
        RationalVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> RationalVec {
        RationalVec(self.0.iter().map(|a| a * c).collect())
    }

    /// True if `other` is a nonzero multiple of `self` (either sign).
    pub fn is_parallel(&self, other: &RationalVec) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| &self.0[i] * &other.0[j] == &self.0[j] * &other.0[i]))
    }

    /// Integer entries of an integral vector.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|e| e.is_integer().then(|| e.to_integer()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl Index<usize> for RationalVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Neg for &RationalVec {
    type Output = RationalVec;
    fn neg(self) -> RationalVec {
        RationalVec(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<Rational>> for RationalVec {
    fn from(v: Vec<Rational>) -> Self {
        RationalVec(v)
    }
}

impl fmt::Display for RationalVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for RationalVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(RationalVec)
            .map_err(D::Error::custom)
    }
}

/// The positive multiple of `v` whose entries are coprime integers.
pub fn primitive(v: &RationalVec) -> Result<RationalVec> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|e| (e * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    debug_assert!(g.is_positive());
    Ok(RationalVec(
        ints.into_iter()
            .map(|e| Rational::from_integer(e / &g))
            .collect(),
    ))
}
