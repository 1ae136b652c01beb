use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::Polytope;
use crate::algebra::RationalVec;
use crate::error::{Error, Result};

/// Integer box `lo_i <= x_i <= hi_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl LatticeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::InvalidInput(
                "box lower bound exceeds upper bound".into(),
            ));
        }
        Ok(LatticeBox { lo, hi })
    }

    /// Smallest integer box containing `p`.
    pub fn tight(p: &Polytope) -> Result<Self> {
        let n = p.dim();
        let to_i64 = |b: BigInt| {
            b.to_i64()
                .ok_or_else(|| Error::InvalidInput("coordinates exceed i64".into()))
        };
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for i in 0..n {
            let coords = p.vertices().iter().map(|v| &v[i]);
            let min = coords.clone().min().expect("polytope has vertices");
            let max = coords.max().expect("polytope has vertices");
            lo.push(to_i64(min.floor().to_integer())?);
            hi.push(to_i64(max.ceil().to_integer())?);
        }
        LatticeBox::new(lo, hi)
    }

    /// Parses `"lo..hi,lo..hi,..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad box {s:?}, expected lo..hi,lo..hi,..."));
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split(',') {
            let (l, h) = part.trim().split_once("..").ok_or_else(bad)?;
            lo.push(l.trim().parse().map_err(|_| bad())?);
            hi.push(h.trim().parse().map_err(|_| bad())?);
        }
        LatticeBox::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Grows the box by `margin` in every direction.
    pub fn expand(&self, margin: i64) -> LatticeBox {
        LatticeBox {
            lo: self.lo.iter().map(|l| l - margin).collect(),
            hi: self.hi.iter().map(|h| h + margin).collect(),
        }
    }

    pub fn contains_point(&self, x: &RationalVec) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (l, h))| c >= &crate::algebra::rat(*l) && c <= &crate::algebra::rat(*h))
    }

    pub fn contains_polytope(&self, p: &Polytope) -> bool {
        self.dim() == p.dim() && p.vertices().iter().all(|v| self.contains_point(v))
    }

    pub fn len(&self) -> u128 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as u128)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Visits every lattice point in odometer order (last coordinate fastest).
    pub fn for_each_point(&self, mut f: impl FnMut(&[i64])) {
        let n = self.dim();
        if n == 0 {
            return;
        }
        let mut x = self.lo.clone();
        loop {
            f(&x);
            let mut i = n;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if x[i] < self.hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = self.lo[i];
            }
        }
    }
}
