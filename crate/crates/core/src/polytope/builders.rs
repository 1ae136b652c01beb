use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::{HalfSpace, Polytope};
use crate::algebra::{format_rational, parse_rational, Rational, RationalVec};
use crate::error::{Error, Result};

impl Polytope {
    /// `scale` times the standard simplex `conv{0, e_1, ..., e_n}`.
    pub fn simplex(n: usize, scale: &Rational) -> Result<Polytope> {
        check_builder(n, scale)?;
        let mut hs: Vec<HalfSpace> = (0..n)
            .map(|i| unit_halfspace(n, i, 1, Rational::zero()))
            .collect();
        hs.push(HalfSpace::new(
            RationalVec::from_i64(&vec![-1; n]),
            -scale.clone(),
        )?);
        Polytope::from_halfspaces(n, hs)
    }

    /// The cube `[0, scale]^n`.
    pub fn cube(n: usize, scale: &Rational) -> Result<Polytope> {
        check_builder(n, scale)?;
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            hs.push(unit_halfspace(n, i, 1, Rational::zero()));
            hs.push(unit_halfspace(n, i, -1, -scale.clone()));
        }
        Polytope::from_halfspaces(n, hs)
    }

    /// Hirzebruch trapezoid `conv{(0,0), (a+1,0), (0,1), (1,1)}`.
    pub fn hirzebruch(a: u32) -> Result<Polytope> {
        if a == 0 {
            return Err(Error::InvalidInput(
                "hirzebruch parameter must be at least 1".into(),
            ));
        }
        let a = a as i64;
        Polytope::from_halfspaces(
            2,
            vec![
                HalfSpace::from_i64(&[0, 1], 0),
                HalfSpace::from_i64(&[1, 0], 0),
                HalfSpace::from_i64(&[0, -1], -1),
                HalfSpace::from_i64(&[-1, -a], -(a + 1)),
            ],
        )
    }
}

fn check_builder(n: usize, scale: &Rational) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if !scale.is_positive() {
        return Err(Error::InvalidInput("scale must be positive".into()));
    }
    Ok(())
}

fn unit_halfspace(n: usize, i: usize, sign: i64, offset: Rational) -> HalfSpace {
    let mut normal = vec![0; n];
    normal[i] = sign;
    HalfSpace::new(RationalVec::from_i64(&normal), offset).expect("unit normal")
}

/// Named polytope constructors, written `simplex:n:scale`, `cube:n:scale`
/// or `hirzebruch:a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuilderSpec {
    Simplex { n: usize, scale: Rational },
    Cube { n: usize, scale: Rational },
    Hirzebruch { a: u32 },
}

impl BuilderSpec {
    pub fn build(&self) -> Result<Polytope> {
        match self {
            BuilderSpec::Simplex { n, scale } => Polytope::simplex(*n, scale),
            BuilderSpec::Cube { n, scale } => Polytope::cube(*n, scale),
            BuilderSpec::Hirzebruch { a } => Polytope::hirzebruch(*a),
        }
    }

    /// simplex(n, s), cube(n, s) for n, s <= 3 and hirzebruch(a) for a <= 3.
    pub fn catalog() -> Vec<BuilderSpec> {
        let mut out = Vec::new();
        for n in 1..=3 {
            for s in 1..=3 {
                out.push(BuilderSpec::Simplex {
                    n,
                    scale: Rational::from_integer(s.into()),
                });
            }
        }
        for n in 1..=3 {
            for s in 1..=3 {
                out.push(BuilderSpec::Cube {
                    n,
                    scale: Rational::from_integer(s.into()),
                });
            }
        }
        for a in 1..=3 {
            out.push(BuilderSpec::Hirzebruch { a });
        }
        out
    }
}

impl FromStr for BuilderSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("bad builder spec {s:?}"));
        let parse_n = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["simplex", n, scale] => Ok(BuilderSpec::Simplex {
                n: parse_n(n)?,
                scale: parse_rational(scale)?,
            }),
            ["cube", n, scale] => Ok(BuilderSpec::Cube {
                n: parse_n(n)?,
                scale: parse_rational(scale)?,
            }),
            ["hirzebruch", a] => Ok(BuilderSpec::Hirzebruch {
                a: a.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for BuilderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuilderSpec::Simplex { n, scale } => {
                write!(f, "simplex:{n}:{}", format_rational(scale))
            }
            BuilderSpec::Cube { n, scale } => write!(f, "cube:{n}:{}", format_rational(scale)),
            BuilderSpec::Hirzebruch { a } => write!(f, "hirzebruch:{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn builder_examples() {
        let tri = Polytope::simplex(2, &rat(1)).unwrap();
        assert_eq!(
            tri.vertices(),
            &[
                RationalVec::from_i64(&[0, 0]),
                RationalVec::from_i64(&[0, 1]),
                RationalVec::from_i64(&[1, 0])
            ]
        );
        let c = Polytope::cube(3, &rat(2)).unwrap();
        assert_eq!((c.vertices().len(), c.edges().len()), (8, 12));
        assert!(c
            .vertices()
            .iter()
            .all(|v| v.iter().all(|e| e == &rat(0) || e == &rat(2))));
        let h = Polytope::hirzebruch(1).unwrap();
        let expected: Vec<RationalVec> = [[0, 0], [0, 1], [1, 1], [2, 0]]
            .iter()
            .map(|p| RationalVec::from_i64(p))
            .collect();
        assert_eq!(h.vertices(), expected.as_slice());
        assert!(h.is_smooth());
        assert!(Polytope::simplex(0, &rat(1)).is_err());
        assert!(Polytope::cube(2, &rat(-1)).is_err());
        assert!(Polytope::hirzebruch(0).is_err());
    }

    #[test]
    fn builders_are_delzant() {
        for spec in BuilderSpec::catalog() {
            let p = spec.build().unwrap();
            assert!(p.is_smooth(), "{spec}");
        }
    }

    #[test]
    fn spec_strings() {
        let s: BuilderSpec = "simplex:2:1".parse().unwrap();
        assert_eq!(
            s,
            BuilderSpec::Simplex {
                n: 2,
                scale: rat(1)
            }
        );
        assert_eq!(s.to_string(), "simplex:2:1");
        let c: BuilderSpec = "cube:3:1/2".parse().unwrap();
        assert_eq!(c.to_string(), "cube:3:1/2");
        assert_eq!(
            "hirzebruch:2".parse::<BuilderSpec>().unwrap(),
            BuilderSpec::Hirzebruch { a: 2 }
        );
        assert!("sphere:2".parse::<BuilderSpec>().is_err());
        assert!("cube:x:1".parse::<BuilderSpec>().is_err());
        assert_eq!(BuilderSpec::catalog().len(), 21);
    }
}
