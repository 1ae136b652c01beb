//! Polarized tangent cones and the signed cone decomposition of a polytope.
//!
//! Fix `xi` pairing nonzero with every edge vector. At a vertex `v`, edges
//! with `<alpha, xi> > 0` (the set `E_v^+`) are flipped to `-alpha` and their
//! coefficients made strict; the resulting half-open cone `C_v^#` enters with
//! sign `(-1)^{|E_v^+|}`. Summing the signed indicators of these cones
//! recovers the indicator of the polytope, boundary included.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{sign, Rational, RationalVec};
use crate::error::{Error, Result};
use crate::polytope::{LatticeBox, Polytope, VertexFigure};

const MAX_ATTEMPTS: usize = 1000;

/// A direction pairing nonzero with every edge vector of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizingVector(RationalVec);

impl PolarizingVector {
    /// Checks `xi` against every edge of `p`.
    pub fn for_polytope(p: &Polytope, xi: RationalVec) -> Result<Self> {
        if xi.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: xi.dim(),
            });
        }
        for &(a, b) in p.edges() {
            let d = p.vertices()[b].sub(&p.vertices()[a]);
            if d.dot(&xi).is_zero() {
                return Err(Error::NotPolarizing(d.to_string()));
            }
        }
        Ok(PolarizingVector(xi))
    }

    /// Wraps `xi` without checking it against any polytope.
    pub fn unchecked(xi: RationalVec) -> Self {
        PolarizingVector(xi)
    }

    pub fn xi(&self) -> &RationalVec {
        &self.0
    }

    pub fn neg(&self) -> Self {
        PolarizingVector(-&self.0)
    }
}

/// Deterministic pseudo-random integer vector valid for `p`, drawn from a
/// ChaCha stream seeded with `seed`.
pub fn choose_polarizing_vector(p: &Polytope, seed: u64) -> Result<PolarizingVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let xi: Vec<i64> = (0..p.dim())
            .map(|_| {
                let m: i64 = rng.gen_range(1..=97);
                if rng.gen_bool(0.5) {
                    -m
                } else {
                    m
                }
            })
            .collect();
        if let Ok(v) = PolarizingVector::for_polytope(p, RationalVec::from_i64(&xi)) {
            return Ok(v);
        }
    }
    Err(Error::Internal(format!(
        "no polarizing vector found in {MAX_ATTEMPTS} attempts"
    )))
}

/// `v + cone(edge vectors)`, all coefficients non-negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentCone {
    pub apex: RationalVec,
    pub generators: Vec<RationalVec>,
}

impl TangentCone {
    pub fn at(vf: &VertexFigure) -> Self {
        TangentCone {
            apex: vf.vertex.clone(),
            generators: vf.primitive_edge_dirs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizedCone {
    pub apex: RationalVec,
    pub generators: Vec<RationalVec>,
    /// `true` where the coefficient must be strictly positive (flipped edges).
    pub open_flags: Vec<bool>,
    pub sign: i32,
    #[serde(skip)]
    coords: Option<Matrix>,
}

impl PolarizedCone {
    /// Flips every edge pairing positively with `xi`.
    pub fn polarize(vf: &VertexFigure, xi: &PolarizingVector) -> Result<Self> {
        let mut generators = Vec::with_capacity(vf.primitive_edge_dirs.len());
        let mut open_flags = Vec::with_capacity(vf.primitive_edge_dirs.len());
        for alpha in &vf.primitive_edge_dirs {
            match sign(&alpha.dot(xi.xi())) {
                0 => return Err(Error::NotPolarizing(alpha.to_string())),
                s if s > 0 => {
                    generators.push(-alpha);
                    open_flags.push(true);
                }
                _ => {
                    generators.push(alpha.clone());
                    open_flags.push(false);
                }
            }
        }
        PolarizedCone::new(vf.vertex.clone(), generators, open_flags)
    }

    /// Cone `apex + sum c_j g_j` with `c_j > 0` where `open_flags[j]` and
    /// `c_j >= 0` otherwise; the sign is `(-1)^(#open)`.
    pub fn new(
        apex: RationalVec,
        generators: Vec<RationalVec>,
        open_flags: Vec<bool>,
    ) -> Result<Self> {
        if generators.len() != open_flags.len() {
            return Err(Error::InvalidInput(
                "one flag per generator required".into(),
            ));
        }
        if let Some(g) = generators.iter().find(|g| g.dim() != apex.dim()) {
            return Err(Error::DimensionMismatch {
                expected: apex.dim(),
                found: g.dim(),
            });
        }
        let flipped = open_flags.iter().filter(|f| **f).count();
        let sign = if flipped % 2 == 0 { 1 } else { -1 };
        let n = apex.dim();
        let coords = (generators.len() == n)
            .then(|| {
                // columns are generators; invert to read off coefficients
                let cols: Matrix = (0..n)
                    .map(|i| generators.iter().map(|g| g[i].clone()).collect())
                    .collect();
                linalg::inverse(&cols)
            })
            .flatten();
        Ok(PolarizedCone {
            apex,
            generators,
            open_flags,
            sign,
            coords,
        })
    }

    /// Coefficients `c` with `x = apex + sum c_j g_j`.
    pub fn coefficients(&self, x: &RationalVec) -> Result<Vec<Rational>> {
        let inv = self.coords.as_ref().ok_or(Error::NonSimpleVertex)?;
        if x.dim() != self.apex.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.apex.dim(),
                found: x.dim(),
            });
        }
        Ok(linalg::mat_vec(inv, x.sub(&self.apex).entries()))
    }

    pub fn contains(&self, x: &RationalVec) -> Result<bool> {
        let c = self.coefficients(x)?;
        Ok(c.iter().zip(&self.open_flags).all(|(cj, &open)| {
            if open {
                cj.is_positive()
            } else {
                !cj.is_negative()
            }
        }))
    }

    /// Integer inequalities `m . x >= t` cutting out the cone's lattice points.
    fn lattice_rows(&self) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
        let inv = self.coords.as_ref().ok_or(Error::NonSimpleVertex)?;
        Ok(inv
            .iter()
            .zip(&self.open_flags)
            .map(|(row, &open)| {
                let l = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                let lr = Rational::from_integer(l);
                let m: Vec<BigInt> = row.iter().map(|e| (e * &lr).to_integer()).collect();
                let t: Rational = m
                    .iter()
                    .zip(self.apex.iter())
                    .fold(Rational::zero(), |acc, (mi, ai)| {
                        acc + Rational::from_integer(mi.clone()) * ai
                    });
                let bound = if open {
                    t.floor().to_integer() + 1
                } else {
                    t.ceil().to_integer()
                };
                (m, bound)
            })
            .collect())
    }

    /// Number of lattice points of the cone inside `bx`.
    pub fn lattice_count(&self, bx: &LatticeBox) -> Result<u64> {
        let rows = self.lattice_rows()?;
        let small: Option<Vec<(Vec<i128>, i128)>> = rows
            .iter()
            .map(|(m, t)| {
                let m = m
                    .iter()
                    .map(|e| e.to_i64().map(i128::from))
                    .collect::<Option<Vec<_>>>()?;
                Some((m, t.to_i64()? as i128))
            })
            .collect();
        let mut count = 0u64;
        match small {
            Some(rows) => bx.for_each_point(|x| {
                if rows.iter().all(|(m, t)| {
                    m.iter().zip(x).map(|(a, b)| a * (*b as i128)).sum::<i128>() >= *t
                }) {
                    count += 1;
                }
            }),
            None => bx.for_each_point(|x| {
                let hit = rows.iter().all(|(m, t)| {
                    m.iter()
                        .zip(x)
                        .fold(BigInt::zero(), |acc, (a, b)| acc + a * BigInt::from(*b))
                        >= *t
                });
                if hit {
                    count += 1;
                }
            }),
        }
        Ok(count)
    }
}

/// The signed family of polarized tangent cones of a simple polytope.
#[derive(Clone, Debug, Serialize)]
pub struct PolarDecomposition {
    pub xi: PolarizingVector,
    pub cones: Vec<PolarizedCone>,
}

impl PolarDecomposition {
    pub fn new(p: &Polytope, xi: &PolarizingVector) -> Result<Self> {
        let xi = PolarizingVector::for_polytope(p, xi.xi().clone())?;
        let cones = (0..p.vertices().len())
            .map(|v| PolarizedCone::polarize(&p.vertex_figure(v), &xi))
            .collect::<Result<Vec<_>>>()?;
        if cones.iter().any(|c| c.coords.is_none()) {
            return Err(Error::NonSimpleVertex);
        }
        Ok(PolarDecomposition { xi, cones })
    }

    /// `sum_v sign_v * [x in C_v^#]`.
    pub fn indicator_sum(&self, x: &RationalVec) -> Result<i64> {
        self.cones.iter().try_fold(0i64, |acc, c| {
            Ok(acc + if c.contains(x)? { c.sign as i64 } else { 0 })
        })
    }

    /// `sum_v sign_v * #(C_v^# ∩ box ∩ Z^n)`.
    pub fn lattice_count(&self, bx: &LatticeBox) -> Result<i64> {
        self.cones.iter().try_fold(0i64, |acc, c| {
            Ok(acc + c.sign as i64 * c.lattice_count(bx)? as i64)
        })
    }
}

pub fn tangent_cone(p: &Polytope, v: usize) -> TangentCone {
    TangentCone::at(&p.vertex_figure(v))
}

pub fn polarize(vf: &VertexFigure, xi: &PolarizingVector) -> Result<PolarizedCone> {
    PolarizedCone::polarize(vf, xi)
}

pub fn cone_contains(c: &PolarizedCone, x: &RationalVec) -> Result<bool> {
    c.contains(x)
}

pub fn signed_indicator_sum(p: &Polytope, xi: &PolarizingVector, x: &RationalVec) -> Result<i64> {
    PolarDecomposition::new(p, xi)?.indicator_sum(x)
}

/// Signed count over `bx`, which must contain `p`.
pub fn signed_lattice_count(p: &Polytope, xi: &PolarizingVector, bx: &LatticeBox) -> Result<i64> {
    if !bx.contains_polytope(p) {
        return Err(Error::BoxTooSmall);
    }
    PolarDecomposition::new(p, xi)?.lattice_count(bx)
}
