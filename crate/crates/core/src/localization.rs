//! Fixed-point formulas for isolated fixed points.
//!
//! The push-forward of a class `(f_v)` is `sum_v f_v / e_v`, where the
//! equivariant Euler class `e_v` is the product of the isotropy weights at
//! `v`. Instead of working in the field of rational functions, everything is
//! evaluated at generic rational points; agreement across several points is
//! what the tests check.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{primitive, Rational, RationalVec};
use crate::error::{Error, Result};
use crate::gkm::{gkm_basis, gkm_check, GkmClass, MomentGraph};
use crate::polytope::Polytope;
use crate::MultiPoly;

/// Isotropy weights at every fixed point, each oriented away from its vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointData {
    #[serde(skip)]
    graph: MomentGraph,
    pub positions: Vec<RationalVec>,
    pub weights: Vec<Vec<RationalVec>>,
}

impl FixedPointData {
    /// Orients each edge weight to point from `v` towards its neighbour's
    /// position. Requires exactly `n` independent weights per vertex.
    pub fn from_graph(g: &MomentGraph) -> Result<Self> {
        let n = g.dim();
        let mut weights = Vec::with_capacity(g.num_vertices());
        for v in 0..g.num_vertices() {
            let mut ws = Vec::with_capacity(n);
            for &e in g.incident_edges(v) {
                let w = g.other_end(e, v);
                let towards = g.positions()[w].sub(&g.positions()[v]);
                let alpha = g.weights()[e].coefficients();
                let s = alpha.dot(&towards);
                if s.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "weight of edge {e} does not point along the edge"
                    )));
                }
                ws.push(if s > Rational::zero() {
                    alpha.clone()
                } else {
                    -alpha
                });
            }
            if ws.len() != n {
                return Err(Error::NotDelzant(format!(
                    "vertex {v} has {} weights, expected {n}",
                    ws.len()
                )));
            }
            let m: Matrix = ws.iter().map(|w| w.entries().to_vec()).collect();
            if linalg::determinant(&m).is_zero() {
                return Err(Error::NotDelzant(format!(
                    "weights at vertex {v} are dependent"
                )));
            }
            weights.push(ws);
        }
        Ok(FixedPointData {
            graph: g.clone(),
            positions: g.positions().to_vec(),
            weights,
        })
    }

    pub fn graph(&self) -> &MomentGraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    /// Product of the isotropy weights at `v`, a degree-`n` polynomial.
    pub fn euler_class_at(&self, v: usize) -> MultiPoly {
        let n = self.dim();
        self.weights[v].iter().fold(MultiPoly::one(n), |acc, w| {
            &acc * &crate::LinearForm::new(w.clone()).to_poly()
        })
    }

    fn euler_value(&self, v: usize, xi: &RationalVec) -> Rational {
        self.weights[v]
            .iter()
            .fold(Rational::one(), |acc, w| acc * w.dot(xi))
    }

    /// The class equal to the Euler class at `v` and zero elsewhere.
    pub fn delta_class(&self, v: usize) -> GkmClass {
        let mut comps = vec![MultiPoly::zero(self.dim()); self.graph.num_vertices()];
        comps[v] = self.euler_class_at(v);
        GkmClass::new(comps)
    }
}

/// A point at which no isotropy weight vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationPoint(RationalVec);

impl EvaluationPoint {
    pub fn new(data: &FixedPointData, xi: RationalVec) -> Result<Self> {
        if xi.dim() != data.dim() {
            return Err(Error::DimensionMismatch {
                expected: data.dim(),
                found: xi.dim(),
            });
        }
        for ws in &data.weights {
            if let Some(w) = ws.iter().find(|w| w.dot(&xi).is_zero()) {
                return Err(Error::WeightVanishes(w.to_string()));
            }
        }
        Ok(EvaluationPoint(xi))
    }

    /// Deterministic choice from a seeded ChaCha stream.
    pub fn choose(data: &FixedPointData, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..1000 {
            let xi: Vec<Rational> = (0..data.dim())
                .map(|_| {
                    Rational::new(rng.gen_range(-97..=97).into(), rng.gen_range(1..=13).into())
                })
                .collect();
            if let Ok(p) = EvaluationPoint::new(data, RationalVec::new(xi)) {
                return Ok(p);
            }
        }
        Err(Error::Internal(
            "no generic evaluation point found in 1000 attempts".into(),
        ))
    }

    pub fn xi(&self) -> &RationalVec {
        &self.0
    }
}

pub fn euler_class_at(data: &FixedPointData, v: usize) -> MultiPoly {
    data.euler_class_at(v)
}

/// `sum_v f_v(xi) / e_v(xi)` for a class satisfying the edge conditions.
pub fn abbv_pushforward(
    c: &GkmClass,
    data: &FixedPointData,
    xi: &EvaluationPoint,
) -> Result<Rational> {
    let report = gkm_check(data.graph(), c)?;
    if !report.ok {
        return Err(Error::NotGkmClass(report.failing_edges));
    }
    let xi = EvaluationPoint::new(data, xi.0.clone())?;
    let total = c
        .components()
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (v, f)| {
            acc + f.eval(&xi.0) / data.euler_value(v, &xi.0)
        });
    Ok(total)
}

/// True iff every basis class of degree `k < n` pushes forward to zero at
/// each sample point.
pub fn pushforward_degree_vanishing(
    data: &FixedPointData,
    k: u32,
    xi_samples: &[EvaluationPoint],
) -> Result<bool> {
    if k as usize >= data.dim() {
        return Err(Error::InvalidInput(format!(
            "degree {k} is not below the dimension {}",
            data.dim()
        )));
    }
    if xi_samples.len() < 3 {
        return Err(Error::InvalidInput(
            "at least three evaluation points required".into(),
        ));
    }
    for c in gkm_basis(data.graph(), k) {
        for xi in xi_samples {
            if !abbv_pushforward(&c, data, xi)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| {
        acc * Rational::from_integer(i.into())
    })
}

/// `sum_v <v, xi>^n / (n! prod_j <-alpha_{v,j}, xi>)` over the vertices of a
/// Delzant polytope, with `alpha_{v,j}` the primitive edges leaving `v`.
pub fn volume_localization(p: &Polytope, xi: &RationalVec) -> Result<Rational> {
    if xi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: xi.dim(),
        });
    }
    let report = p.smoothness();
    if !report.smooth {
        return Err(Error::NotDelzant(report.reason.unwrap_or_default()));
    }
    let n = p.dim();
    let nf = factorial(n);
    let mut total = Rational::zero();
    for v in 0..p.vertices().len() {
        let vf = p.vertex_figure(v);
        let mut denom = nf.clone();
        for alpha in &vf.primitive_edge_dirs {
            let d = -alpha.dot(xi);
            if d.is_zero() {
                return Err(Error::WeightVanishes(alpha.to_string()));
            }
            denom *= d;
        }
        let num = num_traits::pow(vf.vertex.dot(xi), n);
        total += num / denom;
    }
    Ok(total)
}

/// [`volume_localization`] at the first generic point of a seeded stream.
pub fn volume_localization_auto(p: &Polytope, seed: u64) -> Result<(Rational, RationalVec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let xi = RationalVec::from_i64(
            &(0..p.dim())
                .map(|_| rng.gen_range(-97..=97))
                .collect::<Vec<_>>(),
        );
        match volume_localization(p, &xi) {
            Ok(v) => return Ok((v, xi)),
            Err(Error::WeightVanishes(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal(
        "no generic evaluation point found in 1000 attempts".into(),
    ))
}

/// Primitive edge directions leaving each vertex of `p`.
pub fn polytope_weights(p: &Polytope) -> Result<Vec<Vec<RationalVec>>> {
    (0..p.vertices().len())
        .map(|v| p.vertex_figure(v).edge_dirs.iter().map(primitive).collect())
        .collect()
}
