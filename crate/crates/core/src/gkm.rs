//! Moment graphs and their equivariant cohomology rings.
//!
//! A class is a tuple `(f_p)` of polynomials indexed by the fixed points
//! (graph vertices) subject to `alpha_e | f_p - f_q` for every edge
//! `e = (p, q)`. The degree-`k` piece is the kernel of a linear system in the
//! monomial coefficients of the `f_p`; its dimension is computed by exact
//! rank over Q.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{primitive, LinearForm, Monomial, MultiPoly, Rational, RationalVec};
use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// GKM graph `(Gamma, alpha)`: vertices carry moment-map positions, edges
/// carry weights determined up to sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentGraph {
    dim: usize,
    positions: Vec<RationalVec>,
    edges: Vec<(usize, usize)>,
    weights: Vec<LinearForm>,
    #[serde(skip)]
    incident: Vec<Vec<usize>>,
}

impl MomentGraph {
    /// General graph. Weights must be nonzero and pairwise independent at
    /// each vertex.
    pub fn new(
        dim: usize,
        positions: Vec<RationalVec>,
        edges: Vec<(usize, usize)>,
        weights: Vec<LinearForm>,
    ) -> Result<Self> {
        if edges.len() != weights.len() {
            return Err(Error::InvalidInput("one weight per edge required".into()));
        }
        if let Some(p) = positions.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        let mut incident = vec![Vec::new(); positions.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= positions.len() || b >= positions.len() || a == b {
                return Err(Error::InvalidInput(format!("bad edge ({a}, {b})")));
            }
            let w = &weights[e];
            if w.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: w.dim(),
                });
            }
            if w.is_zero() {
                return Err(Error::ZeroLinearForm);
            }
            incident[a].push(e);
            incident[b].push(e);
        }
        for (v, inc) in incident.iter().enumerate() {
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    if weights[e]
                        .coefficients()
                        .is_parallel(weights[f].coefficients())
                    {
                        return Err(Error::InvalidInput(format!(
                            "weights at vertex {v} are not pairwise linearly independent"
                        )));
                    }
                }
            }
        }
        Ok(MomentGraph {
            dim,
            positions,
            edges,
            weights,
            incident,
        })
    }

    /// The 1-skeleton of a Delzant polytope, with weight `primitive(w - v)`
    /// on each edge `(v, w)`, `v` the lower index.
    pub fn from_polytope(p: &Polytope) -> Result<Self> {
        let report = p.smoothness();
        if !report.smooth {
            return Err(Error::NotDelzant(report.reason.unwrap_or_default()));
        }
        let weights = p
            .edges()
            .iter()
            .map(|&(a, b)| primitive(&p.vertices()[b].sub(&p.vertices()[a])).map(LinearForm::new))
            .collect::<Result<Vec<_>>>()?;
        MomentGraph::new(p.dim(), p.vertices().to_vec(), p.edges().to_vec(), weights)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[RationalVec] {
        &self.positions
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[LinearForm] {
        &self.weights
    }

    /// Edge indices incident to `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Copy with the weights of the flagged edges negated.
    pub fn with_flipped_weights(&self, flips: &[bool]) -> MomentGraph {
        let mut g = self.clone();
        for (w, &flip) in g.weights.iter_mut().zip(flips) {
            if flip {
                *w = w.neg();
            }
        }
        g
    }

    pub fn connected_components(&self) -> usize {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &e in &self.incident[v] {
                    let w = self.other_end(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Candidate equivariant class: one polynomial per graph vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmClass {
    components: Vec<MultiPoly>,
}

impl GkmClass {
    pub fn new(components: Vec<MultiPoly>) -> Self {
        GkmClass { components }
    }

    /// The same polynomial at every vertex.
    pub fn constant(g: &MomentGraph, f: &MultiPoly) -> Self {
        GkmClass {
            components: vec![f.clone(); g.num_vertices()],
        }
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// Common polynomial degree of the nonzero components, `None` when they
    /// disagree or all vanish.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self
            .components
            .iter()
            .filter(|p| !p.is_zero())
            .map(MultiPoly::homogeneous_degree);
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }

    /// Componentwise product.
    pub fn mul(&self, other: &GkmClass) -> GkmClass {
        GkmClass {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Multiplication by a global polynomial (the module structure).
    pub fn mul_poly(&self, f: &MultiPoly) -> GkmClass {
        GkmClass {
            components: self.components.iter().map(|a| a * f).collect(),
        }
    }

    pub fn add(&self, other: &GkmClass) -> GkmClass {
        GkmClass {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkmReport {
    pub ok: bool,
    pub failing_edges: Vec<usize>,
}

/// Tests `alpha_e | f_p - f_q` on every edge.
pub fn gkm_check(g: &MomentGraph, c: &GkmClass) -> Result<GkmReport> {
    if c.components.len() != g.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: g.num_vertices(),
            found: c.components.len(),
        });
    }
    if let Some(p) = c.components.iter().find(|p| p.nvars() != g.dim()) {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: p.nvars(),
        });
    }
    let mut failing_edges = Vec::new();
    for (e, &(p, q)) in g.edges.iter().enumerate() {
        let diff = &c.components[p] - &c.components[q];
        if !diff.divisible_by(&g.weights[e])? {
            failing_edges.push(e);
        }
    }
    Ok(GkmReport {
        ok: failing_edges.is_empty(),
        failing_edges,
    })
}

/// Linear system whose kernel is the degree-`k` part of `H*(Gamma, alpha)`.
/// Unknown `v * m + i` is the coefficient of the `i`-th degree-`k` monomial
/// in `f_v`. Each edge contributes one row per monomial of the restriction of
/// `f_p - f_q` to `alpha_e = 0`.
fn gkm_system(g: &MomentGraph, k: u32) -> (Matrix, usize, Vec<Monomial>) {
    let monos = Monomial::all_of_degree(g.dim, k);
    let m = monos.len();
    let cols = g.num_vertices() * m;
    let mut rows: Matrix = Vec::new();
    for (e, &(p, q)) in g.edges.iter().enumerate() {
        let restricted: Vec<MultiPoly> = monos
            .iter()
            .map(|mono| {
                MultiPoly::monomial(mono.clone(), Rational::from_integer(1.into()))
                    .restrict_to_hyperplane(&g.weights[e])
                    .expect("weights are nonzero")
            })
            .collect();
        let mut row_of: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (i, r) in restricted.iter().enumerate() {
            for (rm, rc) in r.terms() {
                let row = row_of
                    .entry(rm.clone())
                    .or_insert_with(|| vec![Rational::zero(); cols]);
                row[p * m + i] += rc;
                row[q * m + i] -= rc;
            }
        }
        rows.extend(row_of.into_values());
    }
    (rows, cols, monos)
}

/// `dim_Q` of degree-`k` classes satisfying every edge condition.
pub fn gkm_dimension(g: &MomentGraph, k: u32) -> usize {
    let (rows, cols, _) = gkm_system(g, k);
    cols - linalg::rank(&rows)
}

/// A basis of the degree-`k` classes.
pub fn gkm_basis(g: &MomentGraph, k: u32) -> Vec<GkmClass> {
    let (rows, cols, monos) = gkm_system(g, k);
    let m = monos.len();
    linalg::nullspace(&rows, cols)
        .into_iter()
        .map(|vec| {
            let components = (0..g.num_vertices())
                .map(|v| {
                    MultiPoly::from_terms(
                        g.dim,
                        monos
                            .iter()
                            .cloned()
                            .zip(vec[v * m..(v + 1) * m].iter().cloned()),
                    )
                    .expect("monomials have graph dimension")
                })
                .collect();
            GkmClass { components }
        })
        .collect()
}

/// `b_{2k}` for `k = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiProfile(pub Vec<usize>);

impl BettiProfile {
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

/// Morse counting: `b_{2k}` is the number of vertices with exactly `k`
/// incident edges going down with respect to `xi`.
pub fn betti_numbers(g: &MomentGraph, xi: &RationalVec) -> Result<BettiProfile> {
    if xi.dim() != g.dim {
        return Err(Error::DimensionMismatch {
            expected: g.dim,
            found: xi.dim(),
        });
    }
    let mut counts = vec![0usize; g.dim + 1];
    for v in 0..g.num_vertices() {
        let mut down = 0;
        for &e in &g.incident[v] {
            let w = g.other_end(e, v);
            let d = g.positions[w].sub(&g.positions[v]);
            let s = d.dot(xi);
            if s.is_zero() {
                return Err(Error::NotGeneric(d.to_string()));
            }
            if s.is_negative() {
                down += 1;
            }
        }
        if down >= counts.len() {
            counts.resize(down + 1, 0);
        }
        counts[down] += 1;
    }
    Ok(BettiProfile(counts))
}

/// Deterministic integer direction pairing nonzero with every edge's position
/// difference.
pub fn generic_direction(g: &MomentGraph, seed: u64) -> Result<RationalVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let xi: Vec<i64> = (0..g.dim).map(|_| rng.gen_range(-97..=97)).collect();
        let xi = RationalVec::from_i64(&xi);
        let ok = g
            .edges
            .iter()
            .all(|&(a, b)| !g.positions[b].sub(&g.positions[a]).dot(&xi).is_zero());
        if ok {
            return Ok(xi);
        }
    }
    Err(Error::Internal(
        "no generic direction found in 1000 attempts".into(),
    ))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeModuleRow {
    pub k: u32,
    /// `gkm_dimension(G, k)`.
    pub dimension: usize,
    /// Hilbert-series prediction `sum_j b_{2j} C(k - j + n - 1, n - 1)`.
    pub predicted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeModuleReport {
    pub holds: bool,
    pub betti: BettiProfile,
    pub rows: Vec<FreeModuleRow>,
}

/// Compares degreewise dimensions with those of a free module over
/// `Q[x_1..x_n]` with `b_{2j}` generators in degree `j`.
pub fn free_module_check(g: &MomentGraph, k_max: u32) -> Result<FreeModuleReport> {
    let xi = generic_direction(g, 0)?;
    let betti = betti_numbers(g, &xi)?;
    let n = g.dim as u64;
    let rows: Vec<FreeModuleRow> = (0..=k_max)
        .map(|k| {
            let predicted = (0..=k)
                .map(|j| betti.get(j as usize) as u64 * binomial((k - j) as u64 + n - 1, n - 1))
                .sum::<u64>() as usize;
            FreeModuleRow {
                k,
                dimension: gkm_dimension(g, k),
                predicted,
            }
        })
        .collect();
    let holds = rows.iter().all(|r| r.dimension == r.predicted);
    Ok(FreeModuleReport { holds, betti, rows })
}

/// The degree-1 class of facet `f` (index into [`Polytope::facets`]): zero
/// off the facet, and at a vertex on it the primitive direction of the one
/// edge leaving the facet.
pub fn facet_class(p: &Polytope, g: &MomentGraph, f: usize) -> Result<GkmClass> {
    if !p.is_smooth() {
        return Err(Error::NotDelzant(
            "facet classes need a Delzant polytope".into(),
        ));
    }
    if g.positions() != p.vertices() {
        return Err(Error::InvalidInput(
            "graph does not belong to this polytope".into(),
        ));
    }
    if f >= p.facets().len() {
        return Err(Error::InvalidInput(format!("facet index {f} out of range")));
    }
    let on_facet = p.facet_vertices(f);
    let mut components = vec![MultiPoly::zero(p.dim()); p.vertices().len()];
    for &v in &on_facet {
        let mut leaving = p.neighbors(v).iter().filter(|w| !on_facet.contains(w));
        let w = *leaving
            .next()
            .ok_or_else(|| Error::Internal("no edge leaves the facet".into()))?;
        if leaving.next().is_some() {
            return Err(Error::Internal(
                "more than one edge leaves the facet".into(),
            ));
        }
        let dir = primitive(&p.vertices()[w].sub(&p.vertices()[v]))?;
        components[v] = LinearForm::new(dir).to_poly();
    }
    Ok(GkmClass { components })
}

/// Ordinary Betti number `b_{2k}`, valid once the free module check holds
/// through degree `k`.
pub fn restriction_kernel_note(g: &MomentGraph, k: u32) -> Result<usize> {
    let report = free_module_check(g, k)?;
    if !report.holds {
        let bad = report
            .rows
            .iter()
            .find(|r| r.dimension != r.predicted)
            .map_or(k, |r| r.k);
        return Err(Error::FreeModuleCheckFailed(bad as usize));
    }
    Ok(report.betti.get(k as usize))
}
