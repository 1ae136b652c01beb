//! Compact convex rational polytopes given by inequalities.
//!
//! A [`Polytope`] is built from half-spaces `<normal, x> >= offset` with
//! inward normals. Vertices come from brute force over all `n`-subsets of
//! constraints; edges are pairs of vertices whose common active constraints
//! have normals of rank `n - 1`. No metric tolerance is used anywhere.

mod builders;
mod fm;
mod lattice;
mod volume;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{primitive, Rational, RationalVec};
use crate::error::{Error, Result};

pub use builders::BuilderSpec;
pub use lattice::LatticeBox;

/// The constraint `<normal, x> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: RationalVec,
    #[serde(with = "crate::io::rational_string")]
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: RationalVec, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InvalidInput(
                "half-space normal must be nonzero".into(),
            ));
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        HalfSpace::new(
            RationalVec::from_i64(normal),
            Rational::from_integer(offset.into()),
        )
        .expect("nonzero normal")
    }

    pub fn satisfied_by(&self, x: &RationalVec) -> bool {
        self.normal.dot(x) >= self.offset
    }

    pub fn is_tight(&self, x: &RationalVec) -> bool {
        self.normal.dot(x) == self.offset
    }

    /// Same half-space with a primitive integer normal.
    pub fn normalized(&self) -> HalfSpace {
        let normal = primitive(&self.normal).expect("nonzero normal");
        let i = (0..normal.dim()).find(|&i| !normal[i].is_zero()).unwrap();
        let factor = &normal[i] / &self.normal[i];
        HalfSpace {
            offset: &self.offset * factor,
            normal,
        }
    }
}

/// Edge directions at one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexFigure {
    pub vertex: RationalVec,
    pub neighbors: Vec<usize>,
    pub edge_dirs: Vec<RationalVec>,
    pub primitive_edge_dirs: Vec<RationalVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothFailure {
    pub vertex_index: usize,
    pub vertex: RationalVec,
    /// Absolute determinant of the primitive edge matrix at the vertex.
    #[serde(with = "crate::io::rational_string")]
    pub det: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub simple: bool,
    pub reason: Option<String>,
    /// `|det|` of the primitive edge matrix per vertex; empty if not simple.
    #[serde(with = "crate::io::rational_string_vec")]
    pub vertex_dets: Vec<Rational>,
    pub failure: Option<SmoothFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<RationalVec>,
    vertex_facets: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    facets: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

/// Vertices of `{x : hs}` with the indices of their active constraints,
/// sorted lexicographically.
pub(crate) fn enumerate_vertices(dim: usize, hs: &[HalfSpace]) -> Vec<(RationalVec, Vec<usize>)> {
    let subsets: Vec<Vec<usize>> = (0..hs.len()).combinations(dim).collect();
    let mut points: Vec<RationalVec> = subsets
        .par_iter()
        .filter_map(|subset| {
            let m: Matrix = subset
                .iter()
                .map(|&i| hs[i].normal.entries().to_vec())
                .collect();
            let b: Vec<Rational> = subset.iter().map(|&i| hs[i].offset.clone()).collect();
            let x = RationalVec::new(linalg::solve(&m, &b)?);
            hs.iter().all(|h| h.satisfied_by(&x)).then_some(x)
        })
        .collect();
    points.sort();
    points.dedup();
    points
        .into_iter()
        .map(|x| {
            let active = (0..hs.len()).filter(|&i| hs[i].is_tight(&x)).collect();
            (x, active)
        })
        .collect()
}

fn normals_rank(hs: &[HalfSpace], idx: &[usize]) -> usize {
    let m: Matrix = idx
        .iter()
        .map(|&i| hs[i].normal.entries().to_vec())
        .collect();
    linalg::rank(&m)
}

/// Dimension of the affine hull of `points` (-1 for no points, as `None`).
pub(crate) fn affine_dim(points: &[&RationalVec]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let m: Matrix = rest.iter().map(|p| p.sub(first).into_entries()).collect();
    Some(linalg::rank(&m))
}

impl Polytope {
    /// Builds the polytope `{x : <normal_i, x> >= offset_i for all i}`.
    ///
    /// Constraints are rescaled to primitive integer normals and duplicates
    /// dropped; the stored half-spaces are the rescaled ones.
    pub fn from_halfspaces(dim: usize, hs: Vec<HalfSpace>) -> Result<Polytope> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if hs.is_empty() {
            return Err(Error::InvalidInput("no half-spaces given".into()));
        }
        let mut halfspaces: Vec<HalfSpace> = Vec::with_capacity(hs.len());
        for h in &hs {
            if h.normal.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.normal.dim(),
                });
            }
            if h.normal.is_zero() {
                return Err(Error::InvalidInput(
                    "half-space normal must be nonzero".into(),
                ));
            }
            let n = h.normalized();
            if !halfspaces.contains(&n) {
                halfspaces.push(n);
            }
        }

        let found = enumerate_vertices(dim, &halfspaces);
        if found.is_empty() {
            let system: Vec<fm::Constraint> = halfspaces
                .iter()
                .map(|h| (h.normal.entries().to_vec(), h.offset.clone()))
                .collect();
            if !fm::feasible(&system) {
                return Err(Error::Empty);
            }
            let all: Vec<usize> = (0..halfspaces.len()).collect();
            if normals_rank(&halfspaces, &all) < dim {
                return Err(Error::Degenerate(
                    "constraint normals do not span the ambient space".into(),
                ));
            }
            return Err(Error::Unbounded);
        }
        if !recession_cone_trivial(dim, &halfspaces) {
            return Err(Error::Unbounded);
        }

        let (vertices, vertex_facets): (Vec<_>, Vec<_>) = found.into_iter().unzip();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let common: Vec<usize> = vertex_facets[i]
                    .iter()
                    .filter(|f| vertex_facets[j].contains(f))
                    .copied()
                    .collect();
                if normals_rank(&halfspaces, &common) == dim - 1 {
                    edges.push((i, j));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        let facets = (0..halfspaces.len())
            .filter(|&f| {
                let pts: Vec<&RationalVec> = (0..vertices.len())
                    .filter(|&v| vertex_facets[v].contains(&f))
                    .map(|v| &vertices[v])
                    .collect();
                affine_dim(&pts) == Some(dim - 1)
            })
            .collect();

        Ok(Polytope {
            dim,
            halfspaces,
            vertices,
            vertex_facets,
            edges,
            facets,
            adjacency,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[RationalVec] {
        &self.vertices
    }

    /// Indices (into [`Self::halfspaces`]) of the constraints tight at each vertex.
    pub fn vertex_facets(&self) -> &[Vec<usize>] {
        &self.vertex_facets
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Half-space indices that define facets, i.e. whose face has dimension `n - 1`.
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    /// Vertex indices lying on the `f`-th facet (an index into [`Self::facets`]).
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        let h = self.facets[f];
        (0..self.vertices.len())
            .filter(|&v| self.vertex_facets[v].contains(&h))
            .collect()
    }

    pub fn is_full_dimensional(&self) -> bool {
        let pts: Vec<&RationalVec> = self.vertices.iter().collect();
        affine_dim(&pts) == Some(self.dim)
    }

    pub fn vertex_figure(&self, v: usize) -> VertexFigure {
        let vertex = self.vertices[v].clone();
        let neighbors = self.adjacency[v].clone();
        let edge_dirs: Vec<RationalVec> = neighbors
            .iter()
            .map(|&w| self.vertices[w].sub(&vertex))
            .collect();
        let primitive_edge_dirs = edge_dirs
            .iter()
            .map(|d| primitive(d).expect("distinct vertices"))
            .collect();
        VertexFigure {
            vertex,
            neighbors,
            edge_dirs,
            primitive_edge_dirs,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() == self.dim)
    }

    pub fn smoothness(&self) -> SmoothnessReport {
        if !self.is_simple() {
            return SmoothnessReport {
                smooth: false,
                simple: false,
                reason: Some("not simple".into()),
                vertex_dets: Vec::new(),
                failure: None,
            };
        }
        let vertex_dets: Vec<Rational> = (0..self.vertices.len())
            .map(|v| {
                let vf = self.vertex_figure(v);
                let m: Matrix = vf
                    .primitive_edge_dirs
                    .iter()
                    .map(|d| d.entries().to_vec())
                    .collect();
                linalg::determinant(&m).abs()
            })
            .collect();
        let failure = vertex_dets
            .iter()
            .position(|d| d != &Rational::from_integer(1.into()))
            .map(|v| SmoothFailure {
                vertex_index: v,
                vertex: self.vertices[v].clone(),
                det: vertex_dets[v].clone(),
            });
        SmoothnessReport {
            smooth: failure.is_none(),
            simple: true,
            reason: failure.as_ref().map(|f| {
                format!(
                    "primitive edge determinant {} at vertex {}",
                    f.det, f.vertex
                )
            }),
            vertex_dets,
            failure,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().smooth
    }

    /// Membership with the boundary included. Panics on a dimension mismatch.
    pub fn contains(&self, x: &RationalVec) -> bool {
        assert_eq!(x.dim(), self.dim, "point dimension does not match polytope");
        self.halfspaces.iter().all(|h| h.satisfied_by(x))
    }

    /// `k * P` for a positive rational `k`.
    pub fn dilate(&self, k: &Rational) -> Result<Polytope> {
        if !k.is_positive() {
            return Err(Error::InvalidInput(
                "dilation factor must be positive".into(),
            ));
        }
        let hs = self
            .halfspaces
            .iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                offset: &h.offset * k,
            })
            .collect();
        Polytope::from_halfspaces(self.dim, hs)
    }
}

/// True iff `{d : <normal_i, d> >= 0}` is `{0}`. Checked by splitting on the
/// sign pattern of `d` and testing feasibility of `sum |d_i| >= 1`.
fn recession_cone_trivial(dim: usize, hs: &[HalfSpace]) -> bool {
    let base: Vec<fm::Constraint> = hs
        .iter()
        .map(|h| (h.normal.entries().to_vec(), Rational::zero()))
        .collect();
    let one = Rational::from_integer(1.into());
    (0..1u32 << dim).all(|pattern| {
        let signs: Vec<Rational> = (0..dim)
            .map(|j| {
                if pattern >> j & 1 == 1 {
                    -one.clone()
                } else {
                    one.clone()
                }
            })
            .collect();
        let mut system = base.clone();
        for j in 0..dim {
            let mut a = vec![Rational::zero(); dim];
            a[j] = signs[j].clone();
            system.push((a, Rational::zero()));
        }
        system.push((signs, one.clone()));
        !fm::feasible(&system)
    })
}
