//! Exact computations on moment polytopes of torus actions.
//!
//! The crate works entirely over the rationals. It covers:
//!
//! - [`polytope`]: compact rational polytopes from half-space data, vertex and
//!   edge enumeration, the Delzant (simple/rational/smooth) checks, and
//!   brute-force volume and lattice-point oracles.
//! - [`polar`]: polarized tangent cones and the signed cone decomposition of
//!   a simple polytope's indicator function, with signed lattice counting.
//! - [`gkm`]: moment graphs and the ring of polynomial tuples satisfying the
//!   edge divisibility conditions, together with Morse-theoretic Betti numbers.
//! - [`localization`]: fixed-point sums for equivariant push-forwards and the
//!   vertex formula for polytope volume.
//!
//! Cohomological degree `2k` is always represented by polynomial degree `k`.

pub mod algebra;
pub mod error;
pub mod gkm;
pub mod io;
pub mod localization;
pub mod polar;
pub mod polytope;

pub use algebra::{primitive, LinearForm, Monomial, MultiPoly, Rational, RationalVec};
pub use error::{Error, Result};
pub use gkm::{BettiProfile, GkmClass, MomentGraph};
pub use localization::{EvaluationPoint, FixedPointData};
pub use polar::{PolarDecomposition, PolarizedCone, PolarizingVector, TangentCone};
pub use polytope::{BuilderSpec, HalfSpace, LatticeBox, Polytope, VertexFigure};
