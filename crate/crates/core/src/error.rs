use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive multiple")]
    ZeroVector,
    #[error("zero linear form cannot be used as a divisor")]
    ZeroLinearForm,
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("feasible region is empty")]
    Empty,
    #[error("feasible region is unbounded")]
    Unbounded,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("polytope is not simple")]
    NotSimple,
    #[error("non-simple vertex unsupported: cone generators are linearly dependent")]
    NonSimpleVertex,
    #[error("polytope is not Delzant: {0}")]
    NotDelzant(String),
    #[error("vector is not polarizing: it pairs to zero with edge {0}")]
    NotPolarizing(String),
    #[error("vector is not generic: it pairs to zero with edge {0}")]
    NotGeneric(String),
    #[error("weight vanishes at evaluation point ({0})")]
    WeightVanishes(String),
    #[error("lattice box does not contain the polytope")]
    BoxTooSmall,
    #[error("class fails the divisibility conditions on edges {0:?}")]
    NotGkmClass(Vec<usize>),
    #[error("free module check failed at degree {0}")]
    FreeModuleCheckFailed(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}
