//! Exact-arithmetic lattice toolkit.
//!
//! Provides rational Gram-matrix lattices with exact determinants, signatures,
//! discriminant groups (via Smith normal form), dual bases, saturations and
//! orthogonal complements, plus a fixed coordinate model of `E8` inside `Z^8`
//! together with its `A2 ⊥ E6` substructure and the distinguished vectors and
//! cosets used by the certificate search and the theta-series tooling.
//!
//! All public arithmetic is exact (`BigRational`/`BigInt`); no floating point
//! enters any result.

pub mod intmat;
pub mod lattice;
pub mod matrix;
pub mod model;
pub mod rat;
pub mod sublattice;

pub use lattice::{bn_lattice, standard_lattice, Definiteness, Lattice};
pub use model::{model, Model, MODEL_ID};
pub use rat::{frac, rat, Rat};
pub use sublattice::Sublattice;

use num_bigint::BigInt;

/// Errors reported by lattice constructions and queries.
#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("gram matrix is not square ({rows} rows, {cols} cols in row {row})")]
    NotSquare { rows: usize, cols: usize, row: usize },
    #[error("gram matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("gram matrix is not integral; {0} requires an integral lattice")]
    NotIntegral(&'static str),
    #[error("unknown lattice name: {0}")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sublattice basis vectors are linearly dependent")]
    DependentBasis,
    #[error("vector has wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("induced pairing on the sublattice is degenerate")]
    DegenerateInducedForm,
    #[error("linear system is inconsistent")]
    Inconsistent,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, LatticeError>;

/// Integer column vector type used for sublattice bases.
pub type IntVec = Vec<BigInt>;
