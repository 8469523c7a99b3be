//! Exact scalars over ℚ and ℚ(i) and canonical-form linear algebra.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{
    add_vectors, axpy, conj_vector, dot, is_real_vector, is_zero_vector, scale_vector,
    sub_vectors, unit_vector, zero_vector, BasisCoords, Matrix, SparseSystem, Vector,
};
pub use scalar::Scalar;
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("vectors are linearly dependent")]
    DependentVectors,
}
