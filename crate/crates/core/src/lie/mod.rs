//! Lie algebras given by structure constants, their complexifications and
//! subspace machinery (generated subalgebras, largest ideals).

mod algebra;
mod manifest;
mod matrices;
pub mod presets;

pub use algebra::{ComplexifiedAlgebra, Field, LieAlgebra};
pub use manifest::{BracketEntry, Manifest, SubspaceFile, TermEntry};
pub use matrices::{flatten_matrix, from_matrices, MatrixEmbedding};

use crate::exact::{ExactError, Vector};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("Jacobi identity fails on basis triple {triple:?}")]
    JacobiViolation {
        triple: (usize, usize, usize),
        residual: Vector,
    },
    #[error("commutator of generators {0} and {1} leaves their span")]
    NotClosed(usize, usize),
    #[error("generator matrices are linearly dependent")]
    DependentGenerators,
    #[error("structure constants of [{0},{1}] are not real")]
    NonRealConstants(usize, usize),
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
}
