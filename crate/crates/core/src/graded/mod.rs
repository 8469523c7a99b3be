//! Associated graded algebras, Levi form and partial complex structure,
//! and degree-by-degree Tanaka prolongation.

mod algebra;
mod complex;
mod prolong;

pub use algebra::{associated_graded, GradedLieAlgebra, LeviForm, MultilinearMap};
pub use complex::{complex_structure, ComplexStructure};
pub use prolong::{degree_zero_action, finiteness_check, tanaka_prolong, DegreeZero, Finiteness, Prolongation, Termination};

use crate::chains::ChainError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GradedError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("negative part is not generated by degree -1")]
    NotFundamental,
    #[error("degree-0 maps fail the derivation identity")]
    NotDerivations,
    #[error("degree-0 maps do not act faithfully on degree -1")]
    NotFaithful,
    #[error("degree-0 maps are not closed under commutator")]
    DegreeZeroNotClosed,
    #[error("the Levi form needs a nonzero degree -2 component")]
    DepthTooSmall,
    #[error("prolongation reached degree {0} without vanishing")]
    CapReached(i64),
    #[error("G'_{degree} is nonzero (dimension {dim})")]
    GPrimeNonzero { degree: i64, dim: usize },
}
