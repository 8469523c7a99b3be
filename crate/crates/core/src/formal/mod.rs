//! Truncated formal vector fields: BCH coefficients, invariant and star
//! fields of a transitive pair, realization kernels and truncated symmetry
//! algebras of invariant modules.

mod bch;
mod field;
mod fp;
mod star;
mod symmetry;

pub use bch::bch_coefficients;
pub use field::{monomials, Mono, TruncatedSeries, TruncatedVectorField};
pub use fp::{FpCheck, ModP};
pub use star::{invariant_fields, StarFields, StarRealization};
pub use symmetry::{module_generated, realization_kernel, truncated_symmetries, Distribution, ModuleGenerators, SymmetryTable};

use crate::exact::ExactError;
use crate::lie::LieError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormalError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("isotropy is not a subalgebra")]
    IsotropyNotSubalgebra,
    #[error("V is not a complement of the isotropy")]
    ComplementInvalid,
    #[error("bracket needs order at least 1")]
    OrderExhausted,
    #[error("fields live on spaces of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("structure constants do not reduce mod p")]
    ModularReduction,
    #[error("distribution must contain the isotropy and be stable under it")]
    ModuleConditionsViolated,
}
