//! Canonical filtration of a contact pair, descending chains of a CR
//! algebra, and the nondegeneracy classifications built on them.

mod contact;
mod cr;

pub use contact::{ContactFiltration, ContactPair, ContactTriple, Degeneracy, Witness};
pub use cr::{CRAlgebra, CRChain, Classification};

use crate::exact::{ExactError, Subspace};
use crate::lie::LieError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChainError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("subspace is not real")]
    NotReal,
    #[error("l0 does not generate the algebra (generated {} of {} dimensions)", .reached.dim(), .reached.ambient())]
    NotFundamental { reached: Subspace },
    #[error("h0 is not a subalgebra")]
    NotSubalgebra,
    #[error("h0 is not contained in l0")]
    NotContainedInL0,
    #[error("[h0, l0] is not contained in l0")]
    NotL0Stable,
    #[error("h0 contains a nonzero ideal of dimension {}", .ideal.dim())]
    NotTransitive { ideal: Subspace },
    #[error("q is not a complex subalgebra")]
    QNotSubalgebra,
    #[error("vector must lie in l0 and outside h0")]
    WitnessDomain,
}
