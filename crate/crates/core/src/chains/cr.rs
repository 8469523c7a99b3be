use serde::Serialize;

use super::{ChainError, ContactPair, ContactTriple, Degeneracy};
use crate::exact::Subspace;
use crate::lie::{ComplexifiedAlgebra, LieAlgebra};

/// A real Lie algebra with a complex subalgebra `q` of its complexification.
#[derive(Clone, Debug)]
pub struct CRAlgebra {
    complexified: ComplexifiedAlgebra,
    q: Subspace,
}

/// The chains `q̄⁽ʰ⁾` and `q̃⁽ʰ⁾` up to their common length `ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct CRChain {
    /// `q̄⁽⁰⁾, …, q̄⁽ᵛ⁾`
    pub qbar: Vec<Subspace>,
    /// `q̃⁽⁰⁾, …, q̃⁽ᵛ⁾`
    pub qtilde: Vec<Subspace>,
    /// First index after which both chains are constant.
    pub nu: usize,
    /// `q′ = q + ∩ q̄⁽ʰ⁾`
    pub hull: Subspace,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub fundamental: bool,
    pub strict: bool,
    pub weak: bool,
    pub nu: usize,
    /// `ν − 1` (0 when `ν = 0`) for weakly nondegenerate algebras.
    pub cr_order: Option<usize>,
    pub hull_dim: usize,
    pub q_dim: usize,
    /// Degeneracy order of the associated contact triple, when it is one.
    pub contact_order: Option<Degeneracy>,
}

impl CRAlgebra {
    pub fn new(real_form: &LieAlgebra, q: Subspace) -> Result<Self, ChainError> {
        if q.ambient() != real_form.dim() {
            return Err(crate::exact::ExactError::AmbientMismatch(real_form.dim(), q.ambient()).into());
        }
        let complexified = real_form.complexify();
        if !complexified.algebra().is_subalgebra(&q) {
            return Err(ChainError::QNotSubalgebra);
        }
        Ok(CRAlgebra { complexified, q })
    }

    pub fn real_form(&self) -> &LieAlgebra {
        self.complexified.real_form()
    }

    pub fn complexified(&self) -> &ComplexifiedAlgebra {
        &self.complexified
    }

    pub fn q(&self) -> &Subspace {
        &self.q
    }

    pub fn qbar(&self) -> Subspace {
        self.q.conj()
    }

    /// `(q̃₀, q̆₀) = ((q + q̄) ∩ 𝔤₀, q ∩ q̄ ∩ 𝔤₀)`.
    pub fn real_traces(&self) -> (Subspace, Subspace) {
        self.complexified.real_trace(&self.q)
    }

    pub fn is_fundamental(&self) -> bool {
        let (tilde0, _) = self.real_traces();
        self.real_form().generated_subalgebra(&tilde0).is_full()
    }

    pub fn chains(&self) -> CRChain {
        let g = self.complexified.algebra();
        let qbar0 = self.qbar();
        let mut qbar = vec![qbar0.clone()];
        let mut qtilde = vec![self.q.sum(&qbar0).unwrap()];
        loop {
            let prev_bar = qbar.last().unwrap();
            let prev_tilde = qtilde.last().unwrap();
            let next = g.bracket_preimage(prev_bar, &self.q, prev_tilde);
            if &next == prev_bar {
                break;
            }
            qtilde.push(self.q.sum(&next).unwrap());
            qbar.push(next);
        }
        let nu = qbar.len() - 1;
        let hull = qtilde.last().unwrap().clone();
        debug_assert_eq!(hull, self.q.sum(qbar.last().unwrap()).unwrap());
        CRChain {
            qbar,
            qtilde,
            nu,
            hull,
        }
    }

    /// `q̄⁽¹⁾ = q ∩ q̄`.
    pub fn is_strict(&self) -> bool {
        let g = self.complexified.algebra();
        let qbar = self.qbar();
        let tilde = self.q.sum(&qbar).unwrap();
        g.bracket_preimage(&qbar, &self.q, &tilde) == self.q.intersect(&qbar).unwrap()
    }

    /// The hull `q′` equals `q`.
    pub fn is_weak(&self) -> bool {
        self.chains().hull == self.q
    }

    /// The algebra with `q` replaced by its hull `q′`.
    pub fn wn_hull(&self) -> CRAlgebra {
        let hull = self.chains().hull;
        CRAlgebra {
            complexified: self.complexified.clone(),
            q: hull,
        }
    }

    /// `(𝔤₀, q̆₀, q̃₀)` as a validated contact triple.
    pub fn associated_triple(&self) -> Result<ContactTriple, ChainError> {
        let (tilde0, breve0) = self.real_traces();
        let pair = ContactPair::new(self.real_form().clone(), tilde0)?;
        if !pair.is_fundamental() {
            let reached = self.real_form().generated_subalgebra(pair.l0());
            return Err(ChainError::NotFundamental { reached });
        }
        ContactTriple::new(pair, breve0)
    }

    pub fn classify(&self) -> Result<Classification, ChainError> {
        let chain = self.chains();
        let strict = self.is_strict();
        let weak = chain.hull == self.q;
        let fundamental = self.is_fundamental();
        let contact_order = if fundamental {
            match self.associated_triple() {
                Ok(t) => Some(t.degeneracy_order()),
                Err(ChainError::NotTransitive { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        assert!(!strict || weak, "strict nondegeneracy without weak nondegeneracy");
        if weak {
            if let Some(k) = contact_order {
                assert!(k.is_finite(), "weak nondegeneracy without contact nondegeneracy");
            }
        }
        Ok(Classification {
            fundamental,
            strict,
            weak,
            nu: chain.nu,
            cr_order: weak.then(|| chain.nu.max(1) - 1),
            hull_dim: chain.hull.dim(),
            q_dim: self.q.dim(),
            contact_order,
        })
    }
}
