use std::fmt;

use serde::{Serialize, Serializer};

use super::ChainError;
use crate::exact::{Scalar, Subspace, Vector};
use crate::lie::LieAlgebra;

/// A real Lie algebra with a subspace `l0` meant to generate it.
#[derive(Clone, Debug)]
pub struct ContactPair {
    algebra: LieAlgebra,
    l0: Subspace,
}

impl ContactPair {
    pub fn new(algebra: LieAlgebra, l0: Subspace) -> Result<Self, ChainError> {
        if l0.ambient() != algebra.dim() {
            return Err(crate::exact::ExactError::AmbientMismatch(algebra.dim(), l0.ambient()).into());
        }
        if !l0.is_real() {
            return Err(ChainError::NotReal);
        }
        Ok(ContactPair { algebra, l0 })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn l0(&self) -> &Subspace {
        &self.l0
    }

    pub fn is_fundamental(&self) -> bool {
        self.algebra.generated_subalgebra(&self.l0).is_full()
    }

    /// The canonical filtration `𝔉ₕ`.
    pub fn filtration(&self) -> Result<ContactFiltration, ChainError> {
        ContactFiltration::compute(&self.algebra, &self.l0)
    }
}

/// Canonical filtration of a contact pair.
///
/// `negative[j]` is `𝔉₋₍ⱼ₊₁₎` for `j < max(μ, 1)`; `positive[h]` is `𝔉ₕ` for
/// `0 ≤ h ≤ stabilized_at`, where `stabilized_at` is the first index with
/// `𝔉ₕ = 𝔉ₕ₊₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactFiltration {
    negative: Vec<Subspace>,
    positive: Vec<Subspace>,
    depth: usize,
}

impl ContactFiltration {
    pub fn compute(algebra: &LieAlgebra, l0: &Subspace) -> Result<Self, ChainError> {
        let n = algebra.dim();
        let mut negative = vec![l0.clone()];
        let mut depth = if l0.is_full() { 0 } else { 1 };
        while !negative.last().unwrap().is_full() {
            let cur = negative.last().unwrap();
            let next = cur.sum(&algebra.bracket_spaces(cur, l0))?;
            if &next == cur {
                return Err(ChainError::NotFundamental { reached: next });
            }
            negative.push(next);
            depth += 1;
        }
        let mut positive: Vec<Subspace> = Vec::new();
        loop {
            let prev = positive.last().unwrap_or(l0);
            let next = algebra.bracket_preimage(l0, l0, prev);
            if positive.last() == Some(&next) {
                break;
            }
            positive.push(next);
        }
        debug_assert!(positive.len() <= n + 1);
        Ok(ContactFiltration {
            negative,
            positive,
            depth,
        })
    }

    /// Smallest `μ ≥ 0` with `𝔉₋μ = 𝔤₀`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// First `h ≥ 0` with `𝔉ₕ = 𝔉ₕ₊₁`.
    pub fn stabilized_at(&self) -> usize {
        self.positive.len() - 1
    }

    /// `𝔠₀ = ∩ 𝔉ₕ`.
    pub fn c0(&self) -> &Subspace {
        self.positive.last().unwrap()
    }

    pub fn ambient(&self) -> usize {
        self.negative[0].ambient()
    }

    /// `𝔉ₕ` for any integer `h`.
    pub fn term(&self, h: i64) -> Subspace {
        if h >= 0 {
            let h = (h as usize).min(self.stabilized_at());
            self.positive[h].clone()
        } else {
            let j = (-h - 1) as usize;
            match self.negative.get(j) {
                Some(s) => s.clone(),
                None => Subspace::full(self.ambient()),
            }
        }
    }

    /// Stored index range `[-max(μ,1), stabilized_at]` with its terms.
    pub fn terms(&self) -> Vec<(i64, Subspace)> {
        let lo = -(self.negative.len() as i64);
        (lo..=self.stabilized_at() as i64).map(|h| (h, self.term(h))).collect()
    }

    /// Checks `[𝔉ₐ, 𝔉_b] ⊆ 𝔉ₐ₊_b` over the stored range plus one index.
    pub fn satisfies_filtration_law(&self, algebra: &LieAlgebra) -> bool {
        let lo = -(self.negative.len() as i64) - 1;
        let hi = self.stabilized_at() as i64 + 1;
        for a in lo..=hi {
            for b in a..=hi {
                let br = algebra.bracket_spaces(&self.term(a), &self.term(b));
                if !br.leq(&self.term(a + b)).unwrap() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_descending(&self) -> bool {
        let t = self.terms();
        t.windows(2).all(|w| w[1].1.leq(&w[0].1).unwrap())
    }
}

/// Order of degeneracy of a contact triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degeneracy {
    Finite(usize),
    Infinite,
}

impl Degeneracy {
    pub fn is_finite(self) -> bool {
        matches!(self, Degeneracy::Finite(_))
    }
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::Finite(k) => write!(f, "{k}"),
            Degeneracy::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Degeneracy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degeneracy::Finite(k) => s.serialize_u64(*k as u64),
            Degeneracy::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Iterated-bracket certificate: `[x, X₀, …, Xₖ] = value ∉ l0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub x: Vector,
    pub sequence: Vec<Vector>,
    pub value: Vector,
}

impl Witness {
    /// Recomputes the iterated bracket and checks it leaves `l0`.
    pub fn verify(&self, algebra: &LieAlgebra, l0: &Subspace) -> bool {
        let mut cur = self.x.clone();
        for y in &self.sequence {
            if !l0.contains_unchecked(y) {
                return false;
            }
            cur = algebra.bracket(&cur, y);
        }
        cur == self.value && !l0.contains_unchecked(&cur)
    }
}

/// Contact pair together with an isotropy subalgebra `h0`.
#[derive(Clone, Debug)]
pub struct ContactTriple {
    pair: ContactPair,
    h0: Subspace,
    filtration: ContactFiltration,
}

impl ContactTriple {
    /// Validates the triple clause by clause, then computes the filtration.
    pub fn new(pair: ContactPair, h0: Subspace) -> Result<Self, ChainError> {
        let a = &pair.algebra;
        if h0.ambient() != a.dim() {
            return Err(crate::exact::ExactError::AmbientMismatch(a.dim(), h0.ambient()).into());
        }
        if !h0.is_real() {
            return Err(ChainError::NotReal);
        }
        if !a.is_subalgebra(&h0) {
            return Err(ChainError::NotSubalgebra);
        }
        if !h0.leq(&pair.l0)? {
            return Err(ChainError::NotContainedInL0);
        }
        if !a.bracket_spaces(&h0, &pair.l0).leq(&pair.l0)? {
            return Err(ChainError::NotL0Stable);
        }
        let ideal = a.largest_ideal_in(&h0);
        if !ideal.is_zero() {
            return Err(ChainError::NotTransitive { ideal });
        }
        let filtration = pair.filtration()?;
        Ok(ContactTriple {
            pair,
            h0,
            filtration,
        })
    }

    pub fn pair(&self) -> &ContactPair {
        &self.pair
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.pair.algebra
    }

    pub fn l0(&self) -> &Subspace {
        &self.pair.l0
    }

    pub fn h0(&self) -> &Subspace {
        &self.h0
    }

    pub fn filtration(&self) -> &ContactFiltration {
        &self.filtration
    }

    /// `𝔉₀ = h0`.
    pub fn is_strict(&self) -> bool {
        self.filtration.term(0) == self.h0
    }

    /// Every ideal contained in `l0` lies in `h0`.
    pub fn is_nondegenerate_by_ideals(&self) -> bool {
        self.algebra().largest_ideal_in(self.l0()).leq(&self.h0).unwrap()
    }

    /// 0 when strict, else the least `k ≥ 1` with `𝔉ₖ ⊆ h0`, else infinite.
    pub fn degeneracy_order(&self) -> Degeneracy {
        let by_chain = self.filtration.c0().leq(&self.h0).unwrap();
        assert_eq!(
            by_chain,
            self.is_nondegenerate_by_ideals(),
            "c0 and the largest ideal in l0 disagree"
        );
        if self.is_strict() {
            return Degeneracy::Finite(0);
        }
        if !by_chain {
            return Degeneracy::Infinite;
        }
        let k = (1..=self.filtration.stabilized_at().max(1))
            .find(|&k| self.filtration.term(k as i64).leq(&self.h0).unwrap())
            .expect("c0 ⊆ h0 gives a finite order");
        Degeneracy::Finite(k)
    }

    /// Builds `[x, X₀, …, Xₖ] ∉ l0` by descending the filtration.
    ///
    /// Returns `Ok(None)` when `x ∈ 𝔠₀`, where no certificate exists.
    pub fn bracket_witness(&self, x: &[Scalar]) -> Result<Option<Witness>, ChainError> {
        let l0 = self.l0();
        if x.len() != l0.ambient() || !l0.contains_unchecked(x) || self.h0.contains_unchecked(x) {
            return Err(ChainError::WitnessDomain);
        }
        let f = &self.filtration;
        if f.c0().contains_unchecked(x) {
            return Ok(None);
        }
        let a = self.algebra();
        let mut cur = x.to_vec();
        let mut sequence = Vec::new();
        while l0.contains_unchecked(&cur) {
            // cur ∈ 𝔉ⱼ \ 𝔉ⱼ₊₁ with j ≥ -1
            let j = (0..=f.stabilized_at() as i64)
                .find(|&h| !f.term(h).contains_unchecked(&cur))
                .expect("outside c0")
                - 1;
            let target = f.term(j);
            let y = l0
                .basis()
                .iter()
                .find(|y| !target.contains_unchecked(&a.bracket(&cur, y)))
                .expect("definition of the positive terms")
                .clone();
            cur = a.bracket(&cur, &y);
            sequence.push(y);
        }
        Ok(Some(Witness {
            x: x.to_vec(),
            sequence,
            value: cur,
        }))
    }
}
