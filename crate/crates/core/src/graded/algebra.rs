use std::collections::BTreeMap;
use std::ops::Range;

use super::GradedError;
use crate::chains::ContactFiltration;
use crate::exact::{is_zero_vector, BasisCoords, Scalar, Subspace, Vector};
use crate::lie::{Field, LieAlgebra};

/// Z-graded Lie algebra on a basis sorted by degree.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    algebra: LieAlgebra,
    degrees: Vec<i64>,
    lifts: Option<Vec<Vector>>,
}

impl GradedLieAlgebra {
    /// `degrees` must be nondecreasing and brackets must respect them.
    pub fn new(algebra: LieAlgebra, degrees: Vec<i64>) -> Self {
        assert_eq!(algebra.dim(), degrees.len());
        assert!(degrees.windows(2).all(|w| w[0] <= w[1]), "basis must be sorted by degree");
        GradedLieAlgebra {
            algebra,
            degrees,
            lifts: None,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Representatives in the filtered algebra, one per basis element.
    pub fn lifts(&self) -> Option<&[Vector]> {
        self.lifts.as_deref()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.first().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.last().copied()
    }

    pub fn indices(&self, h: i64) -> Range<usize> {
        let lo = self.degrees.partition_point(|&d| d < h);
        let hi = self.degrees.partition_point(|&d| d <= h);
        lo..hi
    }

    pub fn component_dim(&self, h: i64) -> usize {
        self.indices(h).len()
    }

    pub fn component(&self, h: i64) -> Subspace {
        Subspace::coordinate(self.dim(), self.indices(h))
    }

    /// Nonzero components as `(degree, dim)`.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &d in &self.degrees {
            match out.last_mut() {
                Some((h, n)) if *h == d => *n += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.algebra.bracket(x, y)
    }

    pub fn basis_vector(&self, k: usize) -> Vector {
        self.algebra.basis_vector(k)
    }

    /// `[Gₐ, G_b] ⊆ Gₐ₊_b` on basis pairs.
    pub fn respects_grading(&self) -> bool {
        self.algebra.structure_constants().iter().all(|(&(i, j), terms)| {
            let d = self.degrees[i] + self.degrees[j];
            terms.iter().all(|(k, _)| self.degrees[*k] == d)
        })
    }

    /// The subalgebra of negative degrees.
    pub fn negative_part(&self) -> GradedLieAlgebra {
        self.truncate(self.degrees.partition_point(|&d| d < 0))
    }

    /// Restriction to the first `n` basis elements, which must span a subalgebra.
    fn truncate(&self, n: usize) -> GradedLieAlgebra {
        let brackets: Vec<_> = self
            .algebra
            .structure_constants()
            .iter()
            .filter(|((i, j), _)| *i < n && *j < n)
            .map(|(&(i, j), t)| {
                assert!(t.iter().all(|(k, _)| *k < n), "prefix is not a subalgebra");
                ((i, j), t.clone())
            })
            .collect();
        let alg = LieAlgebra::new(
            self.algebra.name(),
            self.algebra.field(),
            self.algebra.labels()[..n].to_vec(),
            brackets,
        )
        .expect("restricted table");
        GradedLieAlgebra {
            algebra: alg,
            degrees: self.degrees[..n].to_vec(),
            lifts: self.lifts.as_ref().map(|l| l[..n].to_vec()),
        }
    }

    /// Negative part is generated by `G₋₁`.
    pub fn is_fundamental(&self) -> bool {
        let lo = match self.min_degree() {
            Some(lo) if lo < 0 => lo,
            _ => return true,
        };
        let m1 = self.component(-1);
        let mut cur = m1.clone();
        for h in (lo..-1).rev() {
            let next = self.algebra.bracket_spaces(&cur, &m1);
            if next != self.component(h) {
                return false;
            }
            cur = next;
        }
        true
    }

    /// For each `h ≥ 0`, no nonzero element of `Gₕ` commutes with `G₋₁`.
    pub fn is_transitive(&self) -> bool {
        let m1 = self.component(-1);
        let zero = Subspace::zero(self.dim());
        self.dims()
            .iter()
            .filter(|(h, _)| *h >= 0)
            .all(|(h, _)| self.algebra.bracket_preimage(&self.component(*h), &m1, &zero).is_zero())
    }

    /// `G′ₚ = {η ∈ Gₚ | [η, Gₕ] = 0 for h ≤ −2}`.
    pub fn g_prime(&self, p: i64) -> Subspace {
        let lo = self.degrees.partition_point(|&d| d < -1);
        let deep = Subspace::coordinate(self.dim(), 0..lo);
        self.algebra
            .bracket_preimage(&self.component(p), &deep, &Subspace::zero(self.dim()))
    }

    /// `ω(ξ₁, ξ₂) = [ξ₁, ξ₂]` on `G₋₁`.
    pub fn levi_form(&self) -> Result<LeviForm, GradedError> {
        if self.component_dim(-2) == 0 {
            return Err(GradedError::DepthTooSmall);
        }
        let idx: Vec<usize> = self.indices(-1).collect();
        let values = idx
            .iter()
            .map(|&a| {
                idx.iter()
                    .map(|&b| self.bracket(&self.basis_vector(a), &self.basis_vector(b)))
                    .collect()
            })
            .collect();
        Ok(LeviForm {
            ambient: self.dim(),
            values,
        })
    }

    /// `η_k(ξ₁, …, ξ_k) = [η, ξ₁, …, ξ_k]` on basis tuples of `G₋₁`.
    pub fn iterated_map(&self, eta: &[Scalar], k: usize) -> MultilinearMap {
        let m1: Vec<usize> = self.indices(-1).collect();
        let mut values = BTreeMap::new();
        let mut frontier: Vec<(Vec<usize>, Vector)> = vec![(Vec::new(), eta.to_vec())];
        for _ in 0..k {
            let mut next = Vec::with_capacity(frontier.len() * m1.len());
            for (args, v) in &frontier {
                for (a, &idx) in m1.iter().enumerate() {
                    let mut t = args.clone();
                    t.push(a);
                    next.push((t, self.bracket(v, &self.basis_vector(idx))));
                }
            }
            frontier = next;
        }
        for (args, v) in frontier {
            values.insert(args, v);
        }
        MultilinearMap { arity: k, values }
    }
}

/// `G₋₂`-valued alternating form on `G₋₁`, in graded coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviForm {
    ambient: usize,
    /// `values[a][b] = ω(ξₐ, ξ_b)` for the basis of `G₋₁`.
    pub values: Vec<Vec<Vector>>,
}

impl LeviForm {
    pub fn is_alternating(&self) -> bool {
        let n = self.values.len();
        (0..n).all(|a| {
            is_zero_vector(&self.values[a][a])
                && (0..n).all(|b| {
                    self.values[a][b]
                        .iter()
                        .zip(&self.values[b][a])
                        .all(|(x, y)| (x + y).is_zero())
                })
        })
    }

    /// `{ξ | ω(ξ, ·) = 0}` in `G₋₁` coordinates.
    pub fn kernel(&self) -> Subspace {
        let n = self.values.len();
        Subspace::full(n).restrict(|xi| {
            let mut out = Vec::with_capacity(n * self.ambient);
            for b in 0..n {
                let mut acc = crate::exact::zero_vector(self.ambient);
                for (a, c) in xi.iter().enumerate() {
                    crate::exact::axpy(&mut acc, c, &self.values[a][b]);
                }
                out.extend(acc);
            }
            out
        })
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.kernel().is_zero()
    }
}

/// Multilinear map on basis tuples of `G₋₁` (local indices).
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearMap {
    pub arity: usize,
    pub values: BTreeMap<Vec<usize>, Vector>,
}

impl MultilinearMap {
    /// Invariance under every permutation of arguments, checked on sorted tuples.
    pub fn is_symmetric(&self) -> bool {
        self.values.iter().all(|(args, v)| {
            let mut s = args.clone();
            s.sort_unstable();
            &self.values[&s] == v
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| is_zero_vector(v))
    }
}

/// `G = ⊕ 𝔉ₕ/𝔉ₕ₊₁` with brackets induced on pivot-complement lifts.
pub fn associated_graded(algebra: &LieAlgebra, f: &ContactFiltration) -> GradedLieAlgebra {
    let terms = f.terms();
    let lo = terms.first().unwrap().0;
    let hi = f.stabilized_at() as i64;
    let mut lifts = Vec::new();
    let mut degrees = Vec::new();
    let mut coords: BTreeMap<i64, (usize, usize, BasisCoords)> = BTreeMap::new();
    for h in lo..hi {
        let (fh, fh1) = (f.term(h), f.term(h + 1));
        let comp = fh.complement_in(&fh1);
        if comp.is_empty() {
            continue;
        }
        let start = lifts.len();
        let mut basis = comp.clone();
        basis.extend(fh1.basis().iter().cloned());
        let bc = BasisCoords::new(algebra.dim(), basis).expect("complement spans quotient");
        coords.insert(h, (start, comp.len(), bc));
        degrees.extend(std::iter::repeat_n(h, comp.len()));
        lifts.extend(comp);
    }
    let mut brackets = Vec::new();
    for i in 0..lifts.len() {
        for j in i + 1..lifts.len() {
            let d = degrees[i] + degrees[j];
            let w = algebra.bracket(&lifts[i], &lifts[j]);
            assert!(
                f.term(d).contains_unchecked(&w),
                "bracket of degree {} and {} leaves the filtration level",
                degrees[i],
                degrees[j]
            );
            let Some((start, len, bc)) = coords.get(&d) else {
                continue;
            };
            let c = bc.coords(&w).expect("member of the filtration level");
            let terms: Vec<(usize, Scalar)> = c[..*len]
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (start + k, x.clone()))
                .collect();
            if !terms.is_empty() {
                brackets.push(((i, j), terms));
            }
        }
    }
    let mut counters: BTreeMap<i64, usize> = BTreeMap::new();
    let labels = degrees
        .iter()
        .map(|d| {
            let c = counters.entry(*d).or_default();
            *c += 1;
            format!("g[{d}]_{c}")
        })
        .collect();
    let alg = LieAlgebra::new(format!("gr({})", algebra.name()), Field::Rational, labels, brackets)
        .expect("graded table");
    GradedLieAlgebra {
        algebra: alg,
        degrees,
        lifts: Some(lifts),
    }
}
