use std::fmt;

use super::matrix::{axpy, conj_vector, dot, is_zero_vector, zero_vector};
use super::{BasisCoords, ExactError, Matrix, Scalar, Vector};

/// Linear subspace of a coordinate space, stored by its RREF basis.
///
/// Two spanning sets of the same space give identical values, so `==` is
/// subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|k| super::unit_vector(ambient, k))
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Result<Self, ExactError> {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        let m = Matrix::from_rows(ambient, rows)?;
        Ok(Self::from_matrix(&m))
    }

    /// Span of vectors already known to have length `ambient`.
    pub fn span_of(ambient: usize, vectors: &[Vector]) -> Self {
        Self::span(ambient, vectors.iter().cloned()).expect("vector length")
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the listed coordinate axes.
    pub fn coordinate(ambient: usize, axes: impl IntoIterator<Item = usize>) -> Self {
        let mut axes: Vec<usize> = axes.into_iter().collect();
        axes.sort_unstable();
        axes.dedup();
        let basis = axes.iter().map(|&k| super::unit_vector(ambient, k)).collect();
        Subspace {
            ambient,
            basis,
            pivots: axes,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical basis: the nonzero rows of the RREF.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient, self.basis.clone()).expect("consistent rows")
    }

    pub fn coords(&self) -> BasisCoords {
        BasisCoords::new(self.ambient, self.basis.clone()).expect("independent basis")
    }

    fn check(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Sum with extra vectors.
    pub fn extend(&self, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let mut rows = self.basis.clone();
        for v in vectors {
            assert_eq!(v.len(), self.ambient);
            if !is_zero_vector(&v) {
                rows.push(v);
            }
        }
        Subspace::span_of(self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        // x = Σ aᵢ sᵢ with every annihilator of `other` vanishing on x
        let ann = other.annihilator();
        Ok(self.restrict(|v| ann.iter().map(|f| dot(f, v)).collect::<Vec<_>>()))
    }

    /// Basis of `{f | Σ fₖ vₖ = 0 for all v in self}` (bilinear, no conjugation).
    pub fn annihilator(&self) -> Vec<Vector> {
        if self.is_zero() {
            return (0..self.ambient)
                .map(|k| super::unit_vector(self.ambient, k))
                .collect();
        }
        self.basis_matrix().kernel()
    }

    /// `{x in self | eq(x) = 0}` for a linear map `eq` into scalar lists.
    pub fn restrict<F>(&self, eq: F) -> Subspace
    where
        F: Fn(&Vector) -> Vec<Scalar>,
    {
        let k = self.dim();
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(&eq).collect();
        let m_rows = cols.first().map_or(0, |c| c.len());
        let mut m = Matrix::zeros(m_rows, k);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), m_rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        let combos = if m_rows == 0 {
            (0..k).map(|j| super::unit_vector(k, j)).collect()
        } else {
            m.kernel()
        };
        let vecs: Vec<Vector> = combos.iter().map(|c| self.combine(c)).collect();
        Subspace::span_of(self.ambient, &vecs)
    }

    /// `{x in self | f(x) in target for every f in maps}`.
    pub fn constrained<F>(&self, maps: &[F], target: &Subspace) -> Subspace
    where
        F: Fn(&Vector) -> Vector,
    {
        if target.is_full() {
            return self.clone();
        }
        let ann = target.annihilator();
        self.restrict(|v| {
            let mut out = Vec::with_capacity(maps.len() * ann.len());
            for f in maps {
                let w = f(v);
                out.extend(ann.iter().map(|a| dot(a, &w)));
            }
            out
        })
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, c: &[Scalar]) -> Vector {
        assert_eq!(c.len(), self.dim());
        let mut v = zero_vector(self.ambient);
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(&mut v, ci, b);
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, ExactError> {
        if v.len() != self.ambient {
            return Err(ExactError::AmbientMismatch(self.ambient, v.len()));
        }
        Ok(self.contains_unchecked(v))
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains_unchecked(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Remainder of `v` after eliminating the pivot entries of the basis.
    ///
    /// Zero exactly when `v` lies in the subspace; otherwise a canonical
    /// representative of the coset `v + self`.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &-c, b);
            }
        }
        r
    }

    pub fn leq(&self, other: &Subspace) -> Result<bool, ExactError> {
        self.check(other)?;
        Ok(self.dim() <= other.dim() && self.basis.iter().all(|b| other.contains_unchecked(b)))
    }

    /// Coefficientwise conjugate subspace.
    pub fn conj(&self) -> Subspace {
        if self.is_real() {
            return self.clone();
        }
        Subspace::span_of(
            self.ambient,
            &self.basis.iter().map(|b| conj_vector(b)).collect::<Vec<_>>(),
        )
    }

    /// Whether the canonical basis is real (the subspace is conjugation-stable).
    pub fn is_real(&self) -> bool {
        self.basis.iter().all(|b| super::is_real_vector(b))
    }

    /// Real span of the real and imaginary parts of the basis vectors.
    pub fn real_parts_span(&self) -> Subspace {
        let mut vecs = Vec::with_capacity(2 * self.dim());
        for b in &self.basis {
            vecs.push(b.iter().map(Scalar::re_part).collect());
            vecs.push(b.iter().map(Scalar::im_part).collect());
        }
        Subspace::span_of(self.ambient, &vecs)
    }

    /// Real points `self ∩ ℚⁿ`, as a real subspace.
    pub fn real_points(&self) -> Subspace {
        let stable = self.intersect(&self.conj()).expect("same ambient");
        stable.real_parts_span()
    }

    /// Basis vectors of `self` whose pivots are not pivots of `sub`.
    ///
    /// When `sub ⊆ self` these project to a basis of `self / sub`.
    pub fn complement_in(&self, sub: &Subspace) -> Vec<Vector> {
        debug_assert!(sub.leq(self).unwrap_or(false));
        self.basis
            .iter()
            .zip(&self.pivots)
            .filter(|(_, p)| !sub.pivots.contains(p))
            .map(|(b, _)| b.clone())
            .collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) [", self.dim(), self.ambient)?;
        for b in &self.basis {
            let row: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, " [{}]", row.join(", "))?;
        }
        write!(f, " ]")
    }
}
