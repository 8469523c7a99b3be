use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::LieError;
use crate::exact::{axpy, conj_vector, is_zero_vector, zero_vector, Scalar, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Rational => "Q",
            Field::Gaussian => "Q(i)",
        })
    }
}

type Terms = Vec<(usize, Scalar)>;

/// Finite-dimensional Lie algebra with sparse structure constants.
///
/// Only `[eᵢ, eⱼ]` with `i < j` is stored; the full table used by
/// [`LieAlgebra::bracket`] is derived from it by antisymmetry.
#[derive(Clone)]
pub struct LieAlgebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    upper: BTreeMap<(usize, usize), Terms>,
    table: Vec<Terms>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.labels.len() == other.labels.len() && self.upper == other.upper
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?}, dim {}, {})", self.name, self.dim(), self.field)
    }
}

impl LieAlgebra {
    /// Builds an algebra from `[eᵢ, eⱼ]` for `i < j`. Zero terms are dropped
    /// and repeated indices summed; pairs with `i >= j` are rejected.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Terms)>,
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let mut upper: BTreeMap<(usize, usize), Terms> = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= j || j >= n {
                return Err(LieError::Manifest(format!("bad bracket index pair ({i},{j})")));
            }
            let mut v = zero_vector(n);
            for (k, c) in terms {
                if k >= n {
                    return Err(LieError::Manifest(format!("term index {k} out of range")));
                }
                if field == Field::Rational && !c.is_real() {
                    return Err(LieError::NonRealConstants(i, j));
                }
                v[k] += &c;
            }
            let entry = upper.entry((i, j)).or_default();
            let mut acc = zero_vector(n);
            for (k, c) in entry.drain(..) {
                acc[k] = c;
            }
            axpy(&mut acc, &Scalar::one(), &v);
            *entry = sparse(&acc);
        }
        upper.retain(|_, t| !t.is_empty());
        let mut table = vec![Vec::new(); n * n];
        for (&(i, j), t) in &upper {
            table[i * n + j] = t.clone();
            table[j * n + i] = t.iter().map(|(k, c)| (*k, -c)).collect();
        }
        Ok(LieAlgebra {
            name: name.into(),
            field,
            labels,
            upper,
            table,
        })
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|k| format!("e{k}")).collect();
        LieAlgebra::new(format!("abelian:{n}"), Field::Rational, labels, []).expect("abelian")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Stored brackets `[eᵢ, eⱼ]`, `i < j`, nonzero only.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.upper
    }

    /// `[eᵢ, eⱼ]` as sparse terms (any order of `i`, `j`).
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_vector(&self, k: usize) -> Vector {
        crate::exact::unit_vector(self.dim(), k)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.dim(), "bracket: dimension mismatch");
        assert_eq!(y.len(), self.dim(), "bracket: dimension mismatch");
        let n = self.dim();
        let mut out = zero_vector(n);
        let ys: Vec<(usize, &Scalar)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &ys {
                let t = &self.table[i * n + j];
                if t.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in t {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    pub fn try_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, LieError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(crate::exact::ExactError::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                }
                .into());
            }
        }
        Ok(self.bracket(x, y))
    }

    /// `[x, eⱼ]` for every basis index `j`.
    pub fn ad_images(&self, x: &[Scalar]) -> Vec<Vector> {
        (0..self.dim()).map(|j| self.bracket(x, &self.basis_vector(j))).collect()
    }

    fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vector {
        let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
        let mut r = self.bracket(&self.bracket(&a, &b), &c);
        axpy(&mut r, &Scalar::one(), &self.bracket(&self.bracket(&b, &c), &a));
        axpy(&mut r, &Scalar::one(), &self.bracket(&self.bracket(&c, &a), &b));
        r
    }

    /// Checks the Jacobi identity on all basis triples `i < j < k`.
    ///
    /// The Jacobiator is alternating, so these triples cover every ordered one.
    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let r = self.jacobi_residual(i, j, k);
                    if !is_zero_vector(&r) {
                        return Err(LieError::JacobiViolation {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of `[a, b]` for `a` in `s`, `b` in `t`.
    pub fn bracket_spaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                let v = self.bracket(a, b);
                if !is_zero_vector(&v) {
                    out.push(v);
                }
            }
        }
        Subspace::span_of(self.dim(), &out)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .enumerate()
            .all(|(k, a)| s.basis()[k + 1..].iter().all(|b| s.contains_unchecked(&self.bracket(a, b))))
    }

    /// Whether `[eⱼ, s] ⊆ s` for all basis vectors `eⱼ`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|a| (0..self.dim()).all(|j| s.contains_unchecked(&self.bracket(&self.basis_vector(j), a))))
    }

    /// Smallest subalgebra containing `s`.
    pub fn generated_subalgebra(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let next = cur.sum(&self.bracket_spaces(&cur, &cur)).expect("same ambient");
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Largest ideal contained in `s`.
    pub fn largest_ideal_in(&self, s: &Subspace) -> Subspace {
        let ads: Vec<_> = (0..self.dim())
            .map(|j| {
                let e = self.basis_vector(j);
                move |x: &Vector| self.bracket(&e, x)
            })
            .collect();
        let mut cur = s.clone();
        loop {
            let next = cur.constrained(&ads, &cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `{x in s | [x, t] ⊆ target}`.
    pub fn bracket_preimage(&self, s: &Subspace, t: &Subspace, target: &Subspace) -> Subspace {
        let maps: Vec<_> = t
            .basis()
            .iter()
            .map(|b| move |x: &Vector| self.bracket(x, b))
            .collect();
        s.constrained(&maps, target)
    }

    pub fn center(&self) -> Subspace {
        self.bracket_preimage(&Subspace::full(self.dim()), &Subspace::full(self.dim()), &Subspace::zero(self.dim()))
    }

    /// The same structure constants over ℚ(i), with coefficientwise conjugation.
    pub fn complexify(&self) -> ComplexifiedAlgebra {
        ComplexifiedAlgebra {
            real: self.clone(),
            complex: LieAlgebra {
                field: Field::Gaussian,
                ..self.clone()
            },
        }
    }
}

fn sparse(v: &[Scalar]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Complexification of a real form over ℚ, in the real form's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexifiedAlgebra {
    real: LieAlgebra,
    complex: LieAlgebra,
}

impl ComplexifiedAlgebra {
    pub fn real_form(&self) -> &LieAlgebra {
        &self.real
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.real.dim()
    }

    pub fn conj(&self, v: &[Scalar]) -> Vector {
        conj_vector(v)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.complex.bracket(x, y)
    }

    /// Real traces of a complex subspace: `(tilde0, breve0)`.
    ///
    /// `tilde0` is spanned by the real parts of elements of `q` (the real
    /// span of real and imaginary parts of a basis); `breve0 = q ∩ q̄ ∩ 𝔤₀`.
    pub fn real_trace(&self, q: &Subspace) -> (Subspace, Subspace) {
        (q.real_parts_span(), q.real_points())
    }

    pub fn is_fixed(&self, v: &[Scalar]) -> bool {
        crate::exact::is_real_vector(v)
    }
}
