use std::collections::BTreeMap;

use super::field::{mono_mul, Mono, TruncatedVectorField};
use super::{bch_coefficients, FormalError};
use crate::exact::{axpy, is_zero_vector, zero_vector, BasisCoords, Matrix, Scalar, Subspace, Vector};
use crate::lie::LieAlgebra;

/// Arithmetic needed by the star recursions: `𝔤₀`-valued homogeneous
/// quantities in `v`, `ad(v)`, and the projection onto `V` along `𝔥₀`.
pub(crate) trait StarBackend {
    type E: Clone;
    type C: Clone;
    fn lift(&self, s: &Scalar) -> Self::C;
    fn zero(&self) -> Self::E;
    fn constant(&self, x: &[Scalar]) -> Self::E;
    fn ad_v(&self, e: &Self::E) -> Self::E;
    fn axpy(&self, acc: &mut Self::E, c: &Self::C, e: &Self::E);
    fn project(&self, e: &Self::E) -> Self::E;
}

/// Degree-`h` terms `(xₕ, hₕ)` for `h = 0..=n`, with `xₕ` in `V` and `hₕ` in `𝔥₀`.
///
/// `right = true` gives `R*_X, H′`; otherwise `L*_X, H`. The two differ only in
/// the sign `(−1)ʰ` in front of `bₕ ad(v)ʰ X`.
pub(crate) fn star_recursion<B: StarBackend>(be: &B, x: &[Scalar], n: usize, right: bool) -> (Vec<B::E>, Vec<B::E>) {
    let b = bch_coefficients(n + 1);
    let neg_b: Vec<B::C> = b.iter().map(|c| be.lift(&-c)).collect();
    let lead: Vec<B::C> = b
        .iter()
        .enumerate()
        .map(|(h, c)| be.lift(&if right && h % 2 == 1 { -c } else { c.clone() }))
        .collect();
    let minus_one = be.lift(&-Scalar::one());
    let mut ad_x = be.constant(x);
    let x0 = be.project(&ad_x);
    let mut h0 = ad_x.clone();
    be.axpy(&mut h0, &minus_one, &x0);
    let mut xs = vec![x0];
    // powers[s][r] = ad(v)ʳ hₛ, extended on demand
    let mut powers: Vec<Vec<B::E>> = vec![vec![h0]];
    for h in 0..n {
        ad_x = be.ad_v(&ad_x);
        let mut stuff = be.zero();
        be.axpy(&mut stuff, &lead[h + 1], &ad_x);
        for r in 0..=h {
            if b[r + 1].is_zero() {
                continue;
            }
            let p = &mut powers[h - r];
            while p.len() < r + 2 {
                let next = be.ad_v(p.last().unwrap());
                p.push(next);
            }
            be.axpy(&mut stuff, &neg_b[r + 1], &p[r + 1]);
        }
        let xn = be.project(&stuff);
        be.axpy(&mut stuff, &minus_one, &xn);
        xs.push(xn);
        powers.push(vec![stuff]);
    }
    let hs = powers.into_iter().map(|mut p| p.swap_remove(0)).collect();
    (xs, hs)
}

/// Exact `𝔤₀`-valued polynomials on `V`.
struct Symbolic<'a> {
    n: usize,
    /// `ad(vᵢ)` as sparse `(row, col, c)` for each basis vector `vᵢ` of `V`.
    ad: Vec<Vec<(usize, usize, Scalar)>>,
    proj: &'a Matrix,
}

type GPoly = BTreeMap<Mono, Vector>;

impl StarBackend for Symbolic<'_> {
    type E = GPoly;
    type C = Scalar;

    fn lift(&self, s: &Scalar) -> Scalar {
        s.clone()
    }

    fn zero(&self) -> GPoly {
        GPoly::new()
    }

    fn constant(&self, x: &[Scalar]) -> GPoly {
        let mut p = GPoly::new();
        if !is_zero_vector(x) {
            p.insert(Vec::new(), x.to_vec());
        }
        p
    }

    fn ad_v(&self, e: &GPoly) -> GPoly {
        let mut out = GPoly::new();
        for (m, c) in e {
            for (i, ad) in self.ad.iter().enumerate() {
                let mut w = zero_vector(self.n);
                for (r, col, s) in ad {
                    if !c[*col].is_zero() {
                        w[*r].add_mul(s, &c[*col]);
                    }
                }
                if is_zero_vector(&w) {
                    continue;
                }
                let key = mono_mul(m, &[i]);
                let dst = out.entry(key).or_insert_with(|| zero_vector(self.n));
                axpy(dst, &Scalar::one(), &w);
            }
        }
        out.retain(|_, v| !is_zero_vector(v));
        out
    }

    fn axpy(&self, acc: &mut GPoly, c: &Scalar, e: &GPoly) {
        if c.is_zero() {
            return;
        }
        for (m, v) in e {
            let dst = acc.entry(m.clone()).or_insert_with(|| zero_vector(self.n));
            axpy(dst, c, v);
        }
        acc.retain(|_, v| !is_zero_vector(v));
    }

    fn project(&self, e: &GPoly) -> GPoly {
        let mut out = GPoly::new();
        for (m, v) in e {
            let w = self.proj.apply(v);
            if !is_zero_vector(&w) {
                out.insert(m.clone(), w);
            }
        }
        out
    }
}

/// Truncated star fields of one element: the `V`-valued field and its
/// `𝔥₀`-valued companion (`H′` for `R*`, `H` for `L*`) in `𝔤₀` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct StarFields {
    pub field: TruncatedVectorField,
    pub isotropy: TruncatedVectorField,
}

/// A transitive pair `(𝔤₀, 𝔥₀)` with a complement `V`, realized by truncated
/// formal vector fields on `V`.
#[derive(Clone, Debug)]
pub struct StarRealization {
    algebra: LieAlgebra,
    h0: Subspace,
    v_basis: Vec<Vector>,
    order: usize,
    coords: BasisCoords,
    proj: Matrix,
}

impl StarRealization {
    /// Uses the coordinate complement of `h0`.
    pub fn new(algebra: &LieAlgebra, h0: &Subspace, order: usize) -> Result<Self, FormalError> {
        let v = Subspace::full(algebra.dim()).complement_in(h0);
        Self::with_complement(algebra, h0, v, order)
    }

    pub fn with_complement(algebra: &LieAlgebra, h0: &Subspace, v_basis: Vec<Vector>, order: usize) -> Result<Self, FormalError> {
        let n = algebra.dim();
        if h0.ambient() != n {
            return Err(FormalError::DimensionMismatch(h0.ambient(), n));
        }
        if !algebra.is_subalgebra(h0) {
            return Err(FormalError::IsotropyNotSubalgebra);
        }
        if v_basis.len() + h0.dim() != n {
            return Err(FormalError::ComplementInvalid);
        }
        let mut all = v_basis.clone();
        all.extend(h0.basis().iter().cloned());
        let coords = BasisCoords::new(n, all).map_err(|_| FormalError::ComplementInvalid)?;
        let d = v_basis.len();
        let mut proj = Matrix::zeros(n, n);
        for j in 0..n {
            let c = coords.coords_unchecked(&crate::exact::unit_vector(n, j));
            let mut col = zero_vector(n);
            for (ck, vk) in c.iter().zip(&v_basis).take(d) {
                axpy(&mut col, ck, vk);
            }
            for (i, x) in col.into_iter().enumerate() {
                proj[(i, j)] = x;
            }
        }
        Ok(StarRealization {
            algebra: algebra.clone(),
            h0: h0.clone(),
            v_basis,
            order,
            coords,
            proj,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn h0(&self) -> &Subspace {
        &self.h0
    }

    pub fn v_basis(&self) -> &[Vector] {
        &self.v_basis
    }

    pub fn dim_v(&self) -> usize {
        self.v_basis.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Matrix of `π` on `𝔤₀` coordinates.
    pub fn projection(&self) -> &Matrix {
        &self.proj
    }

    /// Coordinates of `π(X)` in the basis of `V`.
    pub fn v_coords(&self, x: &[Scalar]) -> Vector {
        self.coords.coords_unchecked(x)[..self.dim_v()].to_vec()
    }

    fn backend(&self) -> Symbolic<'_> {
        let n = self.algebra.dim();
        let ad = self
            .v_basis
            .iter()
            .map(|v| {
                let mut entries = Vec::new();
                for col in 0..n {
                    let img = self.algebra.bracket(v, &crate::exact::unit_vector(n, col));
                    for (row, c) in img.into_iter().enumerate() {
                        if !c.is_zero() {
                            entries.push((row, col, c));
                        }
                    }
                }
                entries
            })
            .collect();
        Symbolic { n, ad, proj: &self.proj }
    }

    fn fields(&self, x: &[Scalar], right: bool) -> StarFields {
        let n = self.algebra.dim();
        let d = self.dim_v();
        let (xs, hs) = star_recursion(&self.backend(), x, self.order, right);
        let mut field = TruncatedVectorField::zero(d, self.order);
        let mut isotropy = TruncatedVectorField::zero(n, self.order);
        for (xh, hh) in xs.iter().zip(&hs) {
            for (m, v) in xh {
                field.add_term(m.clone(), &Scalar::one(), &self.v_coords(v));
            }
            for (m, v) in hh {
                isotropy.add_term(m.clone(), &Scalar::one(), v);
            }
        }
        StarFields { field, isotropy }
    }

    /// `R*_X` and `H′`.
    pub fn right(&self, x: &[Scalar]) -> StarFields {
        self.fields(x, true)
    }

    /// `L*_X` and `H`.
    pub fn left(&self, x: &[Scalar]) -> StarFields {
        self.fields(x, false)
    }

    /// `R*` of every basis element of `𝔤₀`.
    pub fn right_basis(&self) -> Vec<TruncatedVectorField> {
        (0..self.algebra.dim()).map(|k| self.right(&self.algebra.basis_vector(k)).field).collect()
    }
}

/// `(L_X, R_X)` on `V = 𝔤₀`, the invariant fields in exponential coordinates.
pub fn invariant_fields(a: &LieAlgebra, x: &[Scalar], order: usize) -> (TruncatedVectorField, TruncatedVectorField) {
    let r = StarRealization::new(a, &Subspace::zero(a.dim()), order).expect("zero isotropy");
    (r.left(x).field, r.right(x).field)
}
