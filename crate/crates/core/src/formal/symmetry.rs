use std::collections::BTreeMap;

use serde::Serialize;

use super::field::{monomials, Mono, TruncatedSeries, TruncatedVectorField};
use super::star::StarRealization;
use super::FormalError;
use crate::exact::{axpy, zero_vector, Scalar, SparseSystem, Subspace, Vector};

/// `{X : R*_X ≡ 0}` through the realization order, as an exact kernel.
pub fn realization_kernel(st: &StarRealization) -> Subspace {
    let n = st.algebra().dim();
    let fields = st.right_basis();
    let mut rows: BTreeMap<(Mono, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (k, f) in fields.iter().enumerate() {
        for (m, v) in f.terms() {
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    rows.entry((m.clone(), i)).or_default().push((k, c.clone()));
                }
            }
        }
    }
    let mut sys = SparseSystem::new(n);
    for r in rows.into_values() {
        sys.push(r);
    }
    Subspace::span_of(n, &sys.kernel())
}

/// A distribution at the base point: a real subspace `𝔩₀` or a complex one `𝔮`.
#[derive(Clone, Debug)]
pub enum Distribution {
    Real(Subspace),
    Complex(Subspace),
}

impl Distribution {
    pub fn subspace(&self) -> &Subspace {
        match self {
            Distribution::Real(s) | Distribution::Complex(s) => s,
        }
    }

    fn is_complex(&self) -> bool {
        matches!(self, Distribution::Complex(_))
    }
}

/// Generators `L*_w`, `w` in a basis of `V ∩ dist`, of the invariant module.
#[derive(Clone, Debug)]
pub struct ModuleGenerators {
    pub w: Vec<Vector>,
    pub fields: Vec<TruncatedVectorField>,
    /// `𝔥₀ + {values at 0 of the generators}`, mapped back into `𝔤₀`.
    pub recovered: Subspace,
}

/// Module generators of `dist` and the subspace recovered from their values at 0.
pub fn module_generated(st: &StarRealization, dist: &Distribution) -> Result<ModuleGenerators, FormalError> {
    let alg = st.algebra();
    let n = alg.dim();
    let s = dist.subspace();
    if s.ambient() != n {
        return Err(FormalError::DimensionMismatch(s.ambient(), n));
    }
    let h0 = st.h0();
    if !h0.leq(s)? || !alg.bracket_spaces(h0, s).leq(s)? {
        return Err(FormalError::ModuleConditionsViolated);
    }
    let v = Subspace::span_of(n, st.v_basis());
    let w = s.intersect(&v)?.basis().to_vec();
    let basis_fields: Vec<TruncatedVectorField> = (0..n).map(|k| st.left(&alg.basis_vector(k)).field).collect();
    let fields: Vec<TruncatedVectorField> = w
        .iter()
        .map(|wv| {
            let mut f = TruncatedVectorField::zero(st.dim_v(), st.order());
            for (c, bf) in wv.iter().zip(&basis_fields) {
                if !c.is_zero() {
                    f = f.add_scaled(c, bf);
                }
            }
            f
        })
        .collect();
    let mut at_zero: Vec<Vector> = h0.basis().to_vec();
    for f in &fields {
        let mut x = zero_vector(n);
        for (c, vb) in f.value_at_zero().iter().zip(st.v_basis()) {
            axpy(&mut x, c, vb);
        }
        at_zero.push(x);
    }
    let recovered = Subspace::span_of(n, &at_zero);
    Ok(ModuleGenerators { w, fields, recovered })
}

/// Dimensions of truncated symmetry spaces, order by order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryTable {
    /// Jets of degree `≤ n − jet_lag` are counted at order `n`.
    pub jet_lag: usize,
    /// `(n, d_n)` for `n = jet_lag..=order`.
    pub dims: Vec<(usize, usize)>,
    /// Common value once three consecutive orders agree.
    pub stabilized: Option<usize>,
    pub stable_from: Option<usize>,
}

/// Number of bracket steps for `base + 𝔥₀` to generate `𝔤₀` (or to stall).
fn depth(st: &StarRealization, base: &Subspace) -> usize {
    let alg = st.algebra();
    let start = base.sum(st.h0()).expect("same ambient");
    let mut cur = start.clone();
    let mut mu = 1;
    while !cur.is_full() {
        let next = cur.sum(&alg.bracket_spaces(&cur, &start)).expect("same ambient");
        if next == cur {
            break;
        }
        cur = next;
        mu += 1;
    }
    mu
}

/// Truncated symmetries of the invariant module of `dist`.
///
/// For each order `n` the unknowns are a real field `Θ` of order `n` and
/// coefficient series `f_{a,k}` of order `n − 1` (complex for a complex
/// distribution), subject to `[Θ, G_a] = Σₖ f_{a,k} G_k` through degree `n − 1`
/// for every generator `G_a`. `d_n` is the dimension of the projection of the
/// solution space onto the jets of `Θ` of degree `≤ n − μ − 1`, `μ` the depth
/// of the distribution.
///
/// The top components of a truncated field are only weakly constrained:
/// conditions stop at degree `n − 1`, and a direction of depth `μ` ties a
/// degree-`h` coefficient to degree `h − μ` terms. Counting those top
/// components would make every table drift upward.
pub fn truncated_symmetries(st: &StarRealization, dist: &Distribution) -> Result<SymmetryTable, FormalError> {
    let gens = module_generated(st, dist)?;
    let real = match dist {
        Distribution::Real(l) => l.clone(),
        Distribution::Complex(q) => q.real_parts_span(),
    };
    let jet_lag = depth(st, &real) + 1;
    let mut dims = Vec::new();
    for n in jet_lag.max(1)..=st.order() {
        let g: Vec<TruncatedVectorField> = gens.fields.iter().map(|f| f.truncate(n)).collect();
        dims.push((n, projected_dim(st.dim_v(), &g, n, n - jet_lag, dist.is_complex())));
    }
    let mut stabilized = None;
    let mut stable_from = None;
    for w in dims.windows(3) {
        if w[0].1 == w[1].1 && w[1].1 == w[2].1 {
            stabilized = Some(w[0].1);
            stable_from = Some(w[0].0);
            break;
        }
    }
    Ok(SymmetryTable {
        jet_lag,
        dims,
        stabilized,
        stable_from,
    })
}

/// Column contributions of the symmetry system, keyed by `(equation, mono, comp)`.
type Column = Vec<((usize, Mono, usize), Scalar)>;

fn field_column(eq: usize, f: &TruncatedVectorField, c: &Scalar) -> Column {
    let mut col = Vec::new();
    for (m, v) in f.terms() {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                col.push(((eq, m.clone(), i), c * x));
            }
        }
    }
    col
}

pub(crate) fn projected_dim(d: usize, gens: &[TruncatedVectorField], n: usize, jet: usize, complex: bool) -> usize {
    let mut cols: Vec<(Column, bool)> = Vec::new();
    let mut is_kept: Vec<bool> = Vec::new();
    for h in 0..=n {
        for m in monomials(d, h) {
            for i in 0..d {
                let mut e = zero_vector(d);
                e[i] = Scalar::one();
                let theta = TruncatedVectorField::from_terms(d, n, [(m.clone(), e)]);
                let mut col = Column::new();
                for (a, g) in gens.iter().enumerate() {
                    let br = theta.bracket(g).expect("order at least 1");
                    col.extend(field_column(a, &br, &Scalar::one()));
                }
                cols.push((col, false));
                is_kept.push(h <= jet);
            }
        }
    }
    for a in 0..gens.len() {
        for g in gens {
            for h in 0..n {
                for m in monomials(d, h) {
                    let f = TruncatedSeries::monomial(d, n - 1, m, Scalar::one());
                    let term = g.mul_series(&f);
                    cols.push((field_column(a, &term, &-Scalar::one()), false));
                    is_kept.push(false);
                    if complex {
                        cols.push((field_column(a, &term, &-Scalar::one()), true));
                        is_kept.push(false);
                    }
                }
            }
        }
    }
    // rows: real and imaginary parts of each complex equation
    let mut rows: BTreeMap<(usize, Mono, usize, bool), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (j, (col, times_i)) in cols.iter().enumerate() {
        for ((a, m, i), c) in col {
            let c = if *times_i { c * &Scalar::i() } else { c.clone() };
            let (re, im) = (c.re_part(), c.im_part());
            if !re.is_zero() {
                rows.entry((*a, m.clone(), *i, false)).or_default().push((j, re));
            }
            if !im.is_zero() {
                rows.entry((*a, m.clone(), *i, true)).or_default().push((j, im));
            }
        }
    }
    let ncols = cols.len();
    let kept = is_kept.iter().filter(|&&k| k).count();
    let mut full = SparseSystem::new(ncols);
    let mut rest = SparseSystem::new(ncols);
    for r in rows.into_values() {
        rest.push(r.iter().filter(|(j, _)| !is_kept[*j]).cloned());
        full.push(r);
    }
    // dim π_S(ker A) = |S| − rank A + rank A_{¬S}
    kept + rest.rank() - full.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{presets, LieAlgebra};

    #[test]
    fn kernel_of_transitive_and_non_transitive_pairs() {
        let sl2 = presets::sl2();
        let e = Subspace::span_of(3, &[sl2.basis_vector(1)]);
        let st = StarRealization::new(&sl2, &e, 3).unwrap();
        assert!(realization_kernel(&st).is_zero());
        let h = presets::heisenberg(1);
        let z = Subspace::span_of(3, &[h.basis_vector(2)]);
        let st = StarRealization::new(&h, &z, 3).unwrap();
        assert_eq!(realization_kernel(&st), z);
        assert_eq!(h.largest_ideal_in(&z), z);
    }

    #[test]
    fn recovery_of_heisenberg_modules() {
        let h = presets::heisenberg(1);
        let st = StarRealization::new(&h, &Subspace::zero(3), 3).unwrap();
        let l0 = Subspace::span_of(3, &[h.basis_vector(0), h.basis_vector(1)]);
        let g = module_generated(&st, &Distribution::Real(l0.clone())).unwrap();
        assert_eq!(g.recovered, l0);
        let full = Subspace::full(3);
        assert_eq!(module_generated(&st, &Distribution::Real(full.clone())).unwrap().recovered, full);
        let q = Subspace::span_of(3, &[vec![Scalar::one(), -Scalar::i(), Scalar::zero()]]);
        assert_eq!(module_generated(&st, &Distribution::Complex(q.clone())).unwrap().recovered, q);
    }

    #[test]
    fn sphere_symmetries_stabilize_and_contact_ones_grow() {
        let h = presets::heisenberg(1);
        let st = StarRealization::new(&h, &Subspace::zero(3), 7).unwrap();
        let q = Subspace::span_of(3, &[vec![Scalar::one(), -Scalar::i(), Scalar::zero()]]);
        let t = truncated_symmetries(&st, &Distribution::Complex(q)).unwrap();
        assert_eq!(t.jet_lag, 3);
        assert_eq!(t.stabilized, Some(8));
        let l0 = Subspace::span_of(3, &[h.basis_vector(0), h.basis_vector(1)]);
        let t = truncated_symmetries(&st, &Distribution::Real(l0)).unwrap();
        assert_eq!(t.stabilized, None);
        assert!(t.dims.windows(2).all(|w| w[0].1 < w[1].1));
    }

    #[test]
    fn trivial_distribution_counts_all_jets() {
        // every field is a symmetry: d_n = 2 · C(n − 1 + 2, 2) jets up to degree n − 2
        let a = LieAlgebra::abelian(2);
        let st = StarRealization::new(&a, &Subspace::zero(2), 5).unwrap();
        let t = truncated_symmetries(&st, &Distribution::Real(Subspace::full(2))).unwrap();
        assert_eq!(t.jet_lag, 2);
        for (n, d) in t.dims {
            let j = n - 2;
            assert_eq!(d, 2 * (j + 1) * (j + 2) / 2);
        }
    }

    #[test]
    fn module_conditions() {
        let sl2 = presets::sl2();
        let e = Subspace::span_of(3, &[sl2.basis_vector(1)]);
        let st = StarRealization::new(&sl2, &e, 2).unwrap();
        // span{F} misses the isotropy; span{E, F} is not E-stable
        for bad in [vec![sl2.basis_vector(2)], vec![sl2.basis_vector(1), sl2.basis_vector(2)]] {
            let d = Distribution::Real(Subspace::span_of(3, &bad));
            assert_eq!(module_generated(&st, &d).unwrap_err(), FormalError::ModuleConditionsViolated);
        }
    }
}
