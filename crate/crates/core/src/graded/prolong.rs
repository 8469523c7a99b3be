use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use serde::Serialize;

use super::{GradedError, GradedLieAlgebra};
use crate::exact::{BasisCoords, Matrix, Scalar, SparseSystem, Subspace, Vector};
use crate::lie::{Field, LieAlgebra};

/// Choice of the degree-0 component.
#[derive(Clone, Debug)]
pub enum DegreeZero {
    /// All degree-0 derivations of `m`.
    AllDerivations,
    /// Degree-0 derivations commuting with `J` on `G₋₁` (matrix in local
    /// coordinates, columns are images).
    JCommuting(Matrix),
    /// Given derivations, as matrices on the coordinates of `m`.
    Explicit(Vec<Matrix>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    /// `G_first_zero = 0`, hence every higher component vanishes.
    Terminated { first_zero: i64 },
    /// Components up to `max_degree` are all nonzero.
    CapReached { max_degree: i64 },
}

#[derive(Clone, Debug)]
pub struct Prolongation {
    pub graded: GradedLieAlgebra,
    pub termination: Termination,
}

impl Prolongation {
    pub fn is_finite(&self) -> bool {
        matches!(self.termination, Termination::Terminated { .. })
    }

    /// Total dimension when the prolongation terminated.
    pub fn total_dim(&self) -> Option<usize> {
        self.is_finite().then(|| self.graded.dim())
    }

    /// `(degree, dim)` for every degree from the bottom to the last computed one.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        let lo = self.graded.min_degree().unwrap_or(0);
        let hi = match self.termination {
            Termination::Terminated { first_zero } => first_zero,
            Termination::CapReached { max_degree } => max_degree,
        };
        (lo..=hi).map(|h| (h, self.graded.component_dim(h))).collect()
    }
}

type Terms = Vec<(usize, Scalar)>;
/// Vector whose coordinates are linear forms in the unknowns.
type LinVec = BTreeMap<usize, Vec<Scalar>>;

struct Builder {
    degrees: Vec<i64>,
    labels: Vec<String>,
    table: HashMap<(usize, usize), Terms>,
    n_m: usize,
    m1: Range<usize>,
    /// For `a` of degree ≤ −2: `eₐ = Σ c [e_y, e_e]` with `e` in `G₋₁`.
    pres: Vec<Vec<(Scalar, usize, usize)>>,
}

fn add_form(out: &mut LinVec, k: usize, c: &Scalar, form: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    let dst = out.entry(k).or_insert_with(|| vec![Scalar::zero(); form.len()]);
    for (d, f) in dst.iter_mut().zip(form) {
        if !f.is_zero() {
            d.add_mul(c, f);
        }
    }
}

fn eval(v: &LinVec, x: &[Scalar]) -> BTreeMap<usize, Scalar> {
    let mut out = BTreeMap::new();
    for (k, form) in v {
        let s = crate::exact::dot(form, x);
        if !s.is_zero() {
            out.insert(*k, s);
        }
    }
    out
}

impl Builder {
    fn new(m: &GradedLieAlgebra) -> Result<Self, GradedError> {
        let n_m = m.dim();
        let m1 = m.indices(-1);
        if m1.is_empty() || !m.is_fundamental() {
            return Err(GradedError::NotFundamental);
        }
        let mut table = HashMap::new();
        for (&(i, j), t) in m.algebra().structure_constants() {
            table.insert((i, j), t.clone());
        }
        let mut b = Builder {
            degrees: m.degrees().to_vec(),
            labels: m.algebra().labels().to_vec(),
            table,
            n_m,
            m1: m1.clone(),
            pres: vec![Vec::new(); n_m],
        };
        let lo = m.min_degree().unwrap();
        for h in (lo..-1).rev() {
            let target = m.indices(h);
            if target.is_empty() {
                continue;
            }
            let mut span = Subspace::zero(target.len());
            let mut chosen: Vec<(usize, usize)> = Vec::new();
            let mut vecs: Vec<Vector> = Vec::new();
            'outer: for y in m.indices(h + 1) {
                for e in m1.clone() {
                    let w = b.local(&b.bracket_basis(y, e), &target);
                    if !span.contains_unchecked(&w) {
                        span = span.extend([w.clone()]);
                        chosen.push((y, e));
                        vecs.push(w);
                        if span.is_full() {
                            break 'outer;
                        }
                    }
                }
            }
            if !span.is_full() {
                return Err(GradedError::NotFundamental);
            }
            let bc = BasisCoords::new(target.len(), vecs).expect("independent choice");
            for (li, g) in target.clone().enumerate() {
                let c = bc.coords_unchecked(&crate::exact::unit_vector(target.len(), li));
                b.pres[g] = c
                    .into_iter()
                    .zip(&chosen)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, &(y, e))| (c, y, e))
                    .collect();
            }
        }
        Ok(b)
    }

    fn local(&self, v: &BTreeMap<usize, Scalar>, r: &Range<usize>) -> Vector {
        let mut out = vec![Scalar::zero(); r.len()];
        for (k, c) in v {
            assert!(r.contains(k), "bracket leaves its degree");
            out[k - r.start] = c.clone();
        }
        out
    }

    fn indices(&self, h: i64) -> Range<usize> {
        let lo = self.degrees.partition_point(|&d| d < h);
        let hi = self.degrees.partition_point(|&d| d <= h);
        lo..hi
    }

    /// `(sign, terms)` with `[eᵢ, eⱼ] = sign · terms`.
    fn terms(&self, i: usize, j: usize) -> Option<(bool, &Terms)> {
        if i < j {
            self.table.get(&(i, j)).map(|t| (true, t))
        } else if j < i {
            self.table.get(&(j, i)).map(|t| (false, t))
        } else {
            None
        }
    }

    fn bracket_basis(&self, i: usize, j: usize) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        self.add_bracket(&mut out, &Scalar::one(), i, j);
        out
    }

    fn add_bracket(&self, out: &mut BTreeMap<usize, Scalar>, c: &Scalar, i: usize, j: usize) {
        if let Some((pos, t)) = self.terms(i, j) {
            let c = if pos { c.clone() } else { -c };
            for (k, s) in t {
                let e = out.entry(*k).or_insert_with(Scalar::zero);
                e.add_mul(&c, s);
            }
            out.retain(|_, v| !v.is_zero());
        }
    }

    /// `out += coef · [v, e_b]`
    fn lv_right(&self, v: &LinVec, b: usize, coef: &Scalar, out: &mut LinVec) {
        for (k, form) in v {
            if let Some((pos, t)) = self.terms(*k, b) {
                for (tk, s) in t {
                    let mut c = coef * s;
                    if !pos {
                        c = -c;
                    }
                    add_form(out, *tk, &c, form);
                }
            }
        }
    }

    /// Solutions (restrictions to `G₋₁`, flattened) and the action of each on `m`.
    fn solve_degree(&self, p: i64, zero: &DegreeZero) -> Result<(Vec<Vector>, Vec<usize>), GradedError> {
        let prev = self.indices(p - 1);
        let d1 = self.m1.len();
        let dp = prev.len();
        let u = d1 * dp;
        if u == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        let phi = self.generic_phi(&prev, u);
        let mut sys = SparseSystem::new(u);
        for a in 0..self.n_m {
            for b in a + 1..self.n_m {
                let mut acc = LinVec::new();
                if let Some((pos, t)) = self.terms(a, b) {
                    for (k, c) in t {
                        let c = if pos { c.clone() } else { -c };
                        for (key, form) in &phi[*k] {
                            add_form(&mut acc, *key, &c, form);
                        }
                    }
                }
                self.lv_right(&phi[a], b, &-Scalar::one(), &mut acc);
                // −[eₐ, φ(e_b)] = [φ(e_b), eₐ]
                self.lv_right(&phi[b], a, &Scalar::one(), &mut acc);
                for form in acc.values() {
                    sys.push(form.iter().cloned().enumerate());
                }
            }
        }
        if p == 0 {
            if let DegreeZero::JCommuting(j) = zero {
                assert_eq!(j.rows(), d1, "J must act on degree -1");
                for a in 0..d1 {
                    for c2 in 0..dp {
                        let mut row: Vec<(usize, Scalar)> = Vec::new();
                        for b in 0..d1 {
                            row.push((b * dp + c2, j[(b, a)].clone()));
                        }
                        for c in 0..dp {
                            row.push((a * dp + c, -&j[(c2, c)]));
                        }
                        sys.push(row);
                    }
                }
            }
        }
        Ok((sys.kernel(), sys.free_columns()))
    }

    /// `φ` on every basis element of `m`, with `φ|G₋₁` the unknowns.
    fn generic_phi(&self, prev: &Range<usize>, u: usize) -> Vec<LinVec> {
        let dp = prev.len();
        let mut phi: Vec<LinVec> = vec![LinVec::new(); self.n_m];
        for (ai, a) in self.m1.clone().enumerate() {
            for c in 0..dp {
                let mut form = vec![Scalar::zero(); u];
                form[ai * dp + c] = Scalar::one();
                phi[a].insert(prev.start + c, form);
            }
        }
        for a in (0..self.m1.start).rev() {
            let mut acc = LinVec::new();
            for (c, y, e) in &self.pres[a] {
                // φ([y, e]) = [φ(y), e] + [y, φ(e)] = [φ(y), e] − [φ(e), y]
                self.lv_right(&phi[*y], *e, c, &mut acc);
                self.lv_right(&phi[*e], *y, &-c, &mut acc);
            }
            phi[a] = acc;
        }
        phi
    }

    /// Appends a new degree-`p` component given by restrictions `sols`.
    fn add_component(&mut self, p: i64, sols: &[Vector], coords: &dyn Fn(&Vector) -> Option<Vector>) -> Result<(), GradedError> {
        let prev = self.indices(p - 1);
        let u = self.m1.len() * prev.len();
        let phi = self.generic_phi(&prev, u);
        let start = self.degrees.len();
        for (k, s) in sols.iter().enumerate() {
            let eta = start + k;
            self.degrees.push(p);
            self.labels.push(format!("g[{p}]_{}", k + 1));
            for (a, pa) in phi.iter().enumerate() {
                let val = eval(pa, s);
                if !val.is_empty() {
                    // [eₐ, η] = −φ_η(eₐ)
                    self.table.insert((a, eta), val.into_iter().map(|(i, c)| (i, -c)).collect());
                }
            }
        }
        let new = self.indices(p);
        let dp = prev.len();
        for q in 0..=p / 2 {
            for z in self.indices(q) {
                for x in self.indices(p - q) {
                    if z >= x {
                        continue;
                    }
                    let mut w = vec![Scalar::zero(); u];
                    for (ai, e) in self.m1.clone().enumerate() {
                        // [[ζ, ξ], e] = [ζ, [ξ, e]] − [ξ, [ζ, e]]
                        let mut v = BTreeMap::new();
                        for (k, c) in self.bracket_basis(x, e) {
                            self.add_bracket(&mut v, &c, z, k);
                        }
                        for (k, c) in self.bracket_basis(z, e) {
                            self.add_bracket(&mut v, &-c, x, k);
                        }
                        for (k, c) in v {
                            assert!(prev.contains(&k), "bracket leaves its degree");
                            w[ai * dp + (k - prev.start)] = c;
                        }
                    }
                    let c = coords(&w).ok_or(GradedError::DegreeZeroNotClosed)?;
                    let terms: Terms = c
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(i, v)| (new.start + i, v))
                        .collect();
                    if !terms.is_empty() {
                        self.table.insert((z, x), terms);
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(self, name: &str) -> GradedLieAlgebra {
        let alg = LieAlgebra::new(name, Field::Rational, self.labels, self.table).expect("prolonged table");
        GradedLieAlgebra::new(alg, self.degrees)
    }
}

/// Tanaka prolongation of the negative part of `m` with the given degree-0 part,
/// computed up to `max_degree` or until a component vanishes.
pub fn tanaka_prolong(m: &GradedLieAlgebra, zero: &DegreeZero, max_degree: i64) -> Result<Prolongation, GradedError> {
    let m = m.negative_part();
    let mut b = Builder::new(&m)?;
    for p in 0..=max_degree {
        let (sols, free) = if let (0, DegreeZero::Explicit(mats)) = (p, zero) {
            (explicit_restrictions(&b, mats)?, Vec::new())
        } else {
            b.solve_degree(p, zero)?
        };
        if sols.is_empty() {
            return Ok(Prolongation {
                graded: b.finish("prolongation"),
                termination: Termination::Terminated { first_zero: p },
            });
        }
        let u = sols[0].len();
        if free.is_empty() {
            let bc = BasisCoords::new(u, sols.clone()).map_err(|_| GradedError::NotFaithful)?;
            b.add_component(p, &sols, &|w| bc.coords(w))?;
        } else {
            let sols2 = sols.clone();
            let check = move |w: &Vector| {
                let c: Vector = free.iter().map(|&f| w[f].clone()).collect();
                let mut back = vec![Scalar::zero(); w.len()];
                for (ci, s) in c.iter().zip(&sols2) {
                    crate::exact::axpy(&mut back, ci, s);
                }
                (&back == w).then_some(c)
            };
            b.add_component(p, &sols, &check)?;
        }
    }
    Ok(Prolongation {
        graded: b.finish("prolongation"),
        termination: Termination::CapReached { max_degree },
    })
}

/// Checks that the given maps are derivations of `m` and returns their
/// restrictions to `G₋₁` in the solver's flattened layout.
fn explicit_restrictions(b: &Builder, mats: &[Matrix]) -> Result<Vec<Vector>, GradedError> {
    let n = b.n_m;
    let d1 = b.m1.len();
    let u = d1 * d1;
    let (all, _) = b.solve_degree(0, &DegreeZero::AllDerivations)?;
    let derivs = Subspace::span_of(u, &all);
    let phi = b.generic_phi(&b.m1, u);
    let mut out = Vec::new();
    for mat in mats {
        if mat.rows() != n || mat.cols() != n {
            return Err(GradedError::NotDerivations);
        }
        let mut x = vec![Scalar::zero(); u];
        for (ai, a) in b.m1.clone().enumerate() {
            for (c, row) in b.m1.clone().enumerate() {
                x[ai * d1 + c] = mat[(row, a)].clone();
            }
            // degree 0: the image of G₋₁ stays in G₋₁
            for row in (0..n).filter(|r| !b.m1.contains(r)) {
                if !mat[(row, a)].is_zero() {
                    return Err(GradedError::NotDerivations);
                }
            }
        }
        if !derivs.contains_unchecked(&x) {
            return Err(GradedError::NotDerivations);
        }
        for (a, pa) in phi.iter().enumerate() {
            let val = eval(pa, &x);
            for row in 0..n {
                let expect = val.get(&row).cloned().unwrap_or_else(Scalar::zero);
                if mat[(row, a)] != expect {
                    return Err(GradedError::NotDerivations);
                }
            }
        }
        out.push(x);
    }
    if Subspace::span_of(u, &out).dim() != out.len() {
        return Err(GradedError::NotFaithful);
    }
    Ok(out)
}

/// `ad G₀` restricted to the negative part, as an explicit degree-0 choice.
pub fn degree_zero_action(g: &GradedLieAlgebra) -> DegreeZero {
    let n = g.indices(-1).end;
    let mats = g
        .indices(0)
        .map(|z| {
            let mut m = Matrix::zeros(n, n);
            for a in 0..n {
                let v = g.bracket(&g.basis_vector(z), &g.basis_vector(a));
                for (r, c) in v.into_iter().enumerate().take(n) {
                    m[(r, a)] = c;
                }
            }
            m
        })
        .collect();
    DegreeZero::Explicit(mats)
}

/// Outcome of the finiteness test on a prolonged algebra.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finiteness {
    pub first_zero: i64,
    pub total_dim: usize,
    pub g_prime_degree: i64,
    pub g_prime_dims: Vec<(i64, usize)>,
}

/// Verifies `G′₂ₖ₊₁ = 0` and that the prolongation terminated.
pub fn finiteness_check(p: &Prolongation, k: usize) -> Result<Finiteness, GradedError> {
    let Termination::Terminated { first_zero } = p.termination else {
        let Termination::CapReached { max_degree } = p.termination else { unreachable!() };
        return Err(GradedError::CapReached(max_degree));
    };
    let g = &p.graded;
    let degree = 2 * k as i64 + 1;
    let gp = g.g_prime(degree);
    if !gp.is_zero() {
        return Err(GradedError::GPrimeNonzero { degree, dim: gp.dim() });
    }
    let g_prime_dims = (0..first_zero).map(|h| (h, g.g_prime(h).dim())).collect();
    Ok(Finiteness {
        first_zero,
        total_dim: g.dim(),
        g_prime_degree: degree,
        g_prime_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn h3() -> GradedLieAlgebra {
        let alg = LieAlgebra::new(
            "h3",
            Field::Rational,
            ["Z", "X", "Y"].map(String::from).to_vec(),
            [((1, 2), vec![(0, Scalar::one())])],
        )
        .unwrap();
        GradedLieAlgebra::new(alg, vec![-2, -1, -1])
    }

    fn sphere_j() -> Matrix {
        Matrix::from_ints(&[&[0, 1], &[-1, 0]])
    }

    /// Jacobi on basis triples; past a cap only triples whose pairwise
    /// brackets were computed are meaningful.
    fn jacobi_up_to(g: &GradedLieAlgebra, cap: i64) {
        let n = g.dim();
        let d = g.degrees();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if [d[i] + d[j], d[j] + d[k], d[i] + d[k]].iter().any(|&s| s > cap) {
                        continue;
                    }
                    let (x, y, z) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(k));
                    let mut s = g.bracket(&x, &g.bracket(&y, &z));
                    crate::exact::axpy(&mut s, &Scalar::one(), &g.bracket(&y, &g.bracket(&z, &x)));
                    crate::exact::axpy(&mut s, &Scalar::one(), &g.bracket(&z, &g.bracket(&x, &y)));
                    assert!(crate::exact::is_zero_vector(&s), "Jacobi fails on {:?}", (i, j, k));
                }
            }
        }
    }

    fn check_invariants(p: &Prolongation) {
        let g = &p.graded;
        match p.termination {
            Termination::Terminated { .. } => g.algebra().validate().unwrap(),
            Termination::CapReached { max_degree } => jacobi_up_to(g, max_degree),
        }
        assert!(g.respects_grading());
        assert!(g.is_transitive());
        let d1 = g.component_dim(-1);
        for (h, d) in p.dims() {
            if h >= 0 {
                assert!(d <= d1 * g.component_dim(h - 1));
            }
        }
    }

    #[test]
    fn abelian_prolongation_is_polynomial_fields() {
        for n in 1..=3 {
            let m = GradedLieAlgebra::new(LieAlgebra::abelian(n), vec![-1; n]);
            let p = tanaka_prolong(&m, &DegreeZero::AllDerivations, 3).unwrap();
            assert_eq!(p.termination, Termination::CapReached { max_degree: 3 });
            for h in 0..=3usize {
                assert_eq!(p.graded.component_dim(h as i64), n * binom(n + h, n - 1));
            }
            check_invariants(&p);
        }
    }

    #[test]
    fn sphere_prolongation_is_su21() {
        let p = tanaka_prolong(&h3(), &DegreeZero::JCommuting(sphere_j()), 10).unwrap();
        assert_eq!(p.termination, Termination::Terminated { first_zero: 3 });
        assert_eq!(p.dims(), vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1), (3, 0)]);
        assert_eq!(p.total_dim(), Some(8));
        check_invariants(&p);
        let f = finiteness_check(&p, 0).unwrap();
        assert_eq!(f.total_dim, 8);
        assert!(f.g_prime_dims.iter().all(|&(h, d)| h == 0 || d == 0));
    }

    #[test]
    fn contact_prolongation_is_infinite() {
        // generating functions of weighted degree p + 2, weights (1, 1, 2)
        let p = tanaka_prolong(&h3(), &DegreeZero::AllDerivations, 2).unwrap();
        assert_eq!(p.dims(), vec![(-2, 1), (-1, 2), (0, 4), (1, 6), (2, 9)]);
        assert!(!p.is_finite());
        assert_eq!(finiteness_check(&p, 0), Err(GradedError::CapReached(2)));
        check_invariants(&p);
    }

    #[test]
    fn prolongation_recovers_sphere_algebra_from_its_degree_zero() {
        let p = tanaka_prolong(&h3(), &DegreeZero::JCommuting(sphere_j()), 10).unwrap();
        let q = tanaka_prolong(&p.graded, &degree_zero_action(&p.graded), 10).unwrap();
        assert_eq!(q.dims(), p.dims());
    }

    #[test]
    fn grading_element_alone_stops_at_degree_one() {
        let e = Matrix::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p = tanaka_prolong(&h3(), &DegreeZero::Explicit(vec![e]), 5).unwrap();
        assert_eq!(p.termination, Termination::Terminated { first_zero: 1 });
        assert_eq!(p.total_dim(), Some(4));
        check_invariants(&p);
    }

    #[test]
    fn explicit_degree_zero_errors() {
        let id = Matrix::identity(3);
        let err = tanaka_prolong(&h3(), &DegreeZero::Explicit(vec![id]), 2).unwrap_err();
        assert_eq!(err, GradedError::NotDerivations);
        let e = Matrix::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let err = tanaka_prolong(&h3(), &DegreeZero::Explicit(vec![e.clone(), e.scale(&Scalar::from_int(2))]), 2)
            .unwrap_err();
        assert_eq!(err, GradedError::NotFaithful);
        let up = Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
        let down = Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let err = tanaka_prolong(&h3(), &DegreeZero::Explicit(vec![up, down]), 2).unwrap_err();
        assert_eq!(err, GradedError::DegreeZeroNotClosed);
    }

    #[test]
    fn empty_or_non_fundamental_negative_part() {
        let empty = GradedLieAlgebra::new(LieAlgebra::abelian(0), vec![]);
        assert_eq!(
            tanaka_prolong(&empty, &DegreeZero::AllDerivations, 2).unwrap_err(),
            GradedError::NotFundamental
        );
        let split = GradedLieAlgebra::new(LieAlgebra::abelian(2), vec![-2, -1]);
        assert_eq!(
            tanaka_prolong(&split, &DegreeZero::AllDerivations, 2).unwrap_err(),
            GradedError::NotFundamental
        );
    }

    #[test]
    fn g_prime_maps_are_symmetric() {
        let p = tanaka_prolong(&h3(), &DegreeZero::AllDerivations, 2).unwrap();
        let g = &p.graded;
        for h in 0..=2 {
            for eta in g.g_prime(h).basis() {
                let m = g.iterated_map(eta, h as usize + 1);
                assert!(m.is_symmetric());
            }
        }
    }
}
