use std::collections::BTreeMap;

use super::FormalError;
use crate::exact::{axpy, is_zero_vector, scale_vector, zero_vector, Matrix, Scalar, Vector};

/// Monomial as a sorted multiset of variable indices; its length is the degree.
pub type Mono = Vec<usize>;

/// All monomials of degree `h` in `d` variables, in lexicographic order.
pub fn monomials(d: usize, h: usize) -> Vec<Mono> {
    fn rec(d: usize, h: usize, start: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, h, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 || h == 0 {
        rec(d, h, 0, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn mono_mul(a: &[usize], b: &[usize]) -> Mono {
    let mut m = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            m.push(a[i]);
            i += 1;
        } else {
            m.push(b[j]);
            j += 1;
        }
    }
    m.extend_from_slice(&a[i..]);
    m.extend_from_slice(&b[j..]);
    m
}

/// `∂ⱼ xᵐ = mult · x^{m−eⱼ}`
pub(crate) fn mono_diff(m: &[usize], j: usize) -> Option<(i64, Mono)> {
    let mult = m.iter().filter(|&&v| v == j).count();
    if mult == 0 {
        return None;
    }
    let pos = m.iter().position(|&v| v == j).unwrap();
    let mut rest = m.to_vec();
    rest.remove(pos);
    Some((mult as i64, rest))
}

fn mono_eval(m: &[usize], point: &[Scalar]) -> Scalar {
    let mut s = Scalar::one();
    for &i in m {
        s = &s * &point[i];
    }
    s
}

/// `h! / Π mₖ!` for the multiset `m`: the number of orderings of its entries.
fn orderings(m: &[usize]) -> Scalar {
    let mut total = Scalar::one();
    let mut k = 0;
    let mut run = 0;
    let mut prev = None;
    for &v in m {
        k += 1;
        if Some(v) == prev {
            run += 1;
        } else {
            run = 1;
            prev = Some(v);
        }
        total = &(&total * &Scalar::from_int(k)) * &Scalar::from_int(run).inv().unwrap();
    }
    total
}

/// Formal power series in `dim` variables, truncated after degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    dim: usize,
    order: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, order: usize) -> Self {
        TruncatedSeries {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(dim: usize, order: usize, m: Mono, c: Scalar) -> Self {
        let mut s = Self::zero(dim, order);
        if m.len() <= order && !c.is_zero() {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn value_at_zero(&self) -> Scalar {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(other.order);
        let mut out = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.len() + b.len() <= order {
                    let e = out.entry(mono_mul(a, b)).or_insert_with(Scalar::zero);
                    e.add_mul(ca, cb);
                }
            }
        }
        out.retain(|_, v: &mut Scalar| !v.is_zero());
        TruncatedSeries {
            dim: self.dim,
            order,
            terms: out,
        }
    }

    /// `D_v` of the series: the derivative along the constant direction `v`.
    pub fn derivative(&self, v: &[Scalar]) -> TruncatedSeries {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            for (j, vj) in v.iter().enumerate() {
                if let Some((mult, rest)) = mono_diff(m, j) {
                    let e = out.entry(rest).or_insert_with(Scalar::zero);
                    e.add_mul(&(c * vj), &Scalar::from_int(mult));
                }
            }
        }
        out.retain(|_, v: &mut Scalar| !v.is_zero());
        TruncatedSeries {
            dim: self.dim,
            order: self.order.saturating_sub(1),
            terms: out,
        }
    }
}

/// Formal vector field `Σₕ Xₕ` on `V = ℚ^dim`, truncated after degree `order`.
///
/// Stored as polynomial coefficients; `tensor(h)` gives the symmetric
/// multilinear form with `Xₕ(v) = αₕ(v, …, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedVectorField {
    dim: usize,
    order: usize,
    terms: BTreeMap<Mono, Vector>,
}

impl TruncatedVectorField {
    pub fn zero(dim: usize, order: usize) -> Self {
        TruncatedVectorField {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a field from raw terms, dropping zeros and degrees above `order`.
    pub fn from_terms(dim: usize, order: usize, terms: impl IntoIterator<Item = (Mono, Vector)>) -> Self {
        let mut f = Self::zero(dim, order);
        for (mut m, v) in terms {
            assert_eq!(v.len(), dim);
            m.sort_unstable();
            if m.len() <= order {
                f.add_term(m, &Scalar::one(), &v);
            }
        }
        f
    }

    pub fn constant(v: Vector, order: usize) -> Self {
        Self::from_terms(v.len(), order, [(Vec::new(), v)])
    }

    /// The linear field `x ↦ P x`.
    pub fn linear(p: &Matrix, order: usize) -> Self {
        let d = p.rows();
        Self::from_terms(d, order, (0..d).map(|j| (vec![j], p.column(j))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Vector> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn value_at_zero(&self) -> Vector {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| zero_vector(self.dim))
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: &Scalar, v: &[Scalar]) {
        if c.is_zero() || is_zero_vector(v) {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(|| zero_vector(v.len()));
        axpy(e, c, v);
        if is_zero_vector(e) {
            self.terms.remove(&m);
        }
    }

    /// Degree-`h` part as polynomial terms.
    pub fn component(&self, h: usize) -> impl Iterator<Item = (&Mono, &Vector)> {
        self.terms.iter().filter(move |(m, _)| m.len() == h)
    }

    /// Symmetric `h`-linear form `αₕ` on basis arguments (sorted index lists).
    pub fn tensor(&self, h: usize) -> BTreeMap<Mono, Vector> {
        self.component(h)
            .map(|(m, v)| {
                let c = orderings(m).inv().unwrap();
                (m.clone(), scale_vector(&c, v))
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedVectorField {
            dim: self.dim,
            order: order.min(self.order),
            terms: self.terms.iter().filter(|(m, _)| m.len() <= order).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (m, v) in &self.terms {
            axpy(&mut out, &mono_eval(m, point), v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut f = Self::zero(self.dim, self.order);
        for (m, v) in &self.terms {
            f.add_term(m.clone(), c, v);
        }
        f
    }

    /// `self + c · other`, truncated at the smaller order.
    pub fn add_scaled(&self, c: &Scalar, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let order = self.order.min(other.order);
        let mut f = self.truncate(order);
        for (m, v) in other.terms.iter().filter(|(m, _)| m.len() <= order) {
            f.add_term(m.clone(), c, v);
        }
        f
    }

    /// Product `f · X` with a scalar series.
    pub fn mul_series(&self, f: &TruncatedSeries) -> Self {
        let order = self.order.min(f.order);
        let mut out = Self::zero(self.dim, order);
        for (a, ca) in f.terms() {
            for (b, v) in &self.terms {
                if a.len() + b.len() <= order {
                    out.add_term(mono_mul(a, b), ca, v);
                }
            }
        }
        out
    }

    /// `Σⱼ Aʲ ∂ⱼ B`, keeping degrees up to `order`.
    fn apply(a: &Self, b: &Self, order: usize, sign: &Scalar, out: &mut BTreeMap<Mono, Vector>) {
        for (mb, vb) in &b.terms {
            let Some(max_a) = (order + 1).checked_sub(mb.len()) else { continue };
            let mut seen = Vec::new();
            for &j in mb {
                if seen.contains(&j) {
                    continue;
                }
                seen.push(j);
                let (mult, rest) = mono_diff(mb, j).unwrap();
                let c0 = sign * &Scalar::from_int(mult);
                for (ma, va) in a.terms.iter().filter(|(m, _)| m.len() <= max_a) {
                    if va[j].is_zero() {
                        continue;
                    }
                    let c = &c0 * &va[j];
                    let e = out.entry(mono_mul(ma, &rest)).or_insert_with(|| zero_vector(vb.len()));
                    axpy(e, &c, vb);
                }
            }
        }
    }

    /// `[A, B] = A(B) − B(A)`, exact through degree `min order − 1`.
    pub fn bracket(&self, other: &Self) -> Result<Self, FormalError> {
        if self.dim != other.dim {
            return Err(FormalError::DimensionMismatch(self.dim, other.dim));
        }
        let order = self.order.min(other.order);
        if order == 0 {
            return Err(FormalError::OrderExhausted);
        }
        let order = order - 1;
        let mut terms = BTreeMap::new();
        Self::apply(self, other, order, &Scalar::one(), &mut terms);
        Self::apply(other, self, order, &-Scalar::one(), &mut terms);
        terms.retain(|m, v| m.len() <= order && !is_zero_vector(v));
        Ok(TruncatedVectorField {
            dim: self.dim,
            order,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(2, 4).len(), 5);
        assert_eq!(monomials(0, 0), vec![Vec::<usize>::new()]);
        assert!(monomials(0, 1).is_empty());
    }

    #[test]
    fn constant_fields_commute() {
        let a = TruncatedVectorField::constant(vec![s(1), s(2)], 3);
        let b = TruncatedVectorField::constant(vec![s(0), s(5)], 3);
        assert!(a.bracket(&b).unwrap().is_zero());
    }

    #[test]
    fn linear_fields_bracket_to_reversed_commutator() {
        let p = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let q = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let a = TruncatedVectorField::linear(&p, 2);
        let b = TruncatedVectorField::linear(&q, 2);
        // [Px·∂, Qx·∂] = (QP − PQ)x·∂
        let expect = TruncatedVectorField::linear(&q.commutator(&p).unwrap(), 1);
        assert_eq!(a.bracket(&b).unwrap(), expect);
    }

    #[test]
    fn order_zero_bracket_fails() {
        let a = TruncatedVectorField::constant(vec![s(1)], 0);
        assert_eq!(a.bracket(&a), Err(FormalError::OrderExhausted));
    }

    #[test]
    fn tensor_of_square() {
        // x₀ x₁ ∂₀ has α(e₀, e₁) = α(e₁, e₀) = 1/2
        let f = TruncatedVectorField::from_terms(2, 2, [(vec![1, 0], vec![s(1), s(0)])]);
        let t = f.tensor(2);
        assert_eq!(t[&vec![0, 1]], vec![Scalar::from_ratio(1, 2), s(0)]);
        let g = TruncatedVectorField::from_terms(2, 2, [(vec![1, 1], vec![s(3), s(0)])]);
        assert_eq!(g.tensor(2)[&vec![1, 1]], vec![s(3), s(0)]);
    }

    #[test]
    fn series_derivative_contracts_last_slot() {
        // D_v(x₀²) = 2 v₀ x₀
        let f = TruncatedSeries::monomial(2, 3, vec![0, 0], s(1));
        let d = f.derivative(&[s(3), s(7)]);
        assert_eq!(d.terms()[&vec![0]], s(6));
    }

    fn field(d: usize, order: usize) -> impl Strategy<Value = TruncatedVectorField> {
        let monos: Vec<Mono> = (0..=order).flat_map(|h| monomials(d, h)).collect();
        let n = monos.len();
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, d), n).prop_map(move |cs| {
            TruncatedVectorField::from_terms(
                d,
                order,
                monos.iter().cloned().zip(cs).map(|(m, c)| (m, c.into_iter().map(Scalar::from_int).collect())),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bracket_is_antisymmetric(a in field(2, 3), b in field(2, 3)) {
            let ab = a.bracket(&b).unwrap();
            let ba = b.bracket(&a).unwrap();
            prop_assert!(ab.add_scaled(&Scalar::one(), &ba).is_zero());
        }

        #[test]
        fn jacobi_two_orders_down(a in field(2, 3), b in field(2, 3), c in field(2, 3)) {
            let j = a.bracket(&b.bracket(&c).unwrap()).unwrap()
                .add_scaled(&Scalar::one(), &b.bracket(&c.bracket(&a).unwrap()).unwrap())
                .add_scaled(&Scalar::one(), &c.bracket(&a.bracket(&b).unwrap()).unwrap());
            prop_assert_eq!(j.order(), 1);
            prop_assert!(j.is_zero());
        }

        #[test]
        fn tensor_recovers_polynomial(a in field(3, 3), p in proptest::collection::vec(-4i64..=4, 3)) {
            let p: Vec<Scalar> = p.into_iter().map(Scalar::from_int).collect();
            for h in 0..=3 {
                let mut direct = zero_vector(3);
                for (m, v) in a.component(h) {
                    axpy(&mut direct, &mono_eval(m, &p), v);
                }
                // α(p, …, p) summed over every ordered index tuple
                let t = a.tensor(h);
                let mut via = zero_vector(3);
                for tuple in 0..3usize.pow(h as u32) {
                    let idx: Vec<usize> = (0..h).map(|k| tuple / 3usize.pow(k as u32) % 3).collect();
                    let mut key = idx.clone();
                    key.sort_unstable();
                    if let Some(v) = t.get(&key) {
                        axpy(&mut via, &mono_eval(&idx, &p), v);
                    }
                }
                prop_assert_eq!(direct, via);
            }
        }
    }
}
