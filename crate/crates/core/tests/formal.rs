use crlab::exact::{Scalar, Subspace, Vector};
use crlab::formal::{
    bch_coefficients, module_generated, realization_kernel, Distribution, StarRealization, TruncatedSeries,
    TruncatedVectorField,
};
use crlab::lie::{presets, Field, LieAlgebra};

fn anti_homomorphism_holds(st: &StarRealization) -> bool {
    let a = st.algebra();
    let r = st.right_basis();
    let n = a.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = r[i].bracket(&r[j]).unwrap();
            let target = st.right(&a.bracket(&a.basis_vector(i), &a.basis_vector(j))).field.truncate(lhs.order());
            if !lhs.add_scaled(&Scalar::one(), &target).is_zero() {
                return false;
            }
        }
    }
    true
}

fn span(n: usize, vs: &[Vector]) -> Subspace {
    Subspace::span_of(n, vs)
}

#[test]
fn star_fields_are_anti_homomorphic_on_small_pairs() {
    let sl2 = presets::sl2();
    let h3 = presets::heisenberg(1);
    let pairs = [
        (sl2.clone(), Subspace::zero(3)),
        (sl2.clone(), span(3, &[sl2.basis_vector(1)])),
        (sl2.clone(), span(3, &[sl2.basis_vector(0), sl2.basis_vector(1)])),
        (h3.clone(), Subspace::zero(3)),
        (h3.clone(), span(3, &[h3.basis_vector(2)])),
        (h3.clone(), span(3, &[h3.basis_vector(0)])),
    ];
    for (a, h0) in pairs {
        let st = StarRealization::new(&a, &h0, a.dim()).unwrap();
        assert!(anti_homomorphism_holds(&st), "{} / dim h0 {}", a.name(), h0.dim());
    }
}

#[test]
fn star_fields_on_a_five_dimensional_solvable_pair() {
    // e0 acts diagonally on e1..e4 with weights 1, 2, 3, −1 and [e1, e2] = e3
    let one = Scalar::one();
    let a = LieAlgebra::new(
        "solv5",
        Field::Rational,
        (0..5).map(|k| format!("e{k}")).collect(),
        [
            ((0, 1), vec![(1, one.clone())]),
            ((0, 2), vec![(2, Scalar::from_int(2))]),
            ((0, 3), vec![(3, Scalar::from_int(3))]),
            ((0, 4), vec![(4, -one.clone())]),
            ((1, 2), vec![(3, one.clone())]),
        ],
    )
    .unwrap();
    a.validate().unwrap();
    let h0 = span(5, &[a.basis_vector(0)]);
    let st = StarRealization::new(&a, &h0, 5).unwrap();
    assert!(anti_homomorphism_holds(&st));
    assert!(realization_kernel(&st).is_zero());
}

#[test]
fn complement_choice_does_not_matter_for_the_kernel() {
    let sl2 = presets::sl2();
    let h0 = span(3, &[sl2.basis_vector(1)]);
    // V = span{H + E, F + 2E}
    let v = vec![
        vec![Scalar::one(), Scalar::one(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::from_int(2), Scalar::one()],
    ];
    let st = StarRealization::with_complement(&sl2, &h0, v, 3).unwrap();
    assert!(anti_homomorphism_holds(&st));
    assert!(realization_kernel(&st).is_zero());
}

#[test]
fn realization_kernel_is_the_largest_ideal_in_the_isotropy() {
    let h5 = presets::heisenberg(2);
    let sl2 = presets::sl2();
    let cases = [
        (h5.clone(), span(5, &[h5.basis_vector(4)])),
        (h5.clone(), span(5, &[h5.basis_vector(0), h5.basis_vector(4)])),
        (h5.clone(), span(5, &[h5.basis_vector(0)])),
        (sl2.clone(), span(3, &[sl2.basis_vector(0)])),
        (LieAlgebra::abelian(3), span(3, &[LieAlgebra::abelian(3).basis_vector(1)])),
    ];
    for (a, h0) in cases {
        let st = StarRealization::new(&a, &h0, a.dim()).unwrap();
        assert_eq!(realization_kernel(&st), a.largest_ideal_in(&h0));
    }
}

/// Membership of `f` in the span of `gens` with series coefficients, through
/// the order of `f`.
fn in_module(f: &TruncatedVectorField, gens: &[TruncatedVectorField]) -> bool {
    let d = f.dim();
    let order = f.order();
    let mut cols: Vec<TruncatedVectorField> = Vec::new();
    for g in gens {
        for h in 0..=order {
            for m in crlab::formal::monomials(d, h) {
                cols.push(g.truncate(order).mul_series(&TruncatedSeries::monomial(d, order, m, Scalar::one())));
            }
        }
    }
    let mut keys = std::collections::BTreeSet::new();
    for c in cols.iter().chain([f]) {
        for (m, v) in c.terms() {
            for i in 0..v.len() {
                keys.insert((m.clone(), i));
            }
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let flatten = |c: &TruncatedVectorField| -> Vector {
        keys.iter()
            .map(|(m, i)| c.terms().get(m).map_or(Scalar::zero(), |v| v[*i].clone()))
            .collect()
    };
    let spanned = Subspace::span_of(keys.len(), &cols.iter().map(flatten).collect::<Vec<_>>());
    spanned.contains_unchecked(&flatten(f))
}

#[test]
fn mixed_brackets_stay_in_the_orbit_module() {
    let sl2 = presets::sl2();
    let h0 = span(3, &[sl2.basis_vector(1)]);
    let st = StarRealization::new(&sl2, &h0, 4).unwrap();
    for y in 0..3 {
        let yv = sl2.basis_vector(y);
        // smallest h0-stable subspace containing Y
        let mut orbit = span(3, std::slice::from_ref(&yv));
        loop {
            let next = orbit.sum(&sl2.bracket_spaces(&h0, &orbit)).unwrap();
            if next == orbit {
                break;
            }
            orbit = next;
        }
        let gens: Vec<TruncatedVectorField> = orbit.basis().iter().map(|z| st.left(z).field).collect();
        let ly = st.left(&yv).field;
        for x in 0..3 {
            let rx = st.right(&sl2.basis_vector(x)).field;
            let br = rx.bracket(&ly).unwrap();
            assert!(in_module(&br, &gens), "X = e{x}, Y = e{y}");
        }
    }
}

#[test]
fn left_and_right_star_fields_commute_without_isotropy() {
    let h5 = presets::heisenberg(2);
    let st = StarRealization::new(&h5, &Subspace::zero(5), 4).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let r = st.right(&h5.basis_vector(i)).field;
            let l = st.left(&h5.basis_vector(j)).field;
            assert!(r.bracket(&l).unwrap().is_zero());
        }
    }
}

#[test]
fn isotropy_directions_have_vanishing_left_fields() {
    let sl2 = presets::sl2();
    let h0 = span(3, &[sl2.basis_vector(0), sl2.basis_vector(1)]);
    let st = StarRealization::new(&sl2, &h0, 5).unwrap();
    for y in h0.basis() {
        assert!(st.left(y).field.is_zero());
    }
}

#[test]
fn sphere_module_is_recovered() {
    let h3 = presets::heisenberg(1);
    let st = StarRealization::new(&h3, &Subspace::zero(3), 3).unwrap();
    let q = span(3, &[vec![Scalar::one(), -Scalar::i(), Scalar::zero()]]);
    let g = module_generated(&st, &Distribution::Complex(q.clone())).unwrap();
    assert_eq!(g.fields.len(), 1);
    assert_eq!(g.recovered, q);
}

#[test]
fn bch_tail_matches_bernoulli_numbers() {
    // bₕ = (−1)ʰ Bₕ / h! for h ≥ 2 with B₂ = 1/6, B₄ = −1/30, B₆ = 1/42, B₈ = −1/30
    let b = bch_coefficients(8);
    assert_eq!(b[2], Scalar::from_ratio(1, 12));
    assert_eq!(b[4], Scalar::from_ratio(-1, 720));
    assert_eq!(b[6], Scalar::from_ratio(1, 30240));
    assert_eq!(b[8], Scalar::from_ratio(-1, 1209600));
    assert!(b[3].is_zero() && b[5].is_zero() && b[7].is_zero());
}
