use crlab::exact::{Scalar, Subspace, Vector};
use crlab::lie::{presets, Field, LieAlgebra, Manifest};

fn jacobi_residuals_vanish(a: &LieAlgebra) -> bool {
    let n = a.dim();
    let e = |k| a.basis_vector(k);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = a.bracket(&a.bracket(&e(i), &e(j)), &e(k));
                for (x, y) in s.iter_mut().zip(a.bracket(&a.bracket(&e(j), &e(k)), &e(i))) {
                    *x += &y;
                }
                for (x, y) in s.iter_mut().zip(a.bracket(&a.bracket(&e(k), &e(i)), &e(j))) {
                    *x += &y;
                }
                if !s.iter().all(Scalar::is_zero) {
                    return false;
                }
            }
        }
    }
    true
}

fn four_dim_tables() -> Vec<LieAlgebra> {
    let one = Scalar::one;
    let t = |name: &str, b: Vec<((usize, usize), Vec<(usize, Scalar)>)>| {
        LieAlgebra::new(name, Field::Rational, (0..4).map(|k| format!("e{k}")).collect(), b).unwrap()
    };
    vec![
        // filiform
        t("fil4", vec![((0, 1), vec![(2, one())]), ((0, 2), vec![(3, one())])]),
        // h3 ⊕ ℚ
        t("h3+1", vec![((0, 1), vec![(2, one())])]),
        // e0 acting diagonally
        t("diag", vec![((0, 1), vec![(1, one())]), ((0, 2), vec![(2, -one())]), ((1, 2), vec![(3, one())])]),
        // Jacobi residual on (e0, e1, e2) is 2·e3
        t("broken", vec![((0, 1), vec![(1, one())]), ((0, 2), vec![(2, one())]), ((1, 2), vec![(3, one())])]),
        t("gl2", vec![((0, 1), vec![(1, Scalar::from_int(2))]), ((0, 2), vec![(2, Scalar::from_int(-2))]), ((1, 2), vec![(0, one())])]),
    ]
}

#[test]
fn validate_agrees_with_brute_force_jacobi() {
    let mut all = four_dim_tables();
    all.extend([presets::sl2(), presets::heisenberg(2), LieAlgebra::abelian(3)]);
    for a in all {
        assert_eq!(a.validate().is_ok(), jacobi_residuals_vanish(&a), "{}", a.name());
        assert_eq!(a.validate().is_ok(), a.name() != "broken");
    }
}

/// All subspaces of ℚ⁴ spanned by basis vectors and sums of two of them.
fn candidate_subspaces() -> Vec<Subspace> {
    let n = 4;
    let mut gens: Vec<Vector> = (0..n).map(|k| unit(n, k)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(n, i);
            v[j] = Scalar::one();
            gens.push(v);
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << gens.len()) {
        if mask.count_ones() > 3 {
            continue;
        }
        let vs: Vec<Vector> = (0..gens.len()).filter(|k| mask >> k & 1 == 1).map(|k| gens[k].clone()).collect();
        let s = Subspace::span_of(n, &vs);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn unit(n: usize, k: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

#[test]
fn largest_ideal_matches_the_candidate_lattice() {
    let candidates = candidate_subspaces();
    for a in four_dim_tables().into_iter().filter(|a| a.validate().is_ok()) {
        let ideals: Vec<&Subspace> = candidates.iter().filter(|s| a.is_ideal(s)).collect();
        for s in &candidates {
            let mut joined = Subspace::zero(4);
            for i in ideals.iter().filter(|i| i.leq(s).unwrap()) {
                joined = joined.sum(i).unwrap();
            }
            let ideal = a.largest_ideal_in(s);
            // the candidate join is a lower bound; equality whenever the answer is a candidate
            assert!(joined.leq(&ideal).unwrap(), "{}", a.name());
            assert!(a.is_ideal(&ideal) && ideal.leq(s).unwrap());
            if candidates.contains(&ideal) {
                assert_eq!(joined, ideal, "{} in {:?}", a.name(), s.basis());
            }
        }
    }
}

#[test]
fn su15_brackets_reproduce_matrix_commutators() {
    let f = presets::su15();
    let emb = &f.embedding;
    let x: Vector = (0..35).map(|k| Scalar::from_int((k % 5) as i64 - 2)).collect();
    let y: Vector = (0..35).map(|k| Scalar::from_int((k * 7 % 3) as i64 - 1)).collect();
    let lhs = emb.apply(&f.algebra.bracket(&x, &y));
    let rhs = emb.apply(&x).commutator(&emb.apply(&y)).unwrap();
    assert_eq!(lhs, rhs);
    assert!(f.algebra.validate().is_ok());
    assert_eq!(f.q_prime.dim(), f.q.dim() + 1);
    assert!(f.q.leq(&f.q_prime).unwrap());
}

#[test]
fn real_traces_are_nested() {
    let f = presets::su15();
    let g = f.algebra.complexify();
    for q in [&f.q, &f.q_prime] {
        let (tilde, breve) = g.real_trace(q);
        assert!(breve.leq(&tilde).unwrap());
        assert!(tilde.is_real() && breve.is_real());
    }
}

#[test]
fn manifest_round_trip_is_stable() {
    for name in ["heisenberg:2", "sl2", "abelian:3", "su15"] {
        let a = presets::preset(name).unwrap();
        let m = Manifest::from_algebra(&a);
        let text = m.to_json();
        let back = Manifest::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        let b = back.to_algebra().unwrap();
        assert_eq!(b.structure_constants(), a.structure_constants());
    }
}

#[test]
fn conjugation_commutes_with_brackets() {
    let g = presets::sl2().complexify();
    let x = vec![Scalar::gaussian(1, 2), Scalar::gaussian(0, -1), Scalar::gaussian(3, 0)];
    let y = vec![Scalar::gaussian(-2, 1), Scalar::gaussian(1, 1), Scalar::gaussian(0, 2)];
    assert_eq!(g.conj(&g.bracket(&x, &y)), g.bracket(&g.conj(&x), &g.conj(&y)));
}
