use crlab::chains::CRAlgebra;
use crlab::exact::{Scalar, Subspace, Vector};
use crlab::graded::{
    associated_graded, complex_structure, degree_zero_action, finiteness_check, tanaka_prolong, DegreeZero,
    GradedLieAlgebra, Termination,
};
use crlab::lie::presets;

fn sphere(n: usize) -> CRAlgebra {
    let vs: Vec<Vector> = (0..n)
        .map(|k| {
            let mut v = vec![Scalar::zero(); 2 * n + 1];
            v[k] = Scalar::one();
            v[n + k] = -Scalar::i();
            v
        })
        .collect();
    CRAlgebra::new(&presets::heisenberg(n), Subspace::span_of(2 * n + 1, &vs)).unwrap()
}

fn graded_of(c: &CRAlgebra) -> (GradedLieAlgebra, DegreeZero) {
    let t = c.associated_triple().unwrap();
    let g = associated_graded(c.real_form(), t.filtration());
    let j = complex_structure(c, t.filtration(), &g);
    assert!(j.squares_to_minus_identity());
    assert!(j.compatible_with(&g));
    (g, DegreeZero::JCommuting(j.matrix))
}

#[test]
fn five_dimensional_sphere_prolongs_to_su31() {
    let (g, zero) = graded_of(&sphere(2));
    assert!(g.levi_form().unwrap().is_nondegenerate());
    let p = tanaka_prolong(&g, &zero, 8).unwrap();
    assert_eq!(p.dims(), vec![(-2, 1), (-1, 4), (0, 5), (1, 4), (2, 1), (3, 0)]);
    assert!(p.graded.algebra().validate().is_ok());
    let f = finiteness_check(&p, 0).unwrap();
    assert_eq!(f.total_dim, 15);
}

#[test]
fn su15_graded_pieces() {
    let f = presets::su15();
    let c = CRAlgebra::new(&f.algebra, f.q).unwrap();
    let (g, zero) = graded_of(&c);
    // dim 𝔤₀ − dim(q + q̄)∩𝔤₀ = 35 − 30 at the bottom, 12 = dim of J's domain
    assert_eq!(g.dims(), vec![(-2, 5), (-1, 12), (0, 13), (1, 4), (2, 1)]);
    assert!(g.is_fundamental() && g.is_transitive() && g.respects_grading());
    let p = tanaka_prolong(&g, &zero, 6).unwrap();
    assert!(p.is_finite());
    assert_eq!(p.graded.component_dim(-1), 12);
    // reprolonging with the degree-zero action of the associated graded gives it back
    let back = tanaka_prolong(&g, &degree_zero_action(&g), 6).unwrap();
    assert_eq!(back.total_dim(), Some(35));
}

#[test]
fn abelian_model_caps_out() {
    let m = GradedLieAlgebra::new(crlab::lie::LieAlgebra::abelian(2), vec![-1, -1]);
    let p = tanaka_prolong(&m, &DegreeZero::AllDerivations, 4).unwrap();
    assert_eq!(p.termination, Termination::CapReached { max_degree: 4 });
    assert!(finiteness_check(&p, 0).is_err());
}
