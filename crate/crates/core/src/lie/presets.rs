//! Named example algebras.

use super::{from_matrices, Field, LieAlgebra, LieError, MatrixEmbedding};
use crate::exact::{Matrix, Scalar, Subspace};

/// Heisenberg algebra of dimension `2n+1`: `[Xₖ, Yₖ] = Z`.
pub fn heisenberg(n: usize) -> LieAlgebra {
    let mut labels: Vec<String> = (1..=n).map(|k| format!("X{k}")).collect();
    labels.extend((1..=n).map(|k| format!("Y{k}")));
    labels.push("Z".into());
    if n == 1 {
        labels = vec!["X".into(), "Y".into(), "Z".into()];
    }
    let z = 2 * n;
    let brackets = (0..n).map(|k| ((k, n + k), vec![(z, Scalar::one())]));
    LieAlgebra::new(format!("heisenberg:{n}"), Field::Rational, labels, brackets).expect("heisenberg")
}

/// `sl₂` with basis `H, E, F`.
pub fn sl2() -> LieAlgebra {
    let two = Scalar::from_int(2);
    LieAlgebra::new(
        "sl2",
        Field::Rational,
        vec!["H".into(), "E".into(), "F".into()],
        [
            ((0, 1), vec![(1, two.clone())]),
            ((0, 2), vec![(2, -two)]),
            ((1, 2), vec![(0, Scalar::one())]),
        ],
    )
    .expect("sl2")
}

/// Resolves `heisenberg:n`, `abelian:n`, `sl2` and `su15`.
pub fn preset(name: &str) -> Result<LieAlgebra, LieError> {
    let unknown = || LieError::UnknownPreset(name.to_string());
    match name {
        "sl2" => Ok(sl2()),
        "su15" => Ok(su15().algebra),
        _ => {
            let (kind, n) = name.split_once(':').ok_or_else(unknown)?;
            let n: usize = n.parse().map_err(|_| unknown())?;
            match kind {
                "heisenberg" if n >= 1 => Ok(heisenberg(n)),
                "abelian" => Ok(LieAlgebra::abelian(n)),
                _ => Err(unknown()),
            }
        }
    }
}

/// `su(1,5)` in its 6×6 matrix form together with two parabolic CR structures.
#[derive(Clone, Debug)]
pub struct Su15 {
    pub algebra: LieAlgebra,
    pub embedding: MatrixEmbedding,
    /// Complex subalgebra: block lower-triangular zero pattern with a 2×2 top block.
    pub q: Subspace,
    /// Enlarges `q` by the entry in row 3, column 2 (0-based).
    pub q_prime: Subspace,
}

const N: usize = 6;

fn gen(entries: &[((usize, usize), Scalar)]) -> Matrix {
    let mut m = Matrix::zeros(N, N);
    for ((r, c), v) in entries {
        m[(*r, *c)] += v;
    }
    m
}

/// Real generators of the anti-Hermitian (for the form with `H₀₅ = H₅₀ = 1`)
/// traceless matrices, one per real parameter.
fn su15_generators() -> (Vec<String>, Vec<Matrix>) {
    let one = Scalar::one();
    let i = Scalar::i();
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut push = |l: String, m: Matrix| {
        labels.push(l);
        mats.push(m);
    };
    // λ at (0,0), −λ̄ at (5,5); im λ is balanced by t₄ = −2
    push("re_lambda".into(), gen(&[((0, 0), one.clone()), ((5, 5), -&one)]));
    push(
        "im_lambda".into(),
        gen(&[((0, 0), i.clone()), ((5, 5), i.clone()), ((4, 4), Scalar::gaussian(0, -2))]),
    );
    for k in 1..=4 {
        // z at (k,0), −z̄ at (5,k)
        push(format!("re_z{k}"), gen(&[((k, 0), one.clone()), ((5, k), -&one)]));
        push(format!("im_z{k}"), gen(&[((k, 0), i.clone()), ((5, k), i.clone())]));
    }
    for k in 1..=4 {
        // ζ at (0,k), −ζ̄ at (k,5)
        push(format!("re_zeta{k}"), gen(&[((0, k), one.clone()), ((k, 5), -&one)]));
        push(format!("im_zeta{k}"), gen(&[((0, k), i.clone()), ((k, 5), i.clone())]));
    }
    let w_pos = [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (4, 3)];
    for (k, &(r, c)) in w_pos.iter().enumerate() {
        push(format!("re_w{}", k + 1), gen(&[((r, c), one.clone()), ((c, r), -&one)]));
        push(format!("im_w{}", k + 1), gen(&[((r, c), i.clone()), ((c, r), i.clone())]));
    }
    push("s".into(), gen(&[((5, 0), i.clone())]));
    push("sigma".into(), gen(&[((0, 5), i.clone())]));
    for k in 1..=3 {
        push(format!("t{k}"), gen(&[((k, k), i.clone()), ((4, 4), -&i)]));
    }
    (labels, mats)
}

/// Complex subspace of the complexification whose matrices vanish at `zeros`.
fn pattern_subspace(emb: &MatrixEmbedding, zeros: &[(usize, usize)]) -> Subspace {
    let n = emb.matrices().len();
    let full = Subspace::full(n);
    full.restrict(|c| {
        let m = emb.apply(c);
        zeros.iter().map(|&(r, k)| m[(r, k)].clone()).collect()
    })
}

pub fn su15() -> Su15 {
    let (labels, mats) = su15_generators();
    let (algebra, embedding) = from_matrices("su15", Field::Rational, labels, mats).expect("su(1,5) closes");
    let q_zeros: Vec<(usize, usize)> = [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
        .into_iter()
        .chain((4..6).flat_map(|r| (0..4).map(move |c| (r, c))))
        .collect();
    let qp_zeros: Vec<(usize, usize)> = q_zeros.iter().copied().filter(|&p| p != (3, 2)).collect();
    let q = pattern_subspace(&embedding, &q_zeros);
    let q_prime = pattern_subspace(&embedding, &qp_zeros);
    Su15 {
        algebra,
        embedding,
        q,
        q_prime,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve() {
        assert_eq!(preset("heisenberg:2").unwrap().dim(), 5);
        assert_eq!(preset("abelian:4").unwrap().dim(), 4);
        assert_eq!(preset("sl2").unwrap().dim(), 3);
        assert!(preset("heisenberg:0").is_err());
        assert!(preset("so3").is_err());
    }

    #[test]
    fn sl2_matches_commutators() {
        let h = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let (a, _) = from_matrices("sl2", Field::Rational, vec!["H".into(), "E".into(), "F".into()], vec![h, e, f]).unwrap();
        assert_eq!(a, sl2());
    }

    #[test]
    fn su15_fixture_shape() {
        let f = su15();
        assert_eq!(f.algebra.dim(), 35);
        assert!(f.algebra.validate().is_ok());
        // every generator is traceless and anti-Hermitian for the form H
        let mut h = Matrix::zeros(N, N);
        h[(0, 5)] = Scalar::one();
        h[(5, 0)] = Scalar::one();
        for k in 1..5 {
            h[(k, k)] = Scalar::one();
        }
        for m in f.embedding.matrices() {
            assert!(m.trace().is_zero());
            let mut adj = m.transpose();
            for r in 0..N {
                for c in 0..N {
                    adj[(r, c)] = adj[(r, c)].conj();
                }
            }
            let lhs = adj.mul(&h).unwrap().add(&h.mul(m).unwrap());
            assert!(lhs.is_zero());
        }
        assert_eq!(f.q.dim(), 22);
        assert_eq!(f.q_prime.dim(), 23);
        assert!(f.q.leq(&f.q_prime).unwrap());
        let c = f.algebra.complexify();
        assert!(c.algebra().is_subalgebra(&f.q));
        assert!(c.algebra().is_subalgebra(&f.q_prime));
        assert_eq!(f.q.sum(&f.q.conj()).unwrap().dim(), 30);
    }
}
