use super::{Field, LieAlgebra, LieError};
use crate::exact::{axpy, BasisCoords, Matrix, Scalar, Vector};

/// Coordinates of a square matrix in the field's scalar coordinates.
///
/// Over ℚ the real and imaginary parts of the entries are separate real
/// coordinates, so a ℚ-span of complex matrices is handled as a real space.
pub fn flatten_matrix(m: &Matrix, field: Field) -> Vector {
    match field {
        Field::Gaussian => m.entries().to_vec(),
        Field::Rational => m
            .entries()
            .iter()
            .map(Scalar::re_part)
            .chain(m.entries().iter().map(Scalar::im_part))
            .collect(),
    }
}

/// Linear map from abstract coordinates to matrices.
#[derive(Clone, Debug)]
pub struct MatrixEmbedding {
    matrices: Vec<Matrix>,
}

impl MatrixEmbedding {
    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `Σ xₖ Mₖ`. Complex coefficients give the complexified image.
    pub fn apply(&self, x: &[Scalar]) -> Matrix {
        let m0 = &self.matrices[0];
        let mut data = vec![Scalar::zero(); m0.rows() * m0.cols()];
        for (c, m) in x.iter().zip(&self.matrices) {
            axpy(&mut data, c, m.entries());
        }
        let rows = data.chunks(m0.cols()).map(|r| r.to_vec()).collect();
        Matrix::from_rows(m0.cols(), rows).expect("square")
    }
}

/// Abstract Lie algebra of a commutator-closed span of matrices.
pub fn from_matrices(
    name: &str,
    field: Field,
    labels: Vec<String>,
    mats: Vec<Matrix>,
) -> Result<(LieAlgebra, MatrixEmbedding), LieError> {
    assert_eq!(labels.len(), mats.len(), "one label per matrix");
    if mats.is_empty() {
        return Ok((LieAlgebra::new(name, field, labels, [])?, MatrixEmbedding { matrices: mats }));
    }
    let flat: Vec<Vector> = mats.iter().map(|m| flatten_matrix(m, field)).collect();
    let coords = BasisCoords::new(flat[0].len(), flat.clone()).map_err(|_| LieError::DependentGenerators)?;
    let mut brackets = Vec::new();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let c = mats[i].commutator(&mats[j])?;
            if c.is_zero() {
                continue;
            }
            let x = coords
                .coords(&flatten_matrix(&c, field))
                .ok_or(LieError::NotClosed(i, j))?;
            let terms = x
                .into_iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .collect();
            brackets.push(((i, j), terms));
        }
    }
    let a = LieAlgebra::new(name, field, labels, brackets)?;
    Ok((a, MatrixEmbedding { matrices: mats }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_from_matrices() {
        let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let h = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        let labels = vec!["E".into(), "F".into(), "H".into()];
        let (a, emb) = from_matrices("sl2", Field::Rational, labels, vec![e, f, h]).unwrap();
        let b = |i: usize| a.basis_vector(i);
        let two = Scalar::from_int(2);
        assert_eq!(a.bracket(&b(2), &b(0)), crate::exact::scale_vector(&two, &b(0)));
        assert_eq!(a.bracket(&b(2), &b(1)), crate::exact::scale_vector(&-two, &b(1)));
        assert_eq!(a.bracket(&b(0), &b(1)), b(2));
        // the embedding is a homomorphism
        let x = vec![Scalar::from_int(1), Scalar::from_ratio(-1, 2), Scalar::from_int(3)];
        let y = vec![Scalar::from_int(-2), Scalar::from_int(5), Scalar::from_ratio(1, 3)];
        let lhs = emb.apply(&a.bracket(&x, &y));
        let rhs = emb.apply(&x).commutator(&emb.apply(&y)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn single_matrix_is_abelian() {
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let (a, _) = from_matrices("one", Field::Rational, vec!["M".into()], vec![m]).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.structure_constants().is_empty());
    }

    #[test]
    fn detects_failures() {
        let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let f = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let r = from_matrices("x", Field::Rational, vec!["E".into(), "F".into()], vec![e.clone(), f]);
        assert_eq!(r.unwrap_err(), LieError::NotClosed(0, 1));
        let r = from_matrices("x", Field::Rational, vec!["E".into(), "E2".into()], vec![e.clone(), e.scale(&Scalar::from_int(2))]);
        assert_eq!(r.unwrap_err(), LieError::DependentGenerators);
    }
}
