use super::GradedLieAlgebra;
use crate::chains::{CRAlgebra, ContactFiltration};
use crate::exact::{axpy, zero_vector, BasisCoords, Matrix, Scalar, Subspace, Vector};

/// Complex structure on `G₋₁`, as a matrix on its local coordinates.
///
/// Column `a` holds the coordinates of `J(ξₐ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure {
    pub matrix: Matrix,
}

impl ComplexStructure {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, xi: &[Scalar]) -> Vector {
        self.matrix.apply(xi)
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        let sq = self.matrix.mul(&self.matrix).unwrap();
        sq.add(&Matrix::identity(self.dim())).is_zero()
    }

    /// `[Jξ₁, Jξ₂] = [ξ₁, ξ₂]` and `[Jξ₁, ξ₂] + [ξ₁, Jξ₂] = 0` on basis pairs.
    pub fn compatible_with(&self, g: &GradedLieAlgebra) -> bool {
        let idx: Vec<usize> = g.indices(-1).collect();
        let embed = |local: &[Scalar]| {
            let mut v = zero_vector(g.dim());
            for (c, &k) in local.iter().zip(&idx) {
                v[k] = c.clone();
            }
            v
        };
        let d = idx.len();
        for a in 0..d {
            for b in 0..d {
                let (ea, eb) = (crate::exact::unit_vector(d, a), crate::exact::unit_vector(d, b));
                let (ja, jb) = (embed(&self.apply(&ea)), embed(&self.apply(&eb)));
                let (xa, xb) = (embed(&ea), embed(&eb));
                if g.bracket(&ja, &jb) != g.bracket(&xa, &xb) {
                    return false;
                }
                let mut s = g.bracket(&ja, &xb);
                axpy(&mut s, &Scalar::one(), &g.bracket(&xa, &jb));
                if !crate::exact::is_zero_vector(&s) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds real `Y` with `X + iY ∈ q`, for `X` in the real trace of `q`.
fn imaginary_partner(q: &Subspace, x: &[Scalar]) -> Option<Vector> {
    let n = q.ambient();
    let k = q.dim();
    // X = Σ uⱼ re(bⱼ) − vⱼ im(bⱼ);  Y = Σ uⱼ im(bⱼ) + vⱼ re(bⱼ)
    let mut a = Matrix::zeros(n, 2 * k);
    for (j, b) in q.basis().iter().enumerate() {
        for r in 0..n {
            a[(r, j)] = b[r].re_part();
            a[(r, k + j)] = -b[r].im_part();
        }
    }
    let uv = a.solve(x)?;
    let mut y = zero_vector(n);
    for (j, b) in q.basis().iter().enumerate() {
        let re: Vector = b.iter().map(Scalar::re_part).collect();
        let im: Vector = b.iter().map(Scalar::im_part).collect();
        axpy(&mut y, &uv[j], &im);
        axpy(&mut y, &uv[k + j], &re);
    }
    Some(y)
}

/// `J(π₋₁(X)) = π₋₁(Y)` whenever `X + iY ∈ q`.
///
/// `f` is the canonical filtration of the associated contact pair and `g`
/// its associated graded algebra. Panics if `J` fails to be well defined,
/// which would contradict `X ∈ 𝔉₀, X + iY ∈ q ⇒ Y ∈ 𝔉₀`.
pub fn complex_structure(c: &CRAlgebra, f: &ContactFiltration, g: &GradedLieAlgebra) -> ComplexStructure {
    let lifts = g.lifts().expect("graded algebra built from a filtration");
    let f0 = f.term(0);
    let f1 = f.term(-1);
    for x in f0.basis() {
        let y = imaginary_partner(c.q(), x).expect("F0 lies in the real trace");
        assert!(f0.contains_unchecked(&y), "J is not well defined on G_-1");
    }
    let idx: Vec<usize> = g.indices(-1).collect();
    let d = idx.len();
    let mut basis: Vec<Vector> = idx.iter().map(|&k| lifts[k].clone()).collect();
    basis.extend(f0.basis().iter().cloned());
    let coords = BasisCoords::new(c.q().ambient(), basis).expect("quotient basis");
    let mut m = Matrix::zeros(d, d);
    for (a, &k) in idx.iter().enumerate() {
        let y = imaginary_partner(c.q(), &lifts[k]).expect("lift lies in the real trace");
        assert!(f1.contains_unchecked(&y));
        let cy = coords.coords(&y).expect("Y in F_-1");
        for b in 0..d {
            m[(b, a)] = cy[b].clone();
        }
    }
    ComplexStructure { matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::associated_graded;
    use crate::lie::presets;

    #[test]
    fn sphere_complex_structure() {
        let h = presets::heisenberg(1);
        let q = Subspace::span_of(3, &[vec![Scalar::one(), -Scalar::i(), Scalar::zero()]]);
        let c = CRAlgebra::new(&h, q).unwrap();
        let t = c.associated_triple().unwrap();
        let g = associated_graded(&h, t.filtration());
        let j = complex_structure(&c, t.filtration(), &g);
        // X − iY ∈ q gives J(X) = −Y, and then J(Y) = X
        assert_eq!(j.matrix, Matrix::from_ints(&[&[0, 1], &[-1, 0]]));
        assert!(j.squares_to_minus_identity());
        assert!(j.compatible_with(&g));
    }

    #[test]
    fn su15_complex_structure() {
        let f = presets::su15();
        let c = CRAlgebra::new(&f.algebra, f.q.clone()).unwrap();
        let t = c.associated_triple().unwrap();
        let g = associated_graded(&f.algebra, t.filtration());
        let j = complex_structure(&c, t.filtration(), &g);
        assert_eq!(j.dim(), 12);
        assert!(j.squares_to_minus_identity());
        assert!(j.compatible_with(&g));
    }
}
