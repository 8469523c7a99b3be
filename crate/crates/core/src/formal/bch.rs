use crate::exact::Scalar;

/// `b₀ … b_n` with `Σ bₕ tʰ = t / (1 − e^{−t})`, by inverting
/// `(1 − e^{−t}) / t = Σ (−1)ᵏ tᵏ / (k+1)!`.
pub fn bch_coefficients(n: usize) -> Vec<Scalar> {
    let mut a = Vec::with_capacity(n + 1);
    let mut fact = Scalar::one();
    for k in 0..=n {
        fact = &fact * &Scalar::from_int(k as i64 + 1);
        let t = fact.inv().unwrap();
        a.push(if k % 2 == 0 { t } else { -t });
    }
    let mut b: Vec<Scalar> = vec![Scalar::one()];
    for m in 1..=n {
        let mut s = Scalar::zero();
        for k in 1..=m {
            s.add_mul(&a[k], &b[m - k]);
        }
        b.push(-s);
    }
    b
}
