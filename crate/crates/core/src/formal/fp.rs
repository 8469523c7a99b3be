//! Pointwise evaluation of star fields over `𝔽ₚ`, `p = 2⁶¹ − 1`.
//!
//! Every homogeneous component is evaluated, together with its Jacobian, at
//! random points. This makes identities of degree ~dim 𝔤₀ checkable when
//! symbolic expansion is out of reach. A polynomial identity of degree `h`
//! that fails over ℚ survives reduction and a random point with probability
//! at most `h/p` (for a fixed nonzero reduction).

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::star::{star_recursion, StarBackend, StarRealization};
use super::FormalError;
use crate::exact::{Scalar, Vector};

const P: u64 = (1 << 61) - 1;

/// Element of `𝔽ₚ` with `p = 2⁶¹ − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ModP(u64);

/// `x mod p`, using `2⁶¹ ≡ 1`.
fn reduce(x: u128) -> u64 {
    let p = P as u128;
    let s = (x & p) + ((x >> 61) & p) + (x >> 122);
    let mut s = s as u64;
    while s >= P {
        s -= P;
    }
    s
}

impl ModP {
    pub fn new(x: u64) -> Self {
        ModP(x % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        ModP(if s >= P { s - P } else { s })
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn neg(self) -> Self {
        ModP(if self.0 == 0 { 0 } else { P - self.0 })
    }

    pub fn mul(self, o: Self) -> Self {
        ModP(reduce(self.0 as u128 * o.0 as u128))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let (mut b, mut r) = (self, ModP(1));
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(b);
            }
            b = b.mul(b);
            e >>= 1;
        }
        r
    }

    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(P - 2))
    }

    /// Reduction of a real rational; `None` for non-real values or a
    /// denominator divisible by `p`.
    pub fn from_scalar(s: &Scalar) -> Option<Self> {
        if !s.is_real() {
            return None;
        }
        let big_p = num_bigint::BigInt::from(P);
        let red = |x: &num_bigint::BigInt| {
            let r = ((x % &big_p) + &big_p) % &big_p;
            ModP(r.to_u64().unwrap())
        };
        let num = red(s.re().numer());
        let den = red(s.re().denom()).inv()?;
        Some(num.mul(den))
    }
}

/// Dense matrix-vector product with lazy reduction.
fn mat_vec(m: &[Vec<ModP>], x: &[ModP]) -> Vec<ModP> {
    m.iter()
        .map(|row| {
            let mut acc: u128 = 0;
            for (k, (a, b)) in row.iter().zip(x).enumerate() {
                acc += a.0 as u128 * b.0 as u128;
                if k % 32 == 31 {
                    acc = reduce(acc) as u128;
                }
            }
            ModP(reduce(acc))
        })
        .collect()
}

fn to_modp(v: &[Scalar]) -> Result<Vec<ModP>, FormalError> {
    v.iter().map(|s| ModP::from_scalar(s).ok_or(FormalError::ModularReduction)).collect()
}

/// Value and Jacobian (`d` columns) of a `𝔤₀`-valued homogeneous quantity.
#[derive(Clone)]
struct Jet {
    value: Vec<ModP>,
    jac: Vec<Vec<ModP>>,
}

struct PointBackend<'a> {
    n: usize,
    d: usize,
    ad_point: Vec<Vec<ModP>>,
    ad_dirs: &'a [Vec<Vec<ModP>>],
    proj: &'a [Vec<ModP>],
}

impl StarBackend for PointBackend<'_> {
    type E = Jet;
    type C = ModP;

    fn lift(&self, s: &Scalar) -> ModP {
        ModP::from_scalar(s).expect("coefficient reduces mod p")
    }

    fn zero(&self) -> Jet {
        Jet {
            value: vec![ModP(0); self.n],
            jac: vec![vec![ModP(0); self.n]; self.d],
        }
    }

    fn constant(&self, x: &[Scalar]) -> Jet {
        let mut j = self.zero();
        j.value = x.iter().map(|s| self.lift(s)).collect();
        j
    }

    fn ad_v(&self, e: &Jet) -> Jet {
        let value = mat_vec(&self.ad_point, &e.value);
        let jac = (0..self.d)
            .map(|k| {
                let a = mat_vec(&self.ad_dirs[k], &e.value);
                let b = mat_vec(&self.ad_point, &e.jac[k]);
                a.into_iter().zip(b).map(|(x, y)| x.add(y)).collect()
            })
            .collect();
        Jet { value, jac }
    }

    fn axpy(&self, acc: &mut Jet, c: &ModP, e: &Jet) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.value.iter_mut().zip(&e.value) {
            *a = a.add(c.mul(*x));
        }
        for (ra, rx) in acc.jac.iter_mut().zip(&e.jac) {
            for (a, x) in ra.iter_mut().zip(rx) {
                *a = a.add(c.mul(*x));
            }
        }
    }

    fn project(&self, e: &Jet) -> Jet {
        Jet {
            value: mat_vec(self.proj, &e.value),
            jac: e.jac.iter().map(|c| mat_vec(self.proj, c)).collect(),
        }
    }
}

/// Homogeneous components of `R*` for every basis element, at one point:
/// `values[k][h]` in `V` coordinates and `jacs[k][h][j]` = `∂ⱼ` of it.
struct PointData {
    values: Vec<Vec<Vec<ModP>>>,
    jacs: Vec<Vec<Vec<Vec<ModP>>>>,
}

/// Pointwise data for the star realization of a real pair, evaluated at
/// `points` random points of `V` (seeded).
pub struct FpCheck {
    n: usize,
    d: usize,
    order: usize,
    /// `[eᵢ, eⱼ]` mod p, dense, for `i < j`.
    brackets: Vec<Vec<Vec<ModP>>>,
    points: Vec<PointData>,
}

impl FpCheck {
    pub fn new(st: &StarRealization, points: usize, seed: u64) -> Result<Self, FormalError> {
        let alg = st.algebra();
        let n = alg.dim();
        let d = st.dim_v();
        let order = st.order();
        let basis: Vec<Vector> = (0..n).map(|k| alg.basis_vector(k)).collect();
        let ad_of = |v: &[Scalar]| -> Result<Vec<Vec<ModP>>, FormalError> {
            let cols: Vec<Vec<ModP>> = basis.iter().map(|e| to_modp(&alg.bracket(v, e))).collect::<Result<_, _>>()?;
            Ok((0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect())
        };
        let ad_dirs: Vec<Vec<Vec<ModP>>> = st.v_basis().iter().map(|v| ad_of(v)).collect::<Result<_, _>>()?;
        let proj: Vec<Vec<ModP>> = (0..n).map(|r| to_modp(st.projection().row(r))).collect::<Result<_, _>>()?;
        // V coordinates of a vector already in V
        let coords: Vec<Vec<ModP>> = {
            let cols: Vec<Vec<ModP>> = basis.iter().map(|e| to_modp(&st.v_coords(e))).collect::<Result<_, _>>()?;
            (0..d).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
        };
        let mut brackets = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                brackets[i][j] = to_modp(&alg.bracket(&basis[i], &basis[j]))?;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut data = Vec::new();
        for _ in 0..points {
            let v0: Vec<ModP> = (0..d).map(|_| ModP::new(rng.gen())).collect();
            // ad(v) = Σ v0ᵢ ad(Vᵢ)
            let mut ad_point = vec![vec![ModP(0); n]; n];
            for (c, m) in v0.iter().zip(&ad_dirs) {
                for (r, row) in m.iter().enumerate() {
                    for (k, x) in row.iter().enumerate() {
                        ad_point[r][k] = ad_point[r][k].add(c.mul(*x));
                    }
                }
            }
            let be = PointBackend {
                n,
                d,
                ad_point,
                ad_dirs: &ad_dirs,
                proj: &proj,
            };
            let mut values = Vec::with_capacity(n);
            let mut jacs = Vec::with_capacity(n);
            for e in &basis {
                let (xs, _) = star_recursion(&be, e, order, true);
                values.push(xs.iter().map(|x| mat_vec(&coords, &x.value)).collect());
                jacs.push(xs.iter().map(|x| x.jac.iter().map(|c| mat_vec(&coords, c)).collect()).collect());
            }
            data.push(PointData { values, jacs });
        }
        Ok(FpCheck {
            n,
            d,
            order,
            brackets,
            points: data,
        })
    }

    /// Degree-`m` part of `[R*ₐ, R*_b]` at point `pt`, for `m < order`.
    fn bracket_component(&self, pt: &PointData, a: usize, b: usize, m: usize) -> Vec<ModP> {
        let mut out = vec![ModP(0); self.d];
        // Σ_{i + j = m + 1} ∂B_j·A_i − ∂A_j·B_i
        for i in 0..=m {
            let j = m + 1 - i;
            for (ja, jb) in [(a, b), (b, a)] {
                let sign = ja == a;
                let av = &pt.values[ja][i];
                let bj = &pt.jacs[jb][j];
                for (k, ak) in av.iter().enumerate() {
                    if ak.is_zero() {
                        continue;
                    }
                    for (l, o) in out.iter_mut().enumerate() {
                        let t = ak.mul(bj[k][l]);
                        *o = if sign { o.add(t) } else { o.sub(t) };
                    }
                }
            }
        }
        out
    }

    /// Basis pairs and degrees where `[R*_X, R*_Y] + R*_{[X,Y]}` fails to vanish
    /// at some sample point, through degree `order − 1`.
    pub fn anti_homomorphism_failures(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for pt in &self.points {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    for m in 0..self.order {
                        let mut v = self.bracket_component(pt, a, b, m);
                        for (k, c) in self.brackets[a][b].iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (o, x) in v.iter_mut().zip(&pt.values[k][m]) {
                                *o = o.add(c.mul(*x));
                            }
                        }
                        if v.iter().any(|x| !x.is_zero()) && !bad.contains(&(a, b, m)) {
                            bad.push((a, b, m));
                        }
                    }
                }
            }
        }
        bad
    }

    /// Matrix of `X ↦ (R*_X)ₕ(v)` for all degrees and sample points.
    fn evaluation_rows(&self) -> Vec<Vec<ModP>> {
        let mut rows = Vec::new();
        for pt in &self.points {
            for h in 0..=self.order {
                for r in 0..self.d {
                    rows.push((0..self.n).map(|k| pt.values[k][h][r]).collect());
                }
            }
        }
        rows
    }

    /// Dimension of `{X : R*_X vanishes at every sample point}` over `𝔽ₚ`.
    pub fn kernel_dim(&self) -> usize {
        self.n - rank(self.evaluation_rows())
    }

    /// Whether `R*_x` vanishes at every sample point.
    pub fn annihilates(&self, x: &[Scalar]) -> Result<bool, FormalError> {
        let x = to_modp(x)?;
        Ok(self.evaluation_rows().iter().all(|row| mat_vec(std::slice::from_ref(row), &x)[0].is_zero()))
    }
}

fn rank(mut rows: Vec<Vec<ModP>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        let pivot: Vec<ModP> = rows[r].iter().map(|x| x.mul(inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.sub(f.mul(*y));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}
