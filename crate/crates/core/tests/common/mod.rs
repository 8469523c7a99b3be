#![allow(dead_code)]

use crlab::chains::{CRAlgebra, ContactPair, ContactTriple};
use crlab::exact::{Matrix, Scalar, Subspace, Vector};
use crlab::lie::{from_matrices, Field, LieAlgebra};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Which flags of the implication chain were seen, to show the suite is not vacuous.
#[derive(Default, Debug)]
pub struct FuzzStats {
    pub algebras: usize,
    pub nilpotent: usize,
    pub proper_l0: usize,
    pub strict_triples: usize,
    pub degenerate_triples: usize,
    pub cr_strict: usize,
    pub cr_weak: usize,
    pub cr_not_weak: usize,
}

fn random_matrix(rng: &mut ChaCha8Rng, size: usize, strict: bool) -> Matrix {
    let rows = (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    let allowed = if strict { c > r } else { c >= r };
                    if allowed && rng.gen_bool(0.5) {
                        Scalar::from_int(rng.gen_range(-2..=2))
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(size, rows).unwrap()
}

fn unflatten(v: &[Scalar], size: usize) -> Matrix {
    Matrix::from_rows(size, v.chunks(size).map(|r| r.to_vec()).collect()).unwrap()
}

/// Commutator closure of a few random triangular matrices, or `None` when
/// it is too small or exceeds dimension 6.
fn random_matrix_algebra(rng: &mut ChaCha8Rng, nilpotent: bool) -> Option<LieAlgebra> {
    let size = rng.gen_range(3..=4);
    let gens = rng.gen_range(2..=3);
    let flat = |m: &Matrix| m.entries().to_vec();
    let mut span = Subspace::span_of(
        size * size,
        &(0..gens).map(|_| flat(&random_matrix(rng, size, nilpotent))).collect::<Vec<_>>(),
    );
    loop {
        if span.dim() > 6 {
            return None;
        }
        let mats: Vec<Matrix> = span.basis().iter().map(|v| unflatten(v, size)).collect();
        let mut next = span.clone();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                next = next.extend([flat(&mats[i].commutator(&mats[j]).unwrap())]);
            }
        }
        if next == span {
            break;
        }
        span = next;
    }
    if span.dim() < 2 {
        return None;
    }
    let mats: Vec<Matrix> = span.basis().iter().map(|v| unflatten(v, size)).collect();
    let labels = (0..mats.len()).map(|k| format!("e{k}")).collect();
    let name = if nilpotent { "nil" } else { "solv" };
    let (a, _) = from_matrices(name, Field::Rational, labels, mats).unwrap();
    Some(a)
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> Vector {
    (0..n)
        .map(|_| {
            let re = rng.gen_range(-2..=2);
            let im = if complex { rng.gen_range(-2..=2) } else { 0 };
            Scalar::gaussian(re, im)
        })
        .collect()
}

/// A random proper generating subspace when one turns up, else the whole algebra.
fn random_generating_l0(rng: &mut ChaCha8Rng, a: &LieAlgebra) -> Subspace {
    let n = a.dim();
    for _ in 0..20 {
        let k = rng.gen_range(1..n);
        let l0 = Subspace::span_of(n, &(0..k).map(|_| random_vector(rng, n, false)).collect::<Vec<_>>());
        if !l0.is_full() && a.generated_subalgebra(&l0).is_full() {
            return l0;
        }
    }
    Subspace::full(n)
}

fn check_pair(rng: &mut ChaCha8Rng, a: &LieAlgebra, stats: &mut FuzzStats) -> Result<(), String> {
    let n = a.dim();
    let l0 = random_generating_l0(rng, a);
    if !l0.is_full() {
        stats.proper_l0 += 1;
    }
    let pair = ContactPair::new(a.clone(), l0.clone()).map_err(|e| e.to_string())?;
    let f = pair.filtration().map_err(|e| e.to_string())?;
    if !f.satisfies_filtration_law(a) || !f.is_descending() {
        return Err(format!("filtration law fails on {a:?} with l0 {l0:?}"));
    }
    if f.c0() != &a.largest_ideal_in(&l0) {
        return Err("intersection of the filtration differs from the largest ideal in l0".into());
    }
    // triples with h0 = 0 and, when valid, a random line in l0
    let mut isotropies = vec![Subspace::zero(n)];
    if l0.dim() > 0 {
        let x = l0.combine(&random_vector(rng, l0.dim(), false));
        let line = Subspace::span_of(n, &[x]);
        if !line.is_zero()
            && a.bracket_spaces(&line, &l0).leq(&l0).unwrap()
            && a.largest_ideal_in(&line).is_zero()
        {
            isotropies.push(line);
        }
    }
    for h0 in isotropies {
        let t = ContactTriple::new(pair.clone(), h0).map_err(|e| e.to_string())?;
        let k = t.degeneracy_order();
        if t.is_strict() {
            stats.strict_triples += 1;
            if !k.is_finite() {
                return Err("strict triple with infinite degeneracy order".into());
            }
        }
        if !k.is_finite() {
            stats.degenerate_triples += 1;
        }
    }
    Ok(())
}

fn check_cr(rng: &mut ChaCha8Rng, a: &LieAlgebra, stats: &mut FuzzStats) -> Result<(), String> {
    let n = a.dim();
    let g = a.complexify();
    let k = rng.gen_range(1..=2.min(n - 1));
    let seed = Subspace::span_of(n, &(0..k).map(|_| random_vector(rng, n, true)).collect::<Vec<_>>());
    let q = g.algebra().generated_subalgebra(&seed);
    let cr = CRAlgebra::new(a, q.clone()).map_err(|e| e.to_string())?;
    let chain = cr.chains();
    if chain.qbar.len() != chain.qtilde.len() || chain.nu + 1 != chain.qbar.len() {
        return Err("chains of different length".into());
    }
    if !chain.qbar.iter().all(|s| g.algebra().is_subalgebra(s)) {
        return Err("a chain term is not a subalgebra".into());
    }
    let hull = cr.wn_hull();
    if hull.wn_hull().q() != hull.q() {
        return Err("hull is not idempotent".into());
    }
    let upper = q.sum(&cr.qbar()).unwrap();
    if !q.leq(hull.q()).unwrap() || !hull.q().leq(&upper).unwrap() || !g.algebra().is_subalgebra(hull.q()) {
        return Err("hull is not a subalgebra between q and q + q̄".into());
    }
    let c = cr.classify().map_err(|e| e.to_string())?;
    if c.strict && !c.weak {
        return Err("strict without weak".into());
    }
    if c.weak && c.contact_order.is_some_and(|k| !k.is_finite()) {
        return Err("weak without contact nondegeneracy".into());
    }
    stats.cr_strict += c.strict as usize;
    stats.cr_weak += c.weak as usize;
    stats.cr_not_weak += (!c.weak) as usize;
    Ok(())
}

/// Runs the structural checks on `count` random algebras from a fixed seed.
pub fn structural_fuzz(count: usize, seed: u64) -> Result<FuzzStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    while stats.algebras < count {
        let nilpotent = rng.gen_bool(0.5);
        let Some(a) = random_matrix_algebra(&mut rng, nilpotent) else {
            continue;
        };
        a.validate().map_err(|e| e.to_string())?;
        stats.algebras += 1;
        stats.nilpotent += nilpotent as usize;
        check_pair(&mut rng, &a, &mut stats)?;
        check_cr(&mut rng, &a, &mut stats)?;
    }
    Ok(stats)
}
