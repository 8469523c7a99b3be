use std::fmt;

use super::{ExactError, Scalar};

/// Coefficient vector in a fixed ambient basis.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn is_real_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_real)
}

pub fn conj_vector(v: &[Scalar]) -> Vector {
    v.iter().map(Scalar::conj).collect()
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    if c.is_zero() {
        return zero_vector(v.len());
    }
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_mul(c, x);
    }
}

/// Bilinear pairing `Σ aᵢ bᵢ` (no conjugation).
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        s.add_mul(x, y);
    }
    s
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExactError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Matrix::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    /// Commutator `AB - BA` of square matrices.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Matrix, ExactError> {
        Ok(self.mul(rhs)?.sub(&rhs.mul(self)?))
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    /// Reduced row echelon form with its pivot columns.
    ///
    /// Pivots are chosen left to right; every pivot entry is 1 and is the only
    /// nonzero entry of its column. Zero rows are kept at the bottom, so the
    /// shape is unchanged.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in m.row_mut(r)[c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row: Vector = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                let row = &mut m.row_mut(i)[c..];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// One solution of `M x = b`, if any (free variables set to zero).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel `{x | M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref_with_pivots();
        kernel_from_rref(&r, &pivots, self.cols)
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(cols);
        v[f] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            let x = &r[(row, f)];
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        out.push(v);
    }
    out
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Coordinates with respect to a fixed list of linearly independent vectors.
///
/// Precomputes a transform `T` with `T·B = rref(B)`, so a member `v` has
/// coordinates `c = d·T` where `dⱼ = v[pivotⱼ]`.
#[derive(Clone, Debug)]
pub struct BasisCoords {
    basis: Vec<Vector>,
    pivots: Vec<usize>,
    transform: Matrix,
    ambient: usize,
}

impl BasisCoords {
    pub fn new(ambient: usize, basis: Vec<Vector>) -> Result<Self, ExactError> {
        let k = basis.len();
        let mut aug = Matrix::zeros(k, ambient + k);
        for (i, b) in basis.iter().enumerate() {
            if b.len() != ambient {
                return Err(ExactError::DimensionMismatch {
                    expected: ambient,
                    found: b.len(),
                });
            }
            for (j, x) in b.iter().enumerate() {
                aug[(i, j)] = x.clone();
            }
            aug[(i, ambient + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref_with_pivots();
        let left: Vec<usize> = pivots.iter().copied().filter(|&p| p < ambient).collect();
        if left.len() != k {
            return Err(ExactError::DependentVectors);
        }
        let mut transform = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                transform[(i, j)] = r[(i, ambient + j)].clone();
            }
        }
        Ok(BasisCoords {
            basis,
            pivots: left,
            transform,
            ambient,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient);
        let c = self.coords_unchecked(v);
        let mut back = zero_vector(self.ambient);
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(&mut back, ci, b);
        }
        (back.as_slice() == v).then_some(c)
    }

    /// Coordinates assuming `v` lies in the span.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vector {
        let k = self.basis.len();
        let mut c = zero_vector(k);
        for (row, &p) in self.pivots.iter().enumerate() {
            let d = &v[p];
            if d.is_zero() {
                continue;
            }
            for j in 0..k {
                c[j].add_mul(d, &self.transform[(row, j)]);
            }
        }
        c
    }
}

/// Sparse linear system solved by incremental elimination.
///
/// Rows are pushed one at a time and reduced against the current echelon
/// basis; `kernel` back-substitutes to reduced form and reads off one kernel
/// vector per free column.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    cols: usize,
    /// pivot column -> row whose leading column is that pivot
    rows: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>>,
}

fn sparse_axpy(
    row: &[(usize, Scalar)],
    c: &Scalar,
    other: &[(usize, Scalar)],
) -> Vec<(usize, Scalar)> {
    // row - c * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map_or(usize::MAX, |x| x.0);
        let cj = other.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(c * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &other[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        SparseSystem {
            cols,
            rows: Default::default(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds the equation `Σ row[c]·x_c = 0`. Returns whether the rank grew.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut row: Vec<(usize, Scalar)> =
            entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_by_key(|e| e.0);
        // merge duplicate columns
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.cols, "column {c} out of range");
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += &v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let mut row = merged;
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(prow) => row = sparse_axpy(&row, &lv, prow),
                None => {
                    let inv = lv.inv().expect("nonzero lead");
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Columns without a pivot, in increasing order. Kernel vector `i` has a 1
    /// at free column `i` and 0 at every other free column.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Fully reduced rows keyed by pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<(usize, Scalar)>)> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut reduced: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> =
            Default::default();
        // process from the rightmost pivot leftwards
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            loop {
                let target = row
                    .iter()
                    .skip(1)
                    .find(|(c, _)| reduced.contains_key(c))
                    .cloned();
                match target {
                    Some((c, v)) => row = sparse_axpy(&row, &v, &reduced[&c]),
                    None => break,
                }
            }
            reduced.insert(p, row);
        }
        reduced.into_iter().collect()
    }

    /// Basis of the solution space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let reduced = self.reduced_rows();
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &reduced {
            is_pivot[*p] = true;
        }
        // column f -> list of (pivot, coeff of f in that pivot's row)
        let mut col_entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (p, row) in &reduced {
            for (c, v) in row.iter().skip(1) {
                col_entries[*c].push((*p, v.clone()));
            }
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vector(self.cols);
            v[f] = Scalar::one();
            for (p, x) in &col_entries[f] {
                v[*p] = -x;
            }
            out.push(v);
        }
        out
    }
}
