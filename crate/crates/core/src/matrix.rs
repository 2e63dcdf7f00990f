//! Dense exact linear algebra.
//!
//! Maps act on column vectors: a `t × s` matrix sends `k^s → k^t`.
//! Elimination always picks the leftmost column with a nonzero entry and,
//! within it, the first such row, so every basis produced here is
//! deterministic.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: r, cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged literal");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// A single column from a vector.
    pub fn column(field: Field, v: &[Scalar]) -> Self {
        Matrix { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Columns side by side; all must have length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * rhs`.
    pub fn add_scaled(&mut self, s: &Scalar, rhs: &Matrix) {
        assert_eq!(self.shape(), rhs.shape());
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&(-self.field.one()))
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    /// `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn vstack_all(field: Field, cols: usize, parts: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, 0, cols);
        for p in parts {
            out = out.vstack(p);
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(row0 + i, col0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, row0: usize, rows: usize, col0: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(row0 + i, col0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Column-major flattening (`vec` operator).
    pub fn vectorize(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    pub fn unvectorize(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix::from_fn(field, rows, cols, |i, j| v[j * rows + i].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(&mut rows, self.cols, self.cols);
        let m = Matrix::from_rows(self.field, rows, self.cols).expect("rref shape");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_rows(&mut rows, self.cols, self.cols).len()
    }

    /// Basis of `{v : self·v = 0}` (one basis vector per free column).
    pub fn kernel(&self) -> Subspace {
        self.kernel_with_free().0
    }

    /// Kernel basis together with its free columns: basis vector `i` is 1
    /// at `free[i]` and 0 at every other free column, so the coordinates of
    /// a kernel vector are its entries at the free columns.
    pub fn kernel_with_free(&self) -> (Subspace, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(&mut rows, self.cols, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[r][f];
            }
            basis.push(v);
        }
        let free = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        (Subspace::from_independent(self.field, self.cols, basis), free)
    }

    /// A matrix `l` with `l·self = I`, for `self` of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        if self.cols == 0 {
            return Some(Matrix::zeros(self.field, 0, self.rows));
        }
        let (_, piv) = self.transpose().rref();
        if piv.len() != self.cols {
            return None;
        }
        let inv = self.select_rows(&piv).inverse()?;
        let mut l = Matrix::zeros(self.field, self.cols, self.rows);
        for (k, &r) in piv.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, r, inv.get(i, k).clone());
            }
        }
        Some(l)
    }

    /// Some `x` with `self·x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::Dimension(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, rhs.rows
            )));
        }
        let n = self.cols;
        let mut rows: Vec<Vec<Scalar>> =
            (0..self.rows).map(|i| self.row(i).iter().chain(rhs.row(i)).cloned().collect()).collect();
        let pivots = rref_rows(&mut rows, n + rhs.cols, n + rhs.cols);
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, n, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, rows[r][n + j].clone());
            }
        }
        Ok(Some(x))
    }

    /// Solve for a single column right-hand side.
    pub fn solve_vec(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solve(&Matrix::column(self.field, rhs)).expect("shape checked").map(|x| x.col(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Column space as a subspace of `k^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, (0..self.cols).map(|j| self.col(j)).collect())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// In-place Gauss-Jordan on the first `pivot_cols` columns of `rows`
/// (each of length `width`). Returns the pivot columns in order.
pub(crate) fn rref_rows(rows: &mut [Vec<Scalar>], pivot_cols: usize, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r][c..width].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let nz: Vec<usize> = (c..width).filter(|&j| !rows[r][j].is_zero()).collect();
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for other in before.iter_mut().chain(after.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let factor = other[c].clone();
            for &j in &nz {
                other[j] = &other[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of `k^ambient`, held as independent basis rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Subspace { field, ambient, basis }
    }

    pub(crate) fn from_independent(field: Field, ambient: usize, basis: Vec<Vec<Scalar>>) -> Self {
        Subspace { field, ambient, basis }
    }

    /// Span of arbitrary vectors; keeps the first maximal independent subset.
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        // column pivots of the matrix with the vectors as columns select them
        let m = Matrix::from_columns(field, ambient, &vectors);
        let mut rows = m.row_vecs();
        let pivots = rref_rows(&mut rows, vectors.len(), vectors.len());
        let basis = pivots.into_iter().map(|j| vectors[j].clone()).collect();
        Subspace { field, ambient, basis }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.basis.clone(), self.ambient).expect("basis shape")
    }

    /// Basis as the columns of a matrix (the inclusion map).
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        if self.basis.is_empty() {
            return v.iter().all(Scalar::is_zero).then(Vec::new);
        }
        self.inclusion().solve_vec(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // [A | -B] (a, b) = 0  =>  A a lies in both
        let a = self.inclusion();
        let b = other.inclusion();
        let k = a.hstack(&b.neg()).kernel();
        let vecs = k.basis.iter().map(|x| a.mul_vec(&x[..self.dim()])).collect();
        Subspace::span(self.field, self.ambient, vecs)
    }

    /// Image of the subspace under a linear map `k^ambient → k^t`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(self.field, m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    /// Preimage under `m` of this subspace (in `k^{m.cols}`).
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let q = quotient_map(self.ambient, self);
        q.mul(m).kernel()
    }

    /// Canonical reduced-echelon basis: equal subspaces give equal results.
    pub fn canonical(&self) -> Subspace {
        let (r, piv) = self.basis_matrix().rref();
        Subspace { field: self.field, ambient: self.ambient, basis: (0..piv.len()).map(|i| r.row(i).to_vec()).collect() }
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Standard unit vectors completing this basis to one of the ambient
    /// space (the non-pivot columns of the echelon form).
    pub fn complement_indices(&self) -> Vec<usize> {
        let (_, piv) = self.basis_matrix().rref();
        (0..self.ambient).filter(|c| !piv.contains(c)).collect()
    }
}

pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// A surjection `k^ambient → k^(ambient − dim sub)` whose kernel is `sub`.
///
/// Coordinates of the target are the non-pivot columns of the echelon form
/// of `sub`, so the unit vectors at those columns form a section.
pub fn quotient_map(ambient: usize, sub: &Subspace) -> Matrix {
    assert_eq!(sub.ambient_dim(), ambient, "subspace lives in a different ambient space");
    let field = sub.field();
    let (r, piv) = sub.basis_matrix().rref();
    let free: Vec<usize> = (0..ambient).filter(|c| !piv.contains(c)).collect();
    let mut q = Matrix::zeros(field, free.len(), ambient);
    for (row, &j) in free.iter().enumerate() {
        q.set(row, j, field.one());
        for (i, &p) in piv.iter().enumerate() {
            let e = r.get(i, j);
            if !e.is_zero() {
                q.set(row, p, -e);
            }
        }
    }
    q
}

/// Right inverse of [`quotient_map`] (unit vectors at the free columns).
pub fn quotient_section(ambient: usize, sub: &Subspace) -> Matrix {
    let field = sub.field();
    let free = sub.complement_indices();
    let mut s = Matrix::zeros(field, ambient, free.len());
    for (col, &j) in free.iter().enumerate() {
        s.set(j, col, field.one());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(q(), 3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel().is_zero());
        assert_eq!(Matrix::zeros(q(), 2, 3).kernel().dim(), 3);
        let f2 = Field::prime(2).unwrap();
        let k = Matrix::from_i64(f2, &[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        // enumerate all four vectors of F2^2
        let mut members = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let v = vec![f2.from_i64(a), f2.from_i64(b)];
                if k.contains(&v) {
                    members.push((a, b));
                }
            }
        }
        assert_eq!(members, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(q(), &[&[3], &[-1]]);
        assert_eq!(Matrix::identity(q(), 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(q(), 2, 2).solve(&b).unwrap(), None);
        let x = Matrix::from_i64(q(), &[&[2]]).solve(&Matrix::from_i64(q(), &[&[3]])).unwrap().unwrap();
        assert_eq!(*x.get(0, 0), q().ratio(3, 2).unwrap());
        assert!(Matrix::identity(q(), 2).solve(&Matrix::zeros(q(), 3, 1)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let z = Subspace::zero(q(), 3);
        assert_eq!(quotient_map(3, &z).rank(), 3);
        let f = Subspace::full(q(), 3);
        assert_eq!(quotient_map(3, &f).shape(), (0, 3));
        let s = Subspace::span(q(), 2, vec![vec![q().one(), q().one()]]);
        let m = quotient_map(2, &s);
        assert_eq!(m.rank(), 1);
        assert!(m.mul_vec(&[q().one(), q().one()]).iter().all(Scalar::is_zero));
        assert_eq!(m.mul(&quotient_section(2, &s)), Matrix::identity(q(), 1));
    }

    #[test]
    fn intersection_and_preimage() {
        let e = |a, b, c| vec![q().from_i64(a), q().from_i64(b), q().from_i64(c)];
        let u = Subspace::span(q(), 3, vec![e(1, 0, 0), e(0, 1, 0)]);
        let w = Subspace::span(q(), 3, vec![e(0, 1, 0), e(0, 0, 1)]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&e(0, 5, 0)));
        let proj = Matrix::from_i64(q(), &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let pre = Subspace::zero(q(), 3).preimage(&proj);
        assert!(pre.same_as(&w));
    }
}
