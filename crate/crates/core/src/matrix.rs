//! Dense exact linear algebra over a [`Field`].
//!
//! Everything is Gauss-Jordan based: reduced row echelon form is the one
//! normal form, and ranks, kernels, images, and solutions all read off it.
//! Bases produced here are canonical for a given input (kernel vectors
//! ordered by ascending free column, image bases as echelon rows), which the
//! rest of the crate relies on for reproducible reports.

use std::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<K: Field> {
    rows: usize,
    cols: usize,
    ctx: K::Ctx,
    data: Vec<K>,
}

impl<K: Field> DenseMatrix<K> {
    pub fn zeros(rows: usize, cols: usize, ctx: &K::Ctx) -> Self {
        DenseMatrix {
            rows,
            cols,
            ctx: ctx.clone(),
            data: vec![K::zero_in(ctx); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: &K::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.set(i, i, K::one_in(ctx));
        }
        m
    }

    /// Builds a matrix from row vectors, pinning every entry to `ctx`.
    pub fn from_rows(ctx: &K::Ctx, rows: Vec<Vec<K>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for v in row {
                data.push(v.bind(ctx)?);
            }
        }
        Ok(DenseMatrix { rows: nrows, cols: ncols, ctx: ctx.clone(), data })
    }

    /// Stacks vectors of length `cols` as the rows of a matrix. Unlike
    /// [`from_rows`](Self::from_rows) this keeps the column count when the
    /// list is empty.
    pub fn from_row_vectors(ctx: &K::Ctx, vecs: &[Vec<K>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(vecs.len(), cols, ctx);
        for (i, v) in vecs.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::shape(format!(
                    "vector {i} has length {}, expected {cols}",
                    v.len()
                )));
            }
            for (j, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        ctx: &K::Ctx,
        mut f: impl FnMut(usize, usize) -> K,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).bind(ctx).expect("entry from a different field"));
            }
        }
        DenseMatrix { rows, cols, ctx: ctx.clone(), data }
    }

    pub fn random(rows: usize, cols: usize, ctx: &K::Ctx, rng: &mut impl RngCore) -> Self {
        let data = (0..rows * cols).map(|_| K::random(ctx, rng)).collect();
        DenseMatrix { rows, cols, ctx: ctx.clone(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn at(&self, i: usize, j: usize) -> &K {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        debug_assert!(i < self.rows && j < self.cols);
        let v = v.bind(&self.ctx).expect("entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<K> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::MixedField(
                format!("{}", K::spec(&self.ctx)),
                format!("{}", K::spec(&other.ctx)),
            ));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, &self.ctx);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.at(i, j).clone() + a.clone() * rhs.at(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero_in(&self.ctx);
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc = acc + self.at(i, j).clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = v.clone() * c.clone();
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape("matrix addition"));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = a.clone() + b.clone();
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape("matrix subtraction"));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = a.clone() - b.clone();
        }
        Ok(out)
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::shape("hstack row counts"));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.at(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::shape("vstack column counts"));
        }
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, rhs.at(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Entry-wise change of scalars, e.g. reduction of `Q` mod p.
    pub fn try_map<K2: Field>(
        &self,
        ctx2: &K2::Ctx,
        f: impl Fn(&K) -> Result<K2>,
    ) -> Result<DenseMatrix<K2>> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(f(v)?.bind(ctx2)?);
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: ctx2.clone(),
            data,
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..m.rows {
                if !m.at(i, c).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.at(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![K::zero_in(&self.ctx); self.cols];
            v[f] = K::one_in(&self.ctx);
            for (pi, &pc) in rref.pivots.iter().enumerate() {
                v[pc] = -rref.mat.at(pi, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical basis of the column space, as vectors of length `rows`:
    /// the nonzero rows of the row echelon form of the transpose.
    pub fn image_basis(&self) -> Vec<Vec<K>> {
        let t = self.transpose().rref();
        (0..t.pivots.len()).map(|i| t.mat.row_vec(i)).collect()
    }

    /// Canonical basis of the row space: the nonzero rows of the reduced
    /// row echelon form, as vectors of length `cols`.
    pub fn row_space_basis(&self) -> Vec<Vec<K>> {
        let rref = self.rref();
        (0..rref.pivots.len()).map(|i| rref.mat.row_vec(i)).collect()
    }

    /// One solution of `self * x = rhs` with free variables set to zero,
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[K]) -> Option<Vec<K>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero_in(&self.ctx); self.cols];
        for (pi, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.mat.at(pi, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse by Gauss-Jordan on the augmented matrix; `None` when
    /// singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self
            .hstack(&Self::identity(n, &self.ctx))
            .expect("augmenting with identity");
        let rref = aug.rref();
        if rref.pivots.len() != n || rref.pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Self::from_fn(n, n, &self.ctx, |i, j| {
            rref.mat.at(i, n + j).clone()
        }))
    }

    /// Determinant by exact elimination; zero for singular input.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = K::one_in(&self.ctx);
        for c in 0..m.cols {
            let mut pivot_row = None;
            for i in c..m.rows {
                if !m.at(i, c).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pr) = pivot_row else {
                return K::zero_in(&self.ctx);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = -det;
            }
            let piv = m.at(c, c).clone();
            det = det * piv.clone();
            let inv = piv.inv().expect("nonzero pivot");
            for i in (c + 1)..m.rows {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone() * inv.clone();
                for j in c..m.cols {
                    let v = m.at(i, j).clone() - f.clone() * m.at(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Result of row reduction.
pub struct Rref<K: Field> {
    pub mat: DenseMatrix<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Rref<K> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<K: Field> fmt::Display for DenseMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Incremental row space: feed vectors one at a time, keeping an echelon
/// basis. Supports rank growth checks and membership tests without
/// recomputing a full reduction per query.
pub struct RowReducer<K: Field> {
    cols: usize,
    /// `(leading column, vector)` sorted by leading column, each vector
    /// normalized to a unit leading entry.
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> RowReducer<K> {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `v` against the current basis.
    pub fn reduce(&self, mut v: Vec<K>) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "vector length");
        for (lead, row) in &self.rows {
            if v[*lead].is_zero() {
                continue;
            }
            let f = v[*lead].clone();
            for j in *lead..self.cols {
                v[j] = v[j].clone() - f.clone() * row[j].clone();
            }
        }
        v
    }

    pub fn contains(&self, v: &[K]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Inserts `v` into the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vec<K>) -> bool {
        let v = self.reduce(v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().expect("nonzero entry");
        let v: Vec<K> = v.into_iter().map(|x| x * inv.clone()).collect();
        let pos = self.rows.partition_point(|(l, _)| *l < lead);
        self.rows.insert(pos, (lead, v));
        true
    }
}

/// Indices of rows in `extra` that extend the row space of `base`, greedily
/// in row order. The selected rows plus `base` span the combined row space.
pub fn extend_row_basis<K: Field>(base: &DenseMatrix<K>, extra: &DenseMatrix<K>) -> Vec<usize> {
    assert_eq!(base.cols(), extra.cols(), "column counts");
    let mut red = RowReducer::new(base.cols());
    for i in 0..base.rows() {
        red.insert(base.row_vec(i));
    }
    let mut picked = Vec::new();
    for i in 0..extra.rows() {
        if red.insert(extra.row_vec(i)) {
            picked.push(i);
        }
    }
    picked
}
