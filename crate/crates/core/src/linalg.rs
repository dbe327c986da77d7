//! Dense exact linear algebra over any [`Field`].
//!
//! Elimination picks, within each column, the candidate of smallest height
//! (ties broken by row order), so every result is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactfield::{Field, Rational};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>, // row-major
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        Self::from_rows_with_cols(rows.first().map_or(0, Vec::len), rows)
    }

    /// Like [`Matrix::from_rows`] but keeps the column count when `rows` is empty.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], F::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// `v^T A` for a row vector `v`.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![F::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o = o.clone() + vi.clone() * a.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + o[(i, j)].clone())
    }

    pub fn sub(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - o[(i, j)].clone())
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * s.clone())
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Places `o` to the right of `self`.
    pub fn hstack(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, o.rows, "row mismatch in hstack");
        Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Matrix::from_rows_with_cols(self.cols, idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by_key(|&i| m[(i, c)].height());
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = std::mem::replace(&mut m[(r, j)], F::zero());
                m[(r, j)] = v * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let pr = &m[(r, j)];
                    if pr.is_zero() {
                        continue;
                    }
                    let t = f.clone() * pr.clone();
                    let v = std::mem::replace(&mut m[(i, j)], F::zero());
                    m[(i, j)] = v - t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -r[(i, free)].clone();
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{y : y^T A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<F>> {
        self.transpose().nullspace()
    }

    /// Indices of the first maximal independent set of rows, scanning in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis: Vec<Vec<F>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row(i).to_vec();
            reduce_against(&mut v, &basis, &pivots);
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = F::one() / v[p].clone();
                for x in v.iter_mut() {
                    *x = x.clone() * inv.clone();
                }
                // keep basis fully reduced on pivot columns
                for b in basis.iter_mut() {
                    if !b[p].is_zero() {
                        let f = b[p].clone();
                        for (bj, vj) in b.iter_mut().zip(&v) {
                            *bj = bj.clone() - f.clone() * vj.clone();
                        }
                    }
                }
                basis.push(v);
                pivots.push(p);
                out.push(i);
            }
        }
        out
    }

    /// Solves `A x = b`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_fn(self.rows, 1, |i, _| b[i].clone()));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn reduce_against<F: Field>(v: &mut [F], basis: &[Vec<F>], pivots: &[usize]) {
    for (b, &p) in basis.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (vj, bj) in v.iter_mut().zip(b) {
            if !bj.is_zero() {
                *vj = vj.clone() - f.clone() * bj.clone();
            }
        }
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
/// Solves `A x = b` over the rationals by fraction-free elimination on the
/// integer-scaled augmented matrix; free variables are zero. Much faster than
/// [`Matrix::solve`] when entries are large.
pub fn solve_rational(a: &Matrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), a.nrows());
    let n = a.ncols();
    let mut m: Vec<Vec<BigInt>> = (0..a.nrows())
        .map(|i| {
            let row: Vec<&Rational> = a.row(i).iter().chain(std::iter::once(&b[i])).collect();
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..=n {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(m[k][n].clone());
        for &j in &pivots[k + 1..] {
            acc -= Rational::from_integer(m[k][j].clone()) * &x[j];
        }
        x[pc] = acc / Rational::from_integer(m[k][pc].clone());
    }
    Some(x)
}

/// A subspace of `F^n` kept as a reduced row echelon basis.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    dim_ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize) -> Self {
        Subspace { dim_ambient: n, basis: Matrix::zeros(0, n), pivots: vec![] }
    }

    pub fn span(n: usize, vectors: &[Vec<F>]) -> Self {
        let m = Matrix::from_rows_with_cols(n, vectors.to_vec());
        let (basis, pivots) = m.rref();
        Subspace { dim_ambient: n, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        reduce_against(&mut w, &self.basis.rows_vec(), &self.pivots);
        w.iter().all(F::is_zero)
    }

    /// Reduces `v` modulo the subspace (canonical representative).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        reduce_against(&mut w, &self.basis.rows_vec(), &self.pivots);
        w
    }

    pub fn join(&self, vectors: &[Vec<F>]) -> Self {
        let mut rows = self.basis.rows_vec();
        rows.extend(vectors.iter().cloned());
        Subspace::span(self.dim_ambient, &rows)
    }

    pub fn sum(&self, o: &Subspace<F>) -> Self {
        self.join(&o.basis.rows_vec())
    }

    /// Dimension of `span(vectors)` in the quotient `F^n / self`.
    pub fn rank_modulo(&self, vectors: &[Vec<F>]) -> usize {
        self.join(vectors).dim() - self.dim()
    }

    pub fn is_subspace_of(&self, o: &Subspace<F>) -> bool {
        self.basis.rows_vec().iter().all(|v| o.contains(v))
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.pivots.len(), self.dim_ambient, self.basis)
    }
}
