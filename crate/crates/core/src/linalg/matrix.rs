use alloc::vec::Vec;
use core::fmt;

use crate::error::{check_shape, Error, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { data: alloc::vec![field.zero(); rows * cols], field: field.clone(), rows, cols }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_data(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        check_shape("matrix entry count", rows * cols, data.len())?;
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            check_shape("matrix row length", cols, row.len())?;
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_columns(field: &F, height: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        for c in columns {
            check_shape("column length", height, c.len())?;
        }
        Ok(Self::from_fn(field, height, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !self.field.is_zero(x)).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product; skips zero entries of `self`, so sparse operands are cheap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_shape("inner dimension of matrix product", self.cols, other.rows)?;
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let brow = other.row(k);
                let orow = out.row_mut(i);
                for (o, b) in orow.iter_mut().zip(brow) {
                    f.add_mul_assign(o, a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        check_shape("vector length", self.cols, v.len())?;
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        check_shape("matrix rows", self.rows, other.rows)?;
        check_shape("matrix columns", self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(&self.field, a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(|f, a| f.neg(a))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        self.map(|f, a| f.mul(a, s))
    }

    fn map(&self, op: impl Fn(&F, &F::Elem) -> F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| op(&self.field, a)).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`, indexed so that row `(i, k)` of the
    /// result is `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            f.mul(self.get(i, j), other.get(k, l))
        })
    }

    pub fn hstack(field: &F, rows: usize, blocks: &[&Self]) -> Result<Self> {
        for b in blocks {
            check_shape("block height", rows, b.rows)?;
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn vstack(field: &F, cols: usize, blocks: &[&Self]) -> Result<Self> {
        for b in blocks {
            check_shape("block width", cols, b.cols)?;
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let aug = Self::hstack(&self.field, n, &[self, &Self::identity(&self.field, n)])?;
        let e = super::rref(&aug);
        if e.rank < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(&self.field, n, n, |i, j| e.matrix.get(i, n + j).clone()))
    }

    pub fn rank(&self) -> usize {
        super::rref(self).rank
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.tag())?;
        for i in 0..self.rows {
            let row: Vec<_> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
