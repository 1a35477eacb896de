use alloc::vec::Vec;

use super::Matrix;
use crate::error::{check_shape, Result};
use crate::field::Field;

/// A linear subspace stored by a basis in reduced column-echelon form.
///
/// Column `j` has a 1 in row `pivots[j]`, zeros above it, and every other
/// column is zero in that row. Two bases of the same space therefore produce
/// identical values.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn full(field: &F, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::identity(field, ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, ambient_dim, 0), pivots: Vec::new() }
    }

    /// Span of the given vectors (which may be dependent).
    pub fn from_vectors(field: &F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        for v in vectors {
            check_shape("spanning vector length", ambient_dim, v.len())?;
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient_dim));
        }
        let rows = Matrix::from_rows(field, vectors.to_vec())?;
        let e = super::rref(&rows);
        let basis = Matrix::from_fn(field, ambient_dim, e.rank, |i, j| e.matrix.get(j, i).clone());
        Ok(Subspace { ambient_dim, basis, pivots: e.pivots })
    }

    /// Column space of `m`.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::from_vectors(m.field(), m.rows(), &m.columns()).expect("columns have matrix height")
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Basis as an `ambient_dim × dim` matrix.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vector(&self, j: usize) -> Vec<F::Elem> {
        self.basis.column(j)
    }

    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.columns()
    }

    /// `Σ coords[j] · basis_j`
    pub fn embed(&self, coords: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.basis.mul_vec(coords)
    }

    /// Reads coordinates at the pivot rows without checking membership.
    pub fn coordinates_unchecked(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of `v`, or `None` when `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let c = self.coordinates_unchecked(v);
        let back = self.embed(&c).ok()?;
        (back == v).then_some(c)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vectors().iter().all(|v| other.contains(v))
    }

    /// Basis vectors of `larger` (taken in order) that extend a basis of
    /// `self` to a basis of `self + larger`.
    pub fn complement_in(&self, larger: &Self) -> Vec<Vec<F::Elem>> {
        let mut inc = IncrementalBasis::new(self.field(), self.ambient_dim);
        for v in self.vectors() {
            inc.insert(&v);
        }
        larger.vectors().into_iter().filter(|v| inc.insert(v)).collect()
    }
}

/// Row-echelon accumulator answering "is this vector independent of the ones
/// inserted so far?".
#[derive(Debug, Clone)]
pub struct IncrementalBasis<F: Field> {
    field: F,
    len: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> IncrementalBasis<F> {
    pub fn new(field: &F, len: usize) -> Self {
        IncrementalBasis { field: field.clone(), len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row) {
                f.sub_mul_assign(x, &c, y);
            }
        }
        w
    }

    pub fn is_independent(&self, v: &[F::Elem]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(v).iter().any(|x| !self.field.is_zero(x))
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((p, w));
        true
    }
}
