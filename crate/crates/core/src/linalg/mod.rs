//! Exact dense linear algebra: echelon forms, kernels, solving and subspaces.
//!
//! Tie-breaking is deterministic throughout: the pivot in each column is the
//! first usable row, and particular solutions set every free variable to zero.

mod matrix;
mod subspace;

use alloc::vec::Vec;

pub use matrix::Matrix;
pub use subspace::{IncrementalBasis, Subspace};

use crate::error::{check_shape, Error, Result};
use crate::field::Field;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Echelon<F> {
    let mut a = m.clone();
    let pivots = rref_in_place(&mut a, m.cols());
    Echelon { rank: pivots.len(), matrix: a, pivots }
}

/// Reduces `a` in place, choosing pivots only among the first `pivot_cols`
/// columns. Returns the pivot columns.
fn rref_in_place<F: Field>(a: &mut Matrix<F>, pivot_cols: usize) -> Vec<usize> {
    let f = a.field().clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                let tmp = a.get(p, j).clone();
                let cur = a.get(r, j).clone();
                a.set(p, j, cur);
                a.set(r, j, tmp);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        if !f.is_one(&inv) {
            for x in &mut a.row_mut(r)[c..] {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row: Vec<F::Elem> = a.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (x, y) in a.row_mut(i)[c..].iter_mut().zip(&pivot_row) {
                f.sub_mul_assign(x, &factor, y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : m·x = 0}` in canonical form.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let f = m.field();
    let e = rref(m);
    let n = m.cols();
    let mut is_pivot = alloc::vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<F::Elem>> = (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = alloc::vec![f.zero(); n];
            v[free] = f.one();
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = f.neg(e.matrix.get(i, free));
            }
            v
        })
        .collect();
    Subspace::from_vectors(f, n, &vectors).expect("kernel vectors have the ambient length")
}

/// Canonical particular solution of `m·x = b` (free variables zero), or
/// `None` when the system is inconsistent.
pub fn solve_linear<F: Field>(m: &Matrix<F>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    check_shape("right-hand side length", m.rows(), b.len())?;
    let f = m.field();
    let rhs = Matrix::from_data(f, b.len(), 1, b.to_vec())?;
    let mut aug = Matrix::hstack(f, m.rows(), &[m, &rhs])?;
    let pivots = rref_in_place(&mut aug, m.cols());
    let last = m.cols();
    // Inconsistent iff some zero row of the coefficient part has a nonzero rhs.
    if (pivots.len()..m.rows()).any(|i| !f.is_zero(aug.get(i, last))) {
        return Ok(None);
    }
    let mut x = alloc::vec![f.zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, last).clone();
    }
    Ok(Some(x))
}

/// Rank of `m` and of `[m | b]`; `b` lies in the column space iff they agree.
pub fn rank_certificate<F: Field>(m: &Matrix<F>, b: &[F::Elem]) -> Result<(usize, usize)> {
    check_shape("right-hand side length", m.rows(), b.len())?;
    let rhs = Matrix::from_data(m.field(), b.len(), 1, b.to_vec())?;
    let aug = Matrix::hstack(m.field(), m.rows(), &[m, &rhs])?;
    Ok((m.rank(), aug.rank()))
}

/// Cocycles, coboundaries and class representatives at one spot of a complex
/// `· --incoming--> V --outgoing--> ·` with `outgoing · incoming = 0`.
#[derive(Debug, Clone)]
pub struct Homology<F: Field> {
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
    /// Canonical cocycle basis vectors completing a coboundary basis; their
    /// classes form a basis of the quotient.
    pub representatives: Vec<Vec<F::Elem>>,
}

impl<F: Field> Homology<F> {
    pub fn betti(&self) -> usize {
        self.cocycles.dim() - self.coboundaries.dim()
    }
}

pub fn homology<F: Field>(outgoing: &Matrix<F>, incoming: &Matrix<F>) -> Result<Homology<F>> {
    check_shape("incoming map target dimension", outgoing.cols(), incoming.rows())?;
    let cocycles = kernel_basis(outgoing);
    let coboundaries = Subspace::column_space(incoming);
    if !coboundaries.is_subspace_of(&cocycles) {
        return Err(Error::Invalid("composite of consecutive maps is not zero".into()));
    }
    let representatives = coboundaries.complement_in(&cocycles);
    Ok(Homology { cocycles, coboundaries, representatives })
}

/// Intersection of subspaces of a common ambient space; the empty list gives
/// the whole space.
pub fn intersect<F: Field>(field: &F, ambient_dim: usize, subspaces: &[Subspace<F>]) -> Result<Subspace<F>> {
    for s in subspaces {
        check_shape("subspace ambient dimension", ambient_dim, s.ambient_dim())?;
    }
    match subspaces {
        [] => return Ok(Subspace::full(field, ambient_dim)),
        [one] => return Ok(one.clone()),
        _ => {}
    }
    // Each subspace is cut out by its annihilator; stack all the equations.
    let mut equations: Vec<Vec<F::Elem>> = Vec::new();
    for s in subspaces {
        let ann = kernel_basis(&s.basis().transpose());
        equations.extend(ann.vectors());
    }
    if equations.is_empty() {
        return Ok(Subspace::full(field, ambient_dim));
    }
    let m = Matrix::from_rows(field, equations)?;
    Ok(kernel_basis(&m))
}

/// Coordinates of `v` in the basis of `s`, if `v` lies in `s`.
pub fn membership<F: Field>(v: &[F::Elem], s: &Subspace<F>) -> Result<Option<Vec<F::Elem>>> {
    check_shape("vector length", s.ambient_dim(), v.len())?;
    Ok(s.coordinates(v))
}
