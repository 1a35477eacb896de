//! Finite-dimensional associative algebras given by structure constants, and
//! bimodules over them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::linalg::{solve_linear, Matrix};

/// A single failed check in a validation report. Indices are basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Coordinate `l` of `(e_i e_j) e_k` and `e_i (e_j e_k)` differ.
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    /// `(a b) m ≠ a (b m)` for basis `a = e_i`, `b = e_j`, module basis `m`.
    BimoduleLeft {
        i: usize,
        j: usize,
        m: usize,
    },
    /// `(a m) b ≠ a (m b)`.
    BimoduleMiddle {
        i: usize,
        m: usize,
        j: usize,
    },
    /// `(m a) b ≠ m (a b)`.
    BimoduleRight {
        m: usize,
        i: usize,
        j: usize,
    },
    ActionShape {
        g: usize,
    },
    ActionIdentity,
    ActionNotInvertible {
        g: usize,
    },
    ActionInverseMissing {
        g: usize,
    },
    ActionTable {
        g: usize,
        h: usize,
    },
    /// `g(e_i e_j) ≠ (g e_i)(g e_j)`.
    ActionMultiplicative {
        g: usize,
        i: usize,
        j: usize,
    },
    /// `φ(e_i e_j) ≠ φ(e_i) φ(e_j)`.
    MorphismMultiplicative {
        i: usize,
        j: usize,
    },
    /// `φ ∘ g_A ≠ g_B ∘ φ`.
    MorphismEquivariance {
        g: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k, l } => {
                write!(f, "associativity fails at ({i},{j},{k},{l})")
            }
            Violation::BimoduleLeft { i, j, m } => {
                write!(f, "left module axiom (ab)m = a(bm) fails at ({i},{j},{m})")
            }
            Violation::BimoduleMiddle { i, m, j } => {
                write!(f, "bimodule axiom (am)b = a(mb) fails at ({i},{m},{j})")
            }
            Violation::BimoduleRight { m, i, j } => {
                write!(f, "right module axiom (ma)b = m(ab) fails at ({m},{i},{j})")
            }
            Violation::ActionShape { g } => write!(f, "group element {g} has the wrong shape"),
            Violation::ActionIdentity => f.write_str("identity element is not the identity matrix"),
            Violation::ActionNotInvertible { g } => write!(f, "group element {g} is not invertible"),
            Violation::ActionInverseMissing { g } => {
                write!(f, "inverse of group element {g} is not in the group")
            }
            Violation::ActionTable { g, h } => {
                write!(f, "multiplication table entry ({g},{h}) is wrong")
            }
            Violation::ActionMultiplicative { g, i, j } => {
                write!(f, "group element {g} is not multiplicative on ({i},{j})")
            }
            Violation::MorphismMultiplicative { i, j } => {
                write!(f, "morphism is not multiplicative on ({i},{j})")
            }
            Violation::MorphismEquivariance { g } => {
                write!(f, "morphism does not commute with group element {g}")
            }
        }
    }
}

/// Outcome of a validator: passes iff no violations were found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

/// An algebra with basis `e_0 … e_{d-1}` and `e_i e_j = Σ_k c[i][j][k] e_k`.
/// A unit is not required.
#[derive(Clone, PartialEq)]
pub struct Algebra<F: Field> {
    field: F,
    names: Vec<String>,
    structure: Vec<F::Elem>,
}

impl<F: Field> Algebra<F> {
    /// `structure` is the dense tensor indexed `(i * d + j) * d + k`.
    pub fn new(field: &F, names: Vec<String>, structure: Vec<F::Elem>) -> Result<Self> {
        let d = names.len();
        check_shape("structure constant count", d * d * d, structure.len())?;
        Ok(Algebra { field: field.clone(), names, structure })
    }

    /// Builds from sparse `(i, j, k, c)` entries; repeated entries add up.
    pub fn from_triples(
        field: &F,
        names: Vec<String>,
        triples: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
    ) -> Result<Self> {
        let d = names.len();
        let mut structure = alloc::vec![field.zero(); d * d * d];
        for (i, j, k, c) in triples {
            if i >= d || j >= d || k >= d {
                return Err(Error::Invalid(format!(
                    "structure constant index ({i},{j},{k}) out of range for dimension {d}"
                )));
            }
            field.add_assign(&mut structure[(i * d + j) * d + k], &c);
        }
        Self::new(field, names, structure)
    }

    /// Same, with integer coefficients and generated basis names `e0, e1, …`.
    pub fn from_int_triples(field: &F, dim: usize, triples: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let names = (0..dim).map(|i| format!("e{i}")).collect();
        Self::from_triples(field, names, triples.iter().map(|&(i, j, k, c)| (i, j, k, field.from_i64(c))))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn structure(&self) -> &[F::Elem] {
        &self.structure
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        let d = self.dim();
        &self.structure[(i * d + j) * d + k]
    }

    /// Coefficients of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F::Elem] {
        let d = self.dim();
        &self.structure[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = alloc::vec![f.zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let xy = f.mul(xi, yj);
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    f.add_mul_assign(o, &xy, c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = alloc::vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_multiplication(&self, i: usize) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.dim(), self.dim(), |k, j| self.constant(i, j, k).clone())
    }

    /// Matrix of right multiplication by `e_i`.
    pub fn right_multiplication(&self, i: usize) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.dim(), self.dim(), |k, j| self.constant(j, i, k).clone())
    }

    pub fn check_associativity(&self) -> Validation {
        let d = self.dim();
        let mut report = Validation::default();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.basis_product(j, k).to_vec();
                    let right = self.mul(&self.basis_vector(i), &jk);
                    for l in 0..d {
                        if left[l] != right[l] {
                            report.push(Violation::Associativity { i, j, k, l });
                        }
                    }
                }
            }
        }
        report
    }

    /// The multiplicative identity, if the algebra has one.
    pub fn find_unit(&self) -> Option<Vec<F::Elem>> {
        // u e_j = e_j and e_j u = e_j for all j is a linear system in u.
        let d = self.dim();
        let f = &self.field;
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| self.constant(i, j, k).clone()).collect::<Vec<_>>());
                rhs.push(if j == k { f.one() } else { f.zero() });
                rows.push((0..d).map(|i| self.constant(j, i, k).clone()).collect::<Vec<_>>());
                rhs.push(if j == k { f.one() } else { f.zero() });
            }
        }
        if d == 0 {
            return Some(Vec::new());
        }
        let m = Matrix::from_rows(f, rows).ok()?;
        solve_linear(&m, &rhs).ok().flatten()
    }

    /// Basis pairs `(i, j)` on which the linear map `g` fails to be multiplicative.
    pub fn multiplicativity_failures(&self, g: &Matrix<F>) -> Vec<(usize, usize)> {
        self.morphism_failures(self, g)
    }

    /// Pairs `(i, j)` with `φ(e_i e_j) ≠ φ(e_i) φ(e_j)` for `φ: self → target`.
    pub fn morphism_failures(&self, target: &Algebra<F>, phi: &Matrix<F>) -> Vec<(usize, usize)> {
        let d = self.dim();
        let images: Vec<Vec<F::Elem>> = (0..d).map(|i| phi.column(i)).collect();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let lhs = phi.mul_vec(self.basis_product(i, j)).expect("shape checked by caller");
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Transports the structure along a change of basis: the new basis vector
    /// `e'_j` is column `j` of `p` in the old coordinates.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let d = self.dim();
        check_shape("change of basis size", d, p.rows())?;
        let pinv = p.inverse()?;
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| p.column(j)).collect();
        let mut structure = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&cols[i], &cols[j]);
                structure.extend(pinv.mul_vec(&prod)?);
            }
        }
        Self::new(&self.field, self.names.clone(), structure)
    }
}

impl<F: Field> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, basis {:?})", self.dim(), self.names)
    }
}

/// Left and right actions of an algebra `A` on a module `M`, by basis.
///
/// `left[(i * dm + m) * dm + n]` is the `f_n` coefficient of `e_i · f_m`;
/// `right[(m * da + i) * dm + n]` that of `f_m · e_i`.
#[derive(Clone, PartialEq)]
pub struct Bimodule<F: Field> {
    field: F,
    algebra_dim: usize,
    module_dim: usize,
    left: Vec<F::Elem>,
    right: Vec<F::Elem>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        field: &F,
        algebra_dim: usize,
        module_dim: usize,
        left: Vec<F::Elem>,
        right: Vec<F::Elem>,
    ) -> Result<Self> {
        let n = algebra_dim * module_dim * module_dim;
        check_shape("left action entry count", n, left.len())?;
        check_shape("right action entry count", n, right.len())?;
        Ok(Bimodule { field: field.clone(), algebra_dim, module_dim, left, right })
    }

    /// `A` as a bimodule over itself.
    pub fn regular(a: &Algebra<F>) -> Self {
        let d = a.dim();
        let mut left = Vec::with_capacity(d * d * d);
        let mut right = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for m in 0..d {
                left.extend_from_slice(a.basis_product(i, m));
            }
        }
        for m in 0..d {
            for i in 0..d {
                right.extend_from_slice(a.basis_product(m, i));
            }
        }
        Bimodule { field: a.field().clone(), algebra_dim: d, module_dim: d, left, right }
    }

    /// `B` as an `A`-bimodule through `φ: A → B`: `a·b = φ(a) b`, `b·a = b φ(a)`.
    pub fn induced(source: &Algebra<F>, target: &Algebra<F>, phi: &Matrix<F>) -> Result<Self> {
        let (da, db) = (source.dim(), target.dim());
        check_shape("morphism rows", db, phi.rows())?;
        check_shape("morphism columns", da, phi.cols())?;
        let mut left = Vec::with_capacity(da * db * db);
        let mut right = Vec::with_capacity(da * db * db);
        let images: Vec<Vec<F::Elem>> = (0..da).map(|i| phi.column(i)).collect();
        for img in &images {
            for m in 0..db {
                left.extend(target.mul(img, &target.basis_vector(m)));
            }
        }
        for m in 0..db {
            for img in &images {
                right.extend(target.mul(&target.basis_vector(m), img));
            }
        }
        Self::new(source.field(), da, db, left, right)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// Coefficients of `e_i · f_m`.
    pub fn left(&self, i: usize, m: usize) -> &[F::Elem] {
        let dm = self.module_dim;
        let s = (i * dm + m) * dm;
        &self.left[s..s + dm]
    }

    /// Coefficients of `f_m · e_i`.
    pub fn right(&self, m: usize, i: usize) -> &[F::Elem] {
        let dm = self.module_dim;
        let s = (m * self.algebra_dim + i) * dm;
        &self.right[s..s + dm]
    }

    /// `a · v` for coordinate vectors.
    pub fn act_left(&self, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = alloc::vec![f.zero(); self.module_dim];
        for (i, ai) in a.iter().enumerate() {
            for (m, vm) in v.iter().enumerate() {
                if f.is_zero(ai) || f.is_zero(vm) {
                    continue;
                }
                let c = f.mul(ai, vm);
                for (o, x) in out.iter_mut().zip(self.left(i, m)) {
                    f.add_mul_assign(o, &c, x);
                }
            }
        }
        out
    }

    /// `v · a` for coordinate vectors.
    pub fn act_right(&self, v: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = alloc::vec![f.zero(); self.module_dim];
        for (m, vm) in v.iter().enumerate() {
            for (i, ai) in a.iter().enumerate() {
                if f.is_zero(ai) || f.is_zero(vm) {
                    continue;
                }
                let c = f.mul(vm, ai);
                for (o, x) in out.iter_mut().zip(self.right(m, i)) {
                    f.add_mul_assign(o, &c, x);
                }
            }
        }
        out
    }

    /// Checks the three mixed associativity conditions against `a`.
    pub fn check(&self, a: &Algebra<F>) -> Result<Validation> {
        check_shape("bimodule algebra dimension", a.dim(), self.algebra_dim)?;
        let f = &self.field;
        let (da, dm) = (self.algebra_dim, self.module_dim);
        let unit_m = |m: usize| {
            let mut v = alloc::vec![f.zero(); dm];
            v[m] = f.one();
            v
        };
        let mut report = Validation::default();
        for i in 0..da {
            let ei = a.basis_vector(i);
            for j in 0..da {
                let ej = a.basis_vector(j);
                let ij = a.basis_product(i, j);
                for m in 0..dm {
                    let fm = unit_m(m);
                    // (e_i e_j) f_m = e_i (e_j f_m)
                    if self.act_left(ij, &fm) != self.act_left(&ei, self.left(j, m)) {
                        report.push(Violation::BimoduleLeft { i, j, m });
                    }
                    // (e_i f_m) e_j = e_i (f_m e_j)
                    if self.act_right(self.left(i, m), &ej) != self.act_left(&ei, self.right(m, j)) {
                        report.push(Violation::BimoduleMiddle { i, m, j });
                    }
                    // (f_m e_i) e_j = f_m (e_i e_j)
                    if self.act_right(self.right(m, i), &ej) != self.act_right(&fm, ij) {
                        report.push(Violation::BimoduleRight { m, i, j });
                    }
                }
            }
        }
        Ok(report)
    }
}

impl<F: Field> fmt::Debug for Bimodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule(algebra dim {}, module dim {})", self.algebra_dim, self.module_dim)
    }
}
