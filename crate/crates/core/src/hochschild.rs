//! Hochschild cochains `C^n(A; M)`, the coboundary, invariant cochains under a
//! finite group, and equivariant cohomology.
//!
//! A cochain of degree `n` is stored as a flat coefficient vector of length
//! `d^n · d_M`: entry `t · d_M + m` is the `f_m` coefficient of
//! `f(e_{i_1}, …, e_{i_n})`, where `t = Σ i_s d^{n-s}` (first slot most
//! significant). This ordering is also the coordinate order of every matrix
//! built here.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Bimodule};
use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::group::GroupAction;
use crate::linalg::{self, kernel_basis, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<F: Field> {
    field: F,
    degree: usize,
    arg_dim: usize,
    value_dim: usize,
    coeffs: Vec<F::Elem>,
}

pub(crate) fn tuple_count(d: usize, n: usize) -> usize {
    d.checked_pow(n as u32).expect("cochain space size overflows usize")
}

/// Big-endian base-`d` digits of `t`, `n` of them.
fn digits(mut t: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; n];
    for s in (0..n).rev() {
        out[s] = t % d;
        t /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// Applies `m` in slot `s` of a coefficient array whose slots have sizes
/// `dims` and whose values have length `dv`: `f'(…, i, …) = Σ_r m[r][i] f(…, r, …)`.
fn apply_slot<F: Field>(
    field: &F,
    coeffs: &[F::Elem],
    dims: &[usize],
    dv: usize,
    s: usize,
    m: &Matrix<F>,
) -> Vec<F::Elem> {
    let outer: usize = dims[..s].iter().product();
    let inner: usize = dims[s + 1..].iter().product::<usize>() * dv;
    let (old, new) = (dims[s], m.cols());
    debug_assert_eq!(m.rows(), old);
    let mut out = alloc::vec![field.zero(); outer * new * inner];
    for o in 0..outer {
        for r in 0..old {
            let src = &coeffs[(o * old + r) * inner..(o * old + r + 1) * inner];
            if src.iter().all(|x| field.is_zero(x)) {
                continue;
            }
            for i in 0..new {
                let c = m.get(r, i);
                if field.is_zero(c) {
                    continue;
                }
                let dst = &mut out[(o * new + i) * inner..(o * new + i + 1) * inner];
                for (y, x) in dst.iter_mut().zip(src) {
                    field.add_mul_assign(y, c, x);
                }
            }
        }
    }
    out
}

impl<F: Field> Cochain<F> {
    pub fn new(field: &F, degree: usize, arg_dim: usize, value_dim: usize, coeffs: Vec<F::Elem>) -> Result<Self> {
        check_shape("cochain coefficient count", tuple_count(arg_dim, degree) * value_dim, coeffs.len())?;
        Ok(Cochain { field: field.clone(), degree, arg_dim, value_dim, coeffs })
    }

    pub fn zero(field: &F, degree: usize, arg_dim: usize, value_dim: usize) -> Self {
        let n = tuple_count(arg_dim, degree) * value_dim;
        Cochain { field: field.clone(), degree, arg_dim, value_dim, coeffs: alloc::vec![field.zero(); n] }
    }

    /// Degree-1 cochain of the linear map with matrix `m` (column `i` = image of `e_i`).
    pub fn from_linear_map(m: &Matrix<F>) -> Self {
        let (dv, da) = (m.rows(), m.cols());
        let coeffs = (0..da).flat_map(|i| (0..dv).map(move |r| (i, r))).map(|(i, r)| m.get(r, i).clone()).collect();
        Cochain { field: m.field().clone(), degree: 1, arg_dim: da, value_dim: dv, coeffs }
    }

    pub fn to_linear_map(&self) -> Result<Matrix<F>> {
        check_shape("cochain degree", 1, self.degree)?;
        Ok(Matrix::from_fn(&self.field, self.value_dim, self.arg_dim, |r, i| {
            self.coeffs[i * self.value_dim + r].clone()
        }))
    }

    /// Degree-0 cochain with the given value.
    pub fn constant(field: &F, arg_dim: usize, value: Vec<F::Elem>) -> Self {
        Cochain { field: field.clone(), degree: 0, arg_dim, value_dim: value.len(), coeffs: value }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arg_dim(&self) -> usize {
        self.arg_dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn tuple_count(&self) -> usize {
        tuple_count(self.arg_dim, self.degree)
    }

    /// `f(e_{i_1}, …, e_{i_n})` by flat tuple index.
    pub fn value(&self, t: usize) -> &[F::Elem] {
        &self.coeffs[t * self.value_dim..(t + 1) * self.value_dim]
    }

    pub fn value_at(&self, tuple: &[usize]) -> &[F::Elem] {
        self.value(undigits(tuple, self.arg_dim))
    }

    pub fn set_value_at(&mut self, tuple: &[usize], value: &[F::Elem]) {
        let t = undigits(tuple, self.arg_dim);
        let dv = self.value_dim;
        self.coeffs[t * dv..(t + 1) * dv].clone_from_slice(value);
    }

    /// Nonzero coordinates as `(tuple, value index, coefficient)`, in
    /// coordinate order.
    pub fn entries(&self) -> Vec<(Vec<usize>, usize, &F::Elem)> {
        let dv = self.value_dim.max(1);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(idx, c)| (digits(idx / dv, self.arg_dim, self.degree), idx % dv, c))
            .collect()
    }

    /// Inverse of [`Cochain::entries`]; repeated coordinates add up.
    pub fn from_entries(
        field: &F,
        degree: usize,
        arg_dim: usize,
        value_dim: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, usize, F::Elem)>,
    ) -> Result<Self> {
        let mut c = Self::zero(field, degree, arg_dim, value_dim);
        for (tuple, m, x) in entries {
            check_shape("entry tuple length", degree, tuple.len())?;
            if m >= value_dim || tuple.iter().any(|&i| i >= arg_dim) {
                return Err(Error::Invalid(format!("entry {tuple:?}, {m} out of range")));
            }
            let idx = undigits(&tuple, arg_dim) * value_dim + m;
            field.add_assign(&mut c.coeffs[idx], &x);
        }
        Ok(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| self.field.is_zero(x))
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|x| !self.field.is_zero(x)).count()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        check_shape("cochain degree", self.degree, other.degree)?;
        check_shape("cochain argument dimension", self.arg_dim, other.arg_dim)?;
        check_shape("cochain value dimension", self.value_dim, other.value_dim)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        Ok(Cochain { coeffs, ..self.clone_header() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Cochain { coeffs, ..self.clone_header() })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Cochain { coeffs, ..self.clone_header() }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, s)).collect();
        Cochain { coeffs, ..self.clone_header() }
    }

    fn clone_header(&self) -> Self {
        Cochain {
            field: self.field.clone(),
            degree: self.degree,
            arg_dim: self.arg_dim,
            value_dim: self.value_dim,
            coeffs: Vec::new(),
        }
    }

    /// Multilinear evaluation on coordinate vectors.
    pub fn eval(&self, args: &[&[F::Elem]]) -> Result<Vec<F::Elem>> {
        check_shape("argument count", self.degree, args.len())?;
        for a in args {
            check_shape("argument length", self.arg_dim, a.len())?;
        }
        let f = &self.field;
        let mut out = alloc::vec![f.zero(); self.value_dim];
        for t in 0..self.tuple_count() {
            let ds = digits(t, self.arg_dim, self.degree);
            let mut c = f.one();
            for (a, &i) in args.iter().zip(&ds) {
                c = f.mul(&c, &a[i]);
                if f.is_zero(&c) {
                    break;
                }
            }
            if f.is_zero(&c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.value(t)) {
                f.add_mul_assign(o, &c, x);
            }
        }
        Ok(out)
    }

    /// `m ∘ f`
    pub fn postcompose(&self, m: &Matrix<F>) -> Result<Self> {
        check_shape("postcomposed map columns", self.value_dim, m.cols())?;
        let f = &self.field;
        let dv = m.rows();
        let mut coeffs = Vec::with_capacity(self.tuple_count() * dv);
        for t in 0..self.tuple_count() {
            let v = self.value(t);
            if v.iter().all(|x| f.is_zero(x)) {
                coeffs.extend(core::iter::repeat_with(|| f.zero()).take(dv));
            } else {
                coeffs.extend(m.mul_vec(v)?);
            }
        }
        Ok(Cochain { field: f.clone(), degree: self.degree, arg_dim: self.arg_dim, value_dim: dv, coeffs })
    }

    /// `f ∘ (m_1 ⊗ … ⊗ m_n)`, i.e. `(x_1, …, x_n) ↦ f(m_1 x_1, …, m_n x_n)`.
    /// All maps must share one source dimension.
    pub fn precompose(&self, maps: &[&Matrix<F>]) -> Result<Self> {
        check_shape("number of precomposed maps", self.degree, maps.len())?;
        let Some(first) = maps.first() else {
            return Ok(self.clone());
        };
        let new_dim = first.cols();
        let mut dims = alloc::vec![self.arg_dim; self.degree];
        let mut coeffs = self.coeffs.clone();
        for (s, m) in maps.iter().enumerate() {
            check_shape("precomposed map rows", self.arg_dim, m.rows())?;
            check_shape("precomposed map columns", new_dim, m.cols())?;
            coeffs = apply_slot(&self.field, &coeffs, &dims, self.value_dim, s, m);
            dims[s] = new_dim;
        }
        Ok(Cochain {
            field: self.field.clone(),
            degree: self.degree,
            arg_dim: new_dim,
            value_dim: self.value_dim,
            coeffs,
        })
    }

    /// `f ∘ m^{⊗n}`
    pub fn precompose_all(&self, m: &Matrix<F>) -> Result<Self> {
        check_shape("precomposed map rows", self.arg_dim, m.rows())?;
        if self.degree == 0 {
            return Ok(Cochain { arg_dim: m.cols(), ..self.clone() });
        }
        let maps: Vec<&Matrix<F>> = (0..self.degree).map(|_| m).collect();
        self.precompose(&maps)
    }

    /// Partial composition `f ∘_p g`: `g` fed into slot `p` (zero-based) of `f`,
    /// `(x_1, …) ↦ f(x_1, …, x_p, g(x_{p+1}, …, x_{p+m}), …)`.
    pub fn insert(&self, p: usize, g: &Self) -> Result<Self> {
        if p >= self.degree {
            return Err(Error::Invalid(format!("insertion slot {p} out of range for degree {}", self.degree)));
        }
        check_shape("inserted cochain value dimension", self.arg_dim, g.value_dim)?;
        check_shape("inserted cochain argument dimension", self.arg_dim, g.arg_dim)?;
        let f = &self.field;
        let d = self.arg_dim;
        let n = self.degree + g.degree - 1;
        let mut out = Cochain::zero(f, n, d, self.value_dim);
        let suffix_len = self.degree - 1 - p;
        let (gm, sm) = (tuple_count(d, g.degree), tuple_count(d, suffix_len));
        let dv = self.value_dim;
        for t in 0..out.tuple_count() {
            let suffix = t % sm;
            let middle = (t / sm) % gm;
            let prefix = t / (sm * gm);
            let y = g.value(middle);
            let dst = &mut out.coeffs[t * dv..(t + 1) * dv];
            for (k, yk) in y.iter().enumerate() {
                if f.is_zero(yk) {
                    continue;
                }
                let src = self.value((prefix * d + k) * sm + suffix);
                for (o, x) in dst.iter_mut().zip(src) {
                    f.add_mul_assign(o, yk, x);
                }
            }
        }
        Ok(out)
    }
}

/// Dimension bookkeeping and the cohomology of one invariant subcomplex.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyResult<F: Field> {
    pub degree: usize,
    /// Dimension of the invariant cochain space in this degree.
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    pub representatives: Vec<Cochain<F>>,
}

/// The complex `C^*(A; M)` with a group acting on `A` (arguments) and `M`
/// (values) through one abstract group.
#[derive(Debug, Clone)]
pub struct CochainComplex<F: Field> {
    algebra: Algebra<F>,
    module: Bimodule<F>,
    arg_action: GroupAction<F>,
    value_action: GroupAction<F>,
}

impl<F: Field> CochainComplex<F> {
    pub fn new(
        algebra: Algebra<F>,
        module: Bimodule<F>,
        arg_action: GroupAction<F>,
        value_action: GroupAction<F>,
    ) -> Result<Self> {
        check_shape("bimodule algebra dimension", algebra.dim(), module.algebra_dim())?;
        check_shape("argument action dimension", algebra.dim(), arg_action.dim())?;
        check_shape("value action dimension", module.module_dim(), value_action.dim())?;
        arg_action.require_same_group(&value_action)?;
        Ok(CochainComplex { algebra, module, arg_action, value_action })
    }

    /// `C^*(A; A)` with the action used on both sides.
    pub fn regular(algebra: &Algebra<F>, action: &GroupAction<F>) -> Result<Self> {
        Self::new(algebra.clone(), Bimodule::regular(algebra), action.clone(), action.clone())
    }

    /// No group (|G| = 1).
    pub fn without_group(algebra: &Algebra<F>, module: &Bimodule<F>) -> Result<Self> {
        let f = algebra.field();
        Self::new(
            algebra.clone(),
            module.clone(),
            GroupAction::trivial(f, algebra.dim()),
            GroupAction::trivial(f, module.module_dim()),
        )
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn module(&self) -> &Bimodule<F> {
        &self.module
    }

    pub fn arg_action(&self) -> &GroupAction<F> {
        &self.arg_action
    }

    pub fn value_action(&self) -> &GroupAction<F> {
        &self.value_action
    }

    /// `d_A^n · d_M`
    pub fn coordinate_count(&self, n: usize) -> usize {
        tuple_count(self.algebra.dim(), n) * self.module.module_dim()
    }

    pub fn zero_cochain(&self, n: usize) -> Cochain<F> {
        Cochain::zero(self.field(), n, self.algebra.dim(), self.module.module_dim())
    }

    pub fn cochain(&self, n: usize, coeffs: Vec<F::Elem>) -> Result<Cochain<F>> {
        Cochain::new(self.field(), n, self.algebra.dim(), self.module.module_dim(), coeffs)
    }

    fn check_cochain(&self, c: &Cochain<F>) -> Result<()> {
        check_shape("cochain value dimension", self.module.module_dim(), c.value_dim)?;
        check_shape("cochain argument dimension", self.algebra.dim(), c.arg_dim)
    }

    /// `δ f`, evaluated tuple by tuple.
    pub fn coboundary_apply(&self, c: &Cochain<F>) -> Result<Cochain<F>> {
        self.check_cochain(c)?;
        let f = self.field();
        let (d, dm, n) = (self.algebra.dim(), self.module.module_dim(), c.degree);
        let mut out = self.zero_cochain(n + 1);
        let tail_count = tuple_count(d, n);
        let last_sign_neg = n % 2 == 0;
        for t in 0..out.tuple_count() {
            let idx = digits(t, d, n + 1);
            let mut acc = alloc::vec![f.zero(); dm];
            // x_1 · f(x_2, …)
            for (m, v) in c.value(t % tail_count).iter().enumerate() {
                if f.is_zero(v) {
                    continue;
                }
                for (a, l) in acc.iter_mut().zip(self.module.left(idx[0], m)) {
                    f.add_mul_assign(a, v, l);
                }
            }
            // Σ (-1)^p f(…, x_p x_{p+1}, …)
            let mut merged = alloc::vec![0usize; n];
            for p in 1..=n {
                let prod = self.algebra.basis_product(idx[p - 1], idx[p]);
                merged[..p - 1].copy_from_slice(&idx[..p - 1]);
                merged[p..].copy_from_slice(&idx[p + 1..]);
                for (k, ck) in prod.iter().enumerate() {
                    if f.is_zero(ck) {
                        continue;
                    }
                    merged[p - 1] = k;
                    let coef = if p % 2 == 1 { f.neg(ck) } else { ck.clone() };
                    for (a, v) in acc.iter_mut().zip(c.value(undigits(&merged, d))) {
                        f.add_mul_assign(a, &coef, v);
                    }
                }
            }
            // (-1)^{n+1} f(…, x_n) · x_{n+1}
            for (m, v) in c.value(t / d).iter().enumerate() {
                if f.is_zero(v) {
                    continue;
                }
                let coef = if last_sign_neg { f.neg(v) } else { v.clone() };
                for (a, r) in acc.iter_mut().zip(self.module.right(m, idx[n])) {
                    f.add_mul_assign(a, &coef, r);
                }
            }
            out.coeffs[t * dm..(t + 1) * dm].clone_from_slice(&acc);
        }
        Ok(out)
    }

    /// Matrix of `δ^n` in the standard coordinates, assembled column by
    /// column from the images of basis cochains.
    pub fn coboundary_matrix(&self, n: usize) -> Matrix<F> {
        let f = self.field();
        let (d, dm) = (self.algebra.dim(), self.module.module_dim());
        let (rows, cols) = (self.coordinate_count(n + 1), self.coordinate_count(n));
        let mut data = alloc::vec![f.zero(); rows * cols];
        let mut add = |row: usize, col: usize, v: &F::Elem| {
            if !f.is_zero(v) {
                f.add_assign(&mut data[row * cols + col], v);
            }
        };
        let dn = tuple_count(d, n);
        for j in 0..dn {
            let jd = digits(j, d, n);
            for m in 0..dm {
                let col = j * dm + m;
                for i in 0..d {
                    let row_t = i * dn + j;
                    for (k, l) in self.module.left(i, m).iter().enumerate() {
                        add(row_t * dm + k, col, l);
                    }
                }
                for p in 1..=n {
                    let before = undigits(&jd[..p - 1], d);
                    let after = &jd[p..];
                    let after_len = after.len();
                    let after_idx = undigits(after, d);
                    for a in 0..d {
                        for b in 0..d {
                            let c = self.algebra.constant(a, b, jd[p - 1]);
                            if f.is_zero(c) {
                                continue;
                            }
                            let row_t = ((before * d + a) * d + b) * tuple_count(d, after_len) + after_idx;
                            let v = if p % 2 == 1 { f.neg(c) } else { c.clone() };
                            add(row_t * dm + m, col, &v);
                        }
                    }
                }
                for i in 0..d {
                    let row_t = j * d + i;
                    for (k, r) in self.module.right(m, i).iter().enumerate() {
                        let v = if n.is_multiple_of(2) { f.neg(r) } else { r.clone() };
                        add(row_t * dm + k, col, &v);
                    }
                }
            }
        }
        Matrix::from_data(f, rows, cols, data).expect("sizes agree")
    }

    /// `f(g x_1, …, g x_n) = g f(x_1, …, x_n)` for every group element.
    pub fn is_invariant(&self, c: &Cochain<F>) -> Result<bool> {
        self.check_cochain(c)?;
        for g in 0..self.arg_action.order() {
            let lhs = c.precompose_all(self.arg_action.element(g))?;
            let rhs = c.postcompose(self.value_action.element(g))?;
            if lhs.coeffs != rhs.coeffs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Matrix of `f ↦ f ∘ g^{⊗n} − ρ(g) ∘ f` for the element `g`.
    fn invariance_constraint(&self, n: usize, g: usize) -> Matrix<F> {
        let f = self.field();
        let (d, dm) = (self.algebra.dim(), self.module.module_dim());
        let ga = self.arg_action.element(g);
        let rho = self.value_action.element(g);
        let dn = tuple_count(d, n);
        let size = dn * dm;
        let mut data = alloc::vec![f.zero(); size * size];
        for j in 0..dn {
            let jd = digits(j, d, n);
            for i in 0..dn {
                let id = digits(i, d, n);
                let mut c = f.one();
                for (&js, &is) in jd.iter().zip(&id) {
                    c = f.mul(&c, ga.get(js, is));
                    if f.is_zero(&c) {
                        break;
                    }
                }
                if f.is_zero(&c) {
                    continue;
                }
                for m in 0..dm {
                    f.add_assign(&mut data[(i * dm + m) * size + j * dm + m], &c);
                }
            }
            for m in 0..dm {
                for k in 0..dm {
                    let r = rho.get(k, m);
                    if !f.is_zero(r) {
                        let cell = &mut data[(j * dm + k) * size + j * dm + m];
                        *cell = f.sub(cell, r);
                    }
                }
            }
        }
        Matrix::from_data(f, size, size, data).expect("sizes agree")
    }

    /// Invariant cochains of degree `n`, as the common kernel of the
    /// generator constraints. Never divides by `|G|`.
    pub fn invariant_subspace(&self, n: usize) -> Subspace<F> {
        let f = self.field();
        let size = self.coordinate_count(n);
        let gens = self.arg_action.generators();
        if gens.is_empty() {
            return Subspace::full(f, size);
        }
        let blocks: Vec<Matrix<F>> = gens.iter().map(|&g| self.invariance_constraint(n, g)).collect();
        let refs: Vec<&Matrix<F>> = blocks.iter().collect();
        let stacked = Matrix::vstack(f, size, &refs).expect("blocks share width");
        kernel_basis(&stacked)
    }

    /// Image of the averaging projector `f ↦ |G|^{-1} Σ_g ρ(g) ∘ f ∘ (g^{-1})^{⊗n}`,
    /// or `None` when `|G|` is zero in the field.
    pub fn reynolds_image(&self, n: usize) -> Option<Subspace<F>> {
        let f = self.field();
        let order = self.arg_action.order();
        let inv_order = f.inv(&f.from_i64(order as i64))?;
        let size = self.coordinate_count(n);
        let mut columns = Vec::with_capacity(size);
        for j in 0..size {
            let mut e = alloc::vec![f.zero(); size];
            e[j] = f.one();
            let unit = self.cochain(n, e).expect("sized");
            let mut acc = self.zero_cochain(n);
            for g in 0..order {
                let ginv = self.arg_action.inverse_index(g)?;
                let term = unit
                    .precompose_all(self.arg_action.element(ginv))
                    .and_then(|t| t.postcompose(self.value_action.element(g)))
                    .expect("shapes agree");
                acc = acc.add(&term).expect("shapes agree");
            }
            columns.push(acc.scale(&inv_order).coeffs);
        }
        Subspace::from_vectors(f, size, &columns).ok()
    }

    /// `δ^n` on the invariant basis of degree `n`, with values in full
    /// degree `n + 1` coordinates.
    pub fn restricted_coboundary(&self, n: usize, source: &Subspace<F>) -> Matrix<F> {
        let f = self.field();
        let cols: Vec<Vec<F::Elem>> = source
            .vectors()
            .into_iter()
            .map(|v| {
                let c = self.cochain(n, v).expect("sized");
                self.coboundary_apply(&c).expect("shapes agree").coeffs
            })
            .collect();
        Matrix::from_columns(f, self.coordinate_count(n + 1), &cols).expect("sized")
    }

    /// `H^n_G(A; M)`. In degree 0 the coboundaries are zero, so `H^0_G` is
    /// the invariant part of `ker δ^0`.
    pub fn equivariant_cohomology(&self, n: usize) -> CohomologyResult<F> {
        let f = self.field();
        let here = self.invariant_subspace(n);
        let outgoing = self.restricted_coboundary(n, &here);
        let incoming = if n == 0 {
            Matrix::zeros(f, here.dim(), 0)
        } else {
            let below = self.invariant_subspace(n - 1);
            let images = self.restricted_coboundary(n - 1, &below);
            let coords: Vec<Vec<F::Elem>> = images.columns().iter().map(|v| here.coordinates_unchecked(v)).collect();
            Matrix::from_columns(f, here.dim(), &coords).expect("sized")
        };
        let h = linalg::homology(&outgoing, &incoming).expect("δ∘δ = 0");
        let representatives =
            h.representatives.iter().map(|v| self.cochain(n, here.embed(v).expect("sized")).expect("sized")).collect();
        CohomologyResult {
            degree: n,
            dim_cochains: here.dim(),
            dim_cocycles: h.cocycles.dim(),
            dim_coboundaries: h.coboundaries.dim(),
            betti: h.betti(),
            representatives,
        }
    }
}
