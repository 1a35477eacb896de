//! Brute-force reference computations over exact rationals.
//!
//! Everything here is written from the defining formulas on plain vectors,
//! without any of the library's matrix builders or elimination routines.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_q(s: &str) -> Q {
    match s.split_once('/') {
        Some((a, b)) => BigRational::new(a.parse().unwrap(), b.parse().unwrap()),
        None => BigRational::from_integer(s.parse().unwrap()),
    }
}

/// Structure constants `c[(i*d + j)*d + k]`.
#[derive(Clone, Debug)]
pub struct OAlg {
    pub d: usize,
    pub c: Vec<Q>,
}

impl OAlg {
    pub fn new(d: usize, triples: &[(usize, usize, usize, i64)]) -> Self {
        let mut c = vec![Q::zero(); d * d * d];
        for &(i, j, k, x) in triples {
            c[(i * d + j) * d + k] += q(x);
        }
        OAlg { d, c }
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[(i * self.d + j) * self.d + k]
    }
}

/// Bimodule data: `l[(i*dm + m)*dm + k]` for `e_i·f_m`, `r[(m*da + i)*dm + k]` for `f_m·e_i`.
#[derive(Clone, Debug)]
pub struct OMod {
    pub da: usize,
    pub dm: usize,
    pub l: Vec<Q>,
    pub r: Vec<Q>,
}

impl OMod {
    pub fn regular(a: &OAlg) -> Self {
        let d = a.d;
        let mut l = vec![Q::zero(); d * d * d];
        let mut r = vec![Q::zero(); d * d * d];
        for i in 0..d {
            for m in 0..d {
                for k in 0..d {
                    l[(i * d + m) * d + k] = a.c(i, m, k).clone();
                    r[(m * d + i) * d + k] = a.c(m, i, k).clone();
                }
            }
        }
        OMod { da: d, dm: d, l, r }
    }

    /// `B` as an `A`-bimodule through `phi` (`phi[r][i]`: coefficient of `f_r` in `φ(e_i)`).
    pub fn induced(a: &OAlg, b: &OAlg, phi: &[Vec<Q>]) -> Self {
        let (da, db) = (a.d, b.d);
        let mut l = vec![Q::zero(); da * db * db];
        let mut r = vec![Q::zero(); db * da * db];
        for i in 0..da {
            for m in 0..db {
                for k in 0..db {
                    let mut x = Q::zero();
                    let mut y = Q::zero();
                    for s in 0..db {
                        x += &phi[s][i] * b.c(s, m, k);
                        y += &phi[s][i] * b.c(m, s, k);
                    }
                    l[(i * db + m) * db + k] = x;
                    r[(m * da + i) * db + k] = y;
                }
            }
        }
        OMod { da, dm: db, l, r }
    }

    fn left(&self, i: usize, v: &[Q]) -> Vec<Q> {
        let dm = self.dm;
        let mut out = vec![Q::zero(); dm];
        for (m, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for k in 0..dm {
                out[k] += x * &self.l[(i * dm + m) * dm + k];
            }
        }
        out
    }

    fn right(&self, v: &[Q], i: usize) -> Vec<Q> {
        let dm = self.dm;
        let mut out = vec![Q::zero(); dm];
        for (m, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for k in 0..dm {
                out[k] += x * &self.r[(m * self.da + i) * dm + k];
            }
        }
        out
    }
}

fn pow(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

/// Tuple `x` (slot 0 first) to a flat index.
fn index(x: &[usize], d: usize) -> usize {
    x.iter().fold(0, |acc, &s| acc * d + s)
}

fn tuple(mut t: usize, d: usize, n: usize) -> Vec<usize> {
    let mut x = vec![0; n];
    for s in (0..n).rev() {
        x[s] = t % d;
        t /= d;
    }
    x
}

fn value<'a>(f: &'a [Q], x: &[usize], d: usize, dm: usize) -> &'a [Q] {
    let t = index(x, d);
    &f[t * dm..(t + 1) * dm]
}

/// The Hochschild coboundary of a degree-`n` cochain, evaluated tuple by tuple.
pub fn delta(a: &OAlg, m: &OMod, n: usize, f: &[Q]) -> Vec<Q> {
    let (d, dm) = (a.d, m.dm);
    let mut out = Vec::with_capacity(pow(d, n + 1) * dm);
    for t in 0..pow(d, n + 1) {
        let x = tuple(t, d, n + 1);
        let mut acc = m.left(x[0], value(f, &x[1..], d, dm));
        for p in 1..=n {
            let sign = if p % 2 == 0 { q(1) } else { q(-1) };
            for k in 0..d {
                let c = a.c(x[p - 1], x[p], k);
                if c.is_zero() {
                    continue;
                }
                let mut y: Vec<usize> = x[..p - 1].to_vec();
                y.push(k);
                y.extend_from_slice(&x[p + 1..]);
                let coef = &sign * c;
                for (o, v) in acc.iter_mut().zip(value(f, &y, d, dm)) {
                    *o += &coef * v;
                }
            }
        }
        let last = m.right(value(f, &x[..n], d, dm), x[n]);
        let sign = if (n + 1).is_multiple_of(2) { q(1) } else { q(-1) };
        for (o, v) in acc.iter_mut().zip(last) {
            *o += &sign * v;
        }
        out.extend(acc);
    }
    out
}

/// Columns are images of unit vectors; returns rows.
fn matrix_of(cols: usize, rows: usize, map: impl Fn(&[Q]) -> Vec<Q>) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); cols]; rows];
    for j in 0..cols {
        let mut e = vec![Q::zero(); cols];
        e[j] = q(1);
        for (i, x) in map(&e).into_iter().enumerate() {
            m[i][j] = x;
        }
    }
    m
}

/// Rank by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        let pivot_row: Vec<Q> = rows[r].iter().map(|x| x / &piv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

pub fn coboundary_rank(a: &OAlg, m: &OMod, n: usize) -> usize {
    let cols = pow(a.d, n) * m.dm;
    let rows = pow(a.d, n + 1) * m.dm;
    rank(matrix_of(cols, rows, |f| delta(a, m, n, f)))
}

/// `(dim Z^n, dim B^n, dim H^n)` of `C^*(A; M)` without a group.
pub fn hochschild_dims(a: &OAlg, m: &OMod, n: usize) -> (usize, usize, usize) {
    let dim = pow(a.d, n) * m.dm;
    let out = coboundary_rank(a, m, n);
    let inc = if n == 0 { 0 } else { coboundary_rank(a, m, n - 1) };
    (dim - out, inc, dim - out - inc)
}

/// The morphism complex `C^n(A;A) ⊕ C^n(B;B) ⊕ C^{n-1}(A;B)` with `C^0 = 0`.
pub struct OMorphism {
    pub a: OAlg,
    pub b: OAlg,
    pub phi: Vec<Vec<Q>>,
}

impl OMorphism {
    fn sizes(&self, n: usize) -> [usize; 3] {
        if n == 0 {
            return [0, 0, 0];
        }
        let (da, db) = (self.a.d, self.b.d);
        [pow(da, n) * da, pow(db, n) * db, pow(da, n - 1) * db]
    }

    pub fn d(&self, n: usize, x: &[Q]) -> Vec<Q> {
        let [su, sv, _] = self.sizes(n);
        let (u, rest) = x.split_at(su);
        let (v, w) = rest.split_at(sv);
        let (da, db) = (self.a.d, self.b.d);
        let ma = OMod::regular(&self.a);
        let mb = OMod::regular(&self.b);
        let mab = OMod::induced(&self.a, &self.b, &self.phi);
        let mut out = delta(&self.a, &ma, n, u);
        out.extend(delta(&self.b, &mb, n, v));
        let dw = delta(&self.a, &mab, n - 1, w);
        for t in 0..pow(da, n) {
            let xs = tuple(t, da, n);
            // φ(u(x))
            let ux = value(u, &xs, da, da);
            let mut acc: Vec<Q> = (0..db).map(|r| (0..da).map(|i| &self.phi[r][i] * &ux[i]).sum()).collect();
            // v(φ x_1, …, φ x_n)
            for s in 0..pow(db, n) {
                let ys = tuple(s, db, n);
                let mut coef = q(1);
                for (y, xx) in ys.iter().zip(&xs) {
                    coef *= &self.phi[*y][*xx];
                    if coef.is_zero() {
                        break;
                    }
                }
                if coef.is_zero() {
                    continue;
                }
                for (o, vv) in acc.iter_mut().zip(value(v, &ys, db, db)) {
                    *o -= &coef * vv;
                }
            }
            for (k, o) in acc.iter_mut().enumerate() {
                *o -= &dw[t * db + k];
            }
            out.extend(acc);
        }
        out
    }

    fn d_rank(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let cols: usize = self.sizes(n).iter().sum();
        let rows: usize = self.sizes(n + 1).iter().sum();
        rank(matrix_of(cols, rows, |x| self.d(n, x)))
    }

    /// `(dim Z^n, dim B^n, dim H^n)`.
    pub fn dims(&self, n: usize) -> (usize, usize, usize) {
        let dim: usize = self.sizes(n).iter().sum();
        let out = self.d_rank(n);
        let inc = if n == 0 { 0 } else { self.d_rank(n - 1) };
        (dim - out, inc, dim - out - inc)
    }
}
