//! The deformation complex of an equivariant morphism `φ: A → B`:
//! `C^n(φ) = C^n_G(A;A) ⊕ C^n_G(B;B) ⊕ C^{n-1}_G(A;B)` with
//! `d(u, v, w) = (δu, δv, φ∘u − v∘φ^{⊗n} − δw)`.
//!
//! `B` is an `A`-bimodule through `φ`. The bottom group `C^0(φ)` is zero, so
//! `H^1(φ)` has no coboundaries, while the `w`-slot of a degree-1 cochain is
//! an invariant vector of `B`.

use alloc::vec::Vec;

use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::hochschild::{Cochain, CochainComplex};
use crate::linalg::{self, Matrix, Subspace};
use crate::morphism::EquivariantMorphism;

#[derive(Debug, Clone, PartialEq)]
pub struct MorphismCochain<F: Field> {
    pub degree: usize,
    pub u: Cochain<F>,
    pub v: Cochain<F>,
    pub w: Cochain<F>,
}

impl<F: Field> MorphismCochain<F> {
    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero() && self.w.is_zero()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_shape("morphism cochain degree", self.degree, other.degree)?;
        Ok(MorphismCochain {
            degree: self.degree,
            u: self.u.sub(&other.u)?,
            v: self.v.sub(&other.v)?,
            w: self.w.sub(&other.w)?,
        })
    }

    /// All coefficients, `u` then `v` then `w`.
    pub fn flat(&self) -> Vec<F::Elem> {
        let mut out = self.u.coeffs().to_vec();
        out.extend_from_slice(self.v.coeffs());
        out.extend_from_slice(self.w.coeffs());
        out
    }
}

/// Invariant bases of the three summands in one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleSpace<F: Field> {
    pub degree: usize,
    pub u: Subspace<F>,
    pub v: Subspace<F>,
    pub w: Subspace<F>,
}

impl<F: Field> TripleSpace<F> {
    pub fn dim(&self) -> usize {
        self.u.dim() + self.v.dim() + self.w.dim()
    }

    /// Coordinates of an invariant triple; assumes invariance.
    pub fn coordinates_unchecked(&self, c: &MorphismCochain<F>) -> Vec<F::Elem> {
        let mut out = self.u.coordinates_unchecked(c.u.coeffs());
        out.extend(self.v.coordinates_unchecked(c.v.coeffs()));
        out.extend(self.w.coordinates_unchecked(c.w.coeffs()));
        out
    }

    /// Coordinates, or `None` when some component is not invariant.
    pub fn coordinates(&self, c: &MorphismCochain<F>) -> Option<Vec<F::Elem>> {
        let mut out = self.u.coordinates(c.u.coeffs())?;
        out.extend(self.v.coordinates(c.v.coeffs())?);
        out.extend(self.w.coordinates(c.w.coeffs())?);
        Some(out)
    }
}

/// The complex attached to one morphism, with its three Hochschild pieces.
#[derive(Debug, Clone)]
pub struct MorphismComplex<F: Field> {
    phi: EquivariantMorphism<F>,
    a: CochainComplex<F>,
    b: CochainComplex<F>,
    ab: CochainComplex<F>,
}

impl<F: Field> MorphismComplex<F> {
    pub fn new(phi: &EquivariantMorphism<F>) -> Self {
        let a = CochainComplex::regular(phi.source(), phi.source_action()).expect("validated on construction");
        let b = CochainComplex::regular(phi.target(), phi.target_action()).expect("validated on construction");
        let ab = CochainComplex::new(
            phi.source().clone(),
            phi.induced_bimodule(),
            phi.source_action().clone(),
            phi.target_action().clone(),
        )
        .expect("validated on construction");
        MorphismComplex { phi: phi.clone(), a, b, ab }
    }

    pub fn morphism(&self) -> &EquivariantMorphism<F> {
        &self.phi
    }

    pub fn field(&self) -> &F {
        self.phi.field()
    }

    /// `C^*(A; A)`
    pub fn source_complex(&self) -> &CochainComplex<F> {
        &self.a
    }

    /// `C^*(B; B)`
    pub fn target_complex(&self) -> &CochainComplex<F> {
        &self.b
    }

    /// `C^*(A; B)` through `φ`.
    pub fn mixed_complex(&self) -> &CochainComplex<F> {
        &self.ab
    }

    pub fn zero(&self, n: usize) -> MorphismCochain<F> {
        assert!(n >= 1, "morphism cochains start in degree 1");
        MorphismCochain {
            degree: n,
            u: self.a.zero_cochain(n),
            v: self.b.zero_cochain(n),
            w: self.ab.zero_cochain(n - 1),
        }
    }

    pub fn cochain(&self, n: usize, u: Cochain<F>, v: Cochain<F>, w: Cochain<F>) -> Result<MorphismCochain<F>> {
        if n == 0 {
            return Err(Error::Invalid("morphism cochains start in degree 1".into()));
        }
        let z = self.zero(n);
        for (what, got, want) in [("u", &u, &z.u), ("v", &v, &z.v), ("w", &w, &z.w)] {
            if got.degree() != want.degree() || got.arg_dim() != want.arg_dim() || got.value_dim() != want.value_dim() {
                return Err(Error::Invalid(alloc::format!(
                    "component {what} of a degree-{n} cochain has shape (degree {}, {}→{}), expected (degree {}, {}→{})",
                    got.degree(),
                    got.arg_dim(),
                    got.value_dim(),
                    want.degree(),
                    want.arg_dim(),
                    want.value_dim()
                )));
            }
        }
        Ok(MorphismCochain { degree: n, u, v, w })
    }

    fn check(&self, c: &MorphismCochain<F>) -> Result<()> {
        self.cochain(c.degree, c.u.clone(), c.v.clone(), c.w.clone()).map(|_| ())
    }

    pub fn is_invariant(&self, c: &MorphismCochain<F>) -> Result<bool> {
        self.check(c)?;
        Ok(self.a.is_invariant(&c.u)? && self.b.is_invariant(&c.v)? && self.ab.is_invariant(&c.w)?)
    }

    /// `d(u, v, w) = (δu, δv, φ∘u − v∘φ^{⊗n} − δw)`
    pub fn d_apply(&self, c: &MorphismCochain<F>) -> Result<MorphismCochain<F>> {
        self.check(c)?;
        let phi = self.phi.matrix();
        let third = c.u.postcompose(phi)?.sub(&c.v.precompose_all(phi)?)?.sub(&self.ab.coboundary_apply(&c.w)?)?;
        Ok(MorphismCochain {
            degree: c.degree + 1,
            u: self.a.coboundary_apply(&c.u)?,
            v: self.b.coboundary_apply(&c.v)?,
            w: third,
        })
    }

    pub fn invariant_space(&self, n: usize) -> TripleSpace<F> {
        assert!(n >= 1, "morphism cochains start in degree 1");
        TripleSpace {
            degree: n,
            u: self.a.invariant_subspace(n),
            v: self.b.invariant_subspace(n),
            w: self.ab.invariant_subspace(n - 1),
        }
    }

    /// The triple with invariant coordinates `x`.
    pub fn embed(&self, space: &TripleSpace<F>, x: &[F::Elem]) -> Result<MorphismCochain<F>> {
        check_shape("coordinate count", space.dim(), x.len())?;
        let (ku, kv) = (space.u.dim(), space.v.dim());
        let n = space.degree;
        let u = self.a.cochain(n, space.u.embed(&x[..ku])?)?;
        let v = self.b.cochain(n, space.v.embed(&x[ku..ku + kv])?)?;
        let w = self.ab.cochain(n - 1, space.w.embed(&x[ku + kv..])?)?;
        Ok(MorphismCochain { degree: n, u, v, w })
    }

    fn basis(&self, space: &TripleSpace<F>) -> Vec<MorphismCochain<F>> {
        let f = self.field();
        (0..space.dim())
            .map(|j| {
                let mut x = alloc::vec![f.zero(); space.dim()];
                x[j] = f.one();
                self.embed(space, &x).expect("sized")
            })
            .collect()
    }

    /// Basis of the invariant degree-`n` cochains.
    pub fn invariant_basis(&self, n: usize) -> Vec<MorphismCochain<F>> {
        self.basis(&self.invariant_space(n))
    }

    fn d_columns(&self, domain: &TripleSpace<F>) -> Vec<MorphismCochain<F>> {
        self.basis(domain).iter().map(|c| self.d_apply(c).expect("shapes agree")).collect()
    }

    /// `d^n` between invariant coordinates of degrees `n` and `n + 1`, with
    /// block layout `[[δ_A, 0, 0], [0, δ_B, 0], [φ∘−, −(−∘φ^{⊗n}), −δ_{A,B}]]`.
    pub fn d_matrix(&self, n: usize) -> Matrix<F> {
        self.d_matrix_between(&self.invariant_space(n), &self.invariant_space(n + 1))
    }

    pub fn d_matrix_between(&self, domain: &TripleSpace<F>, codomain: &TripleSpace<F>) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> =
            self.d_columns(domain).iter().map(|c| codomain.coordinates_unchecked(c)).collect();
        Matrix::from_columns(self.field(), codomain.dim(), &cols).expect("sized")
    }

    /// `d^n` from invariant coordinates into the full coefficient space of
    /// degree `n + 1` (no invariant basis of the target needed).
    pub fn d_matrix_full(&self, domain: &TripleSpace<F>) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = self.d_columns(domain).iter().map(MorphismCochain::flat).collect();
        let height = self.zero(domain.degree + 1).flat().len();
        Matrix::from_columns(self.field(), height, &cols).expect("sized")
    }

    /// `H^n_G(φ, φ)` for `n ≥ 1`; representatives are returned as triples.
    pub fn cohomology(&self, n: usize) -> Result<MorphismCohomology<F>> {
        if n == 0 {
            return Err(Error::Invalid("morphism cohomology starts in degree 1".into()));
        }
        let f = self.field();
        let here = self.invariant_space(n);
        let outgoing = self.d_matrix_full(&here);
        let incoming = if n == 1 {
            Matrix::zeros(f, here.dim(), 0)
        } else {
            self.d_matrix_between(&self.invariant_space(n - 1), &here)
        };
        let h = linalg::homology(&outgoing, &incoming)?;
        let representatives = h.representatives.iter().map(|x| self.embed(&here, x).expect("sized")).collect();
        Ok(MorphismCohomology {
            degree: n,
            dim_cochains: here.dim(),
            dim_cocycles: h.cocycles.dim(),
            dim_coboundaries: h.coboundaries.dim(),
            betti: h.betti(),
            representatives,
        })
    }

    /// Whether an invariant cochain lies in the image of `d^{n-1}`; returns a
    /// preimage in invariant coordinates when it does. Degree 1 has no
    /// coboundaries except zero.
    pub fn coboundary_preimage(&self, c: &MorphismCochain<F>) -> Result<Option<MorphismCochain<F>>> {
        self.check(c)?;
        let n = c.degree;
        if n == 1 {
            return Ok(c.is_zero().then(|| self.zero(1)));
        }
        let below = self.invariant_space(n - 1);
        let m = self.d_matrix_full(&below);
        Ok(linalg::solve_linear(&m, &c.flat())?.map(|x| self.embed(&below, &x).expect("sized")))
    }

    /// Dimensions of `H^n_G(A,A)`, `H^n_G(B,B)`, `H^{n-1}_G(A,B)` together
    /// with the direct value of `H^n_G(φ, φ)`.
    pub fn vanishing_check(&self, n: usize) -> Result<VanishingReport> {
        if n < 2 {
            return Err(Error::Invalid("vanishing check needs degree at least 2".into()));
        }
        let ingredients = [
            self.a.equivariant_cohomology(n).betti,
            self.b.equivariant_cohomology(n).betti,
            self.ab.equivariant_cohomology(n - 1).betti,
        ];
        let direct = self.cohomology(n)?.betti;
        let prediction = ingredients.iter().all(|&x| x == 0).then_some(0);
        Ok(VanishingReport {
            degree: n,
            ingredients,
            prediction,
            direct,
            consistent: prediction.is_none_or(|p| p == direct),
        })
    }
}

/// `H^n_G(φ, φ)` with representative cocycle triples.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphismCohomology<F: Field> {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    pub representatives: Vec<MorphismCochain<F>>,
}

/// Outcome of comparing the vanishing criterion with a direct computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub degree: usize,
    /// `[dim H^n_G(A,A), dim H^n_G(B,B), dim H^{n-1}_G(A,B)]`
    pub ingredients: [usize; 3],
    /// `Some(0)` when all ingredients vanish, `None` when the criterion does not apply.
    pub prediction: Option<usize>,
    pub direct: usize,
    pub consistent: bool,
}
