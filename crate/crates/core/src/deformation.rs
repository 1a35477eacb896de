//! Truncated equivariant deformations `(μ_t, ν_t, φ_t)` of a morphism,
//! their residuals, infinitesimals and obstructions, and order-by-order
//! extension.
//!
//! Order-`r` equations:
//!
//! ```text
//! R1_r(a,b,c) = Σ_{i+j=r} μ_i(μ_j(a,b),c) − μ_i(a,μ_j(b,c))
//! R2_r        = the same with ν
//! R3_r(a,b)   = Σ_{i+j=r} φ_i(μ_j(a,b)) − Σ_{i+j+k=r} ν_i(φ_j a, φ_k b)
//! ```
//!
//! A truncation of order `N` is a deformation when all three vanish for
//! every `r ≤ N` and every coefficient is invariant.

use alloc::vec::Vec;

use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::hochschild::Cochain;
use crate::linalg::{self, Matrix};
use crate::morphism::EquivariantMorphism;
use crate::morphism_complex::{MorphismCochain, MorphismComplex};

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationTriple<F: Field> {
    morphism: EquivariantMorphism<F>,
    mu: Vec<Cochain<F>>,
    nu: Vec<Cochain<F>>,
    phi: Vec<Matrix<F>>,
    verified_to: Option<usize>,
}

/// Residuals of one order, packed as a degree-3 morphism cochain
/// `(R1, R2, R3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderResidual<F: Field> {
    pub order: usize,
    pub residual: MorphismCochain<F>,
    /// Whether the coefficients of index `order` are invariant (always true at 0).
    pub invariant: bool,
}

impl<F: Field> OrderResidual<F> {
    pub fn passed(&self) -> bool {
        self.invariant && self.residual.is_zero()
    }

    /// Nonzero entry counts of `R1`, `R2`, `R3`.
    pub fn nonzero_counts(&self) -> [usize; 3] {
        [self.residual.u.nonzero_count(), self.residual.v.nonzero_count(), self.residual.w.nonzero_count()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport<F: Field> {
    pub orders: Vec<OrderResidual<F>>,
    /// Largest `r` such that every order `≤ r` passes.
    pub verified_to: Option<usize>,
}

impl<F: Field> VerifyReport<F> {
    pub fn passed_through(&self, r: usize) -> bool {
        self.verified_to.is_some_and(|v| v >= r)
    }
}

/// Result of trying to extend by one order.
#[derive(Debug, Clone, PartialEq)]
pub enum Extension<F: Field> {
    Extended(DeformationTriple<F>),
    Obstructed(ObstructionCertificate<F>),
}

/// The obstruction is not a coboundary: `rank [d | Ob] > rank d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionCertificate<F: Field> {
    /// The order that could not be reached.
    pub order: usize,
    pub obstruction: MorphismCochain<F>,
    pub rank: usize,
    pub augmented_rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BuildOutcome<F: Field> {
    Built(DeformationTriple<F>),
    /// Extension failed; `partial` is the deformation reached so far.
    Obstructed {
        partial: DeformationTriple<F>,
        certificate: ObstructionCertificate<F>,
    },
}

impl<F: Field> DeformationTriple<F> {
    /// Builds the truncation `μ_1…μ_N`, `ν_1…ν_N`, `φ_1…φ_N` and verifies it.
    pub fn new(
        morphism: EquivariantMorphism<F>,
        mu: Vec<Cochain<F>>,
        nu: Vec<Cochain<F>>,
        phi: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let n = mu.len();
        check_shape("number of ν terms", n, nu.len())?;
        check_shape("number of φ terms", n, phi.len())?;
        let (da, db) = (morphism.source().dim(), morphism.target().dim());
        for m in &mu {
            check_cochain_shape(m, 2, da, da)?;
        }
        for m in &nu {
            check_cochain_shape(m, 2, db, db)?;
        }
        for p in &phi {
            check_shape("φ term rows", db, p.rows())?;
            check_shape("φ term columns", da, p.cols())?;
        }
        let mut d = DeformationTriple { morphism, mu, nu, phi, verified_to: None };
        d.verified_to = d.verify(n)?.verified_to;
        Ok(d)
    }

    /// The undeformed data `(μ, ν, φ)` carried to order `n` with zero terms.
    pub fn trivial(morphism: &EquivariantMorphism<F>, n: usize) -> Result<Self> {
        let f = morphism.field();
        let (da, db) = (morphism.source().dim(), morphism.target().dim());
        Self::new(
            morphism.clone(),
            (0..n).map(|_| Cochain::zero(f, 2, da, da)).collect(),
            (0..n).map(|_| Cochain::zero(f, 2, db, db)).collect(),
            (0..n).map(|_| Matrix::zeros(f, db, da)).collect(),
        )
    }

    pub fn morphism(&self) -> &EquivariantMorphism<F> {
        &self.morphism
    }

    pub fn order(&self) -> usize {
        self.mu.len()
    }

    pub fn verified_to(&self) -> Option<usize> {
        self.verified_to
    }

    pub fn is_verified(&self) -> bool {
        self.verified_to == Some(self.order())
    }

    pub fn mu(&self) -> &[Cochain<F>] {
        &self.mu
    }

    pub fn nu(&self) -> &[Cochain<F>] {
        &self.nu
    }

    pub fn phi(&self) -> &[Matrix<F>] {
        &self.phi
    }

    /// `μ_i`, with `μ_0` the product of `A`.
    pub fn mu_term(&self, i: usize) -> Cochain<F> {
        if i == 0 {
            product_cochain(self.morphism.source())
        } else {
            self.mu[i - 1].clone()
        }
    }

    /// `ν_i`, with `ν_0` the product of `B`.
    pub fn nu_term(&self, i: usize) -> Cochain<F> {
        if i == 0 {
            product_cochain(self.morphism.target())
        } else {
            self.nu[i - 1].clone()
        }
    }

    /// `φ_i`, with `φ_0 = φ`.
    pub fn phi_term(&self, i: usize) -> &Matrix<F> {
        if i == 0 {
            self.morphism.matrix()
        } else {
            &self.phi[i - 1]
        }
    }

    /// `(μ_i, ν_i, φ_i)` as a degree-2 morphism cochain, `i ≥ 1`.
    pub fn coefficient(&self, i: usize) -> MorphismCochain<F> {
        MorphismCochain {
            degree: 2,
            u: self.mu[i - 1].clone(),
            v: self.nu[i - 1].clone(),
            w: Cochain::from_linear_map(&self.phi[i - 1]),
        }
    }

    /// Same deformation with terms beyond order `n` dropped.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        let n = n.min(self.order());
        Self::new(self.morphism.clone(), self.mu[..n].to_vec(), self.nu[..n].to_vec(), self.phi[..n].to_vec())
    }

    /// Residual sums of order `r`. The flags `skip_top` drop the terms that
    /// contain an index equal to `r` (which gives the obstruction).
    fn residual_sums(&self, cx: &MorphismComplex<F>, r: usize, skip_top: bool) -> Result<MorphismCochain<F>> {
        let mut r1 = cx.source_complex().zero_cochain(3);
        let mut r2 = cx.target_complex().zero_cochain(3);
        let mut r3 = cx.mixed_complex().zero_cochain(2);
        let inner = |i: usize| !skip_top || (i != 0 && i != r);
        for i in (0..=r).filter(|&i| inner(i)) {
            let j = r - i;
            let (mi, mj) = (self.mu_term(i), self.mu_term(j));
            r1 = r1.add(&mi.insert(0, &mj)?)?.sub(&mi.insert(1, &mj)?)?;
            let (ni, nj) = (self.nu_term(i), self.nu_term(j));
            r2 = r2.add(&ni.insert(0, &nj)?)?.sub(&ni.insert(1, &nj)?)?;
            r3 = r3.add(&mj.postcompose(self.phi_term(i))?)?;
        }
        for i in 0..=r {
            for j in 0..=r - i {
                let k = r - i - j;
                // Without the top terms, drop the corners with two zero indices.
                if skip_top && [i, j, k].iter().filter(|&&x| x == 0).count() >= 2 {
                    continue;
                }
                let term = self.nu_term(i).precompose(&[self.phi_term(j), self.phi_term(k)])?;
                r3 = r3.sub(&term)?;
            }
        }
        Ok(MorphismCochain { degree: 3, u: r1, v: r2, w: r3 })
    }

    /// Residuals for every `r ≤ r_max` and invariance of each coefficient.
    pub fn verify(&self, r_max: usize) -> Result<VerifyReport<F>> {
        if r_max > self.order() {
            return Err(Error::Invalid(alloc::format!(
                "cannot verify order {r_max} of a deformation of order {}",
                self.order()
            )));
        }
        let cx = MorphismComplex::new(&self.morphism);
        let mut orders = Vec::with_capacity(r_max + 1);
        let mut verified_to = None;
        let mut ok = true;
        for r in 0..=r_max {
            let residual = self.residual_sums(&cx, r, false)?;
            let invariant = r == 0 || cx.is_invariant(&self.coefficient(r))?;
            let res = OrderResidual { order: r, residual, invariant };
            ok &= res.passed();
            if ok {
                verified_to = Some(r);
            }
            orders.push(res);
        }
        Ok(VerifyReport { orders, verified_to })
    }

    /// Least `n` with `(μ_n, ν_n, φ_n) ≠ 0` and that triple, or `None` when
    /// all coefficients vanish.
    pub fn infinitesimal(&self) -> Option<(usize, MorphismCochain<F>)> {
        (1..=self.order()).map(|i| (i, self.coefficient(i))).find(|(_, c)| !c.is_zero())
    }

    /// Whether the infinitesimal is a `d`-cocycle (vacuously true when zero).
    pub fn infinitesimal_is_cocycle(&self) -> Result<bool> {
        match self.infinitesimal() {
            None => Ok(true),
            Some((_, c)) => Ok(MorphismComplex::new(&self.morphism).d_apply(&c)?.is_zero()),
        }
    }

    fn require_verified(&self) -> Result<()> {
        if self.is_verified() {
            Ok(())
        } else {
            Err(Error::NotVerified { required: self.order(), verified_to: self.verified_to })
        }
    }

    /// `Ob_{N+1}`: the order-`N+1` equations read `d(μ_{N+1}, ν_{N+1}, φ_{N+1}) = Ob_{N+1}`.
    pub fn obstruction(&self) -> Result<MorphismCochain<F>> {
        self.require_verified()?;
        let cx = MorphismComplex::new(&self.morphism);
        let sums = self.residual_sums(&cx, self.order() + 1, true)?;
        // The third sum comes out as −O3.
        Ok(MorphismCochain { degree: 3, u: sums.u, v: sums.v, w: sums.w.neg() })
    }

    pub fn obstruction_is_cocycle(&self) -> Result<bool> {
        let ob = self.obstruction()?;
        Ok(MorphismComplex::new(&self.morphism).d_apply(&ob)?.is_zero())
    }

    /// Appends the canonical solution of `d x = Ob_{N+1}` over invariant
    /// coordinates, or certifies that none exists.
    pub fn extend_one_order(&self) -> Result<Extension<F>> {
        let ob = self.obstruction()?;
        let cx = MorphismComplex::new(&self.morphism);
        let space = cx.invariant_space(2);
        let m = cx.d_matrix_full(&space);
        let b = ob.flat();
        match linalg::solve_linear(&m, &b)? {
            Some(x) => {
                let c = cx.embed(&space, &x)?;
                let mut mu = self.mu.clone();
                let mut nu = self.nu.clone();
                let mut phi = self.phi.clone();
                mu.push(c.u);
                nu.push(c.v);
                phi.push(c.w.to_linear_map()?);
                let next = Self::new(self.morphism.clone(), mu, nu, phi)?;
                debug_assert!(next.is_verified());
                Ok(Extension::Extended(next))
            }
            None => {
                let (rank, augmented_rank) = linalg::rank_certificate(&m, &b)?;
                Ok(Extension::Obstructed(ObstructionCertificate {
                    order: self.order() + 1,
                    obstruction: ob,
                    rank,
                    augmented_rank,
                }))
            }
        }
    }

    /// Iterates [`extend_one_order`](Self::extend_one_order) up to `max_order`.
    pub fn extend_to(&self, max_order: usize) -> Result<BuildOutcome<F>> {
        let mut cur = self.clone();
        while cur.order() < max_order {
            match cur.extend_one_order()? {
                Extension::Extended(next) => cur = next,
                Extension::Obstructed(certificate) => {
                    return Ok(BuildOutcome::Obstructed { partial: cur, certificate })
                }
            }
        }
        Ok(BuildOutcome::Built(cur))
    }
}

/// Starts from an invariant 2-cocycle `(μ_1, ν_1, φ_1)` and extends to `max_order`.
pub fn build_from_infinitesimal<F: Field>(
    morphism: &EquivariantMorphism<F>,
    seed: &MorphismCochain<F>,
    max_order: usize,
) -> Result<BuildOutcome<F>> {
    let cx = MorphismComplex::new(morphism);
    check_shape("seed degree", 2, seed.degree)?;
    if !cx.is_invariant(seed)? || !cx.d_apply(seed)?.is_zero() {
        return Err(Error::SeedNotCocycle);
    }
    if max_order == 0 {
        return DeformationTriple::trivial(morphism, 0).map(BuildOutcome::Built);
    }
    let first = DeformationTriple::new(
        morphism.clone(),
        alloc::vec![seed.u.clone()],
        alloc::vec![seed.v.clone()],
        alloc::vec![seed.w.to_linear_map()?],
    )?;
    first.extend_to(max_order)
}

fn check_cochain_shape<F: Field>(c: &Cochain<F>, degree: usize, arg: usize, value: usize) -> Result<()> {
    check_shape("cochain degree", degree, c.degree())?;
    check_shape("cochain argument dimension", arg, c.arg_dim())?;
    check_shape("cochain value dimension", value, c.value_dim())
}

/// The product of `a` as a degree-2 cochain.
pub fn product_cochain<F: Field>(a: &crate::algebra::Algebra<F>) -> Cochain<F> {
    Cochain::new(a.field(), 2, a.dim(), a.dim(), a.structure().to_vec()).expect("structure has d³ entries")
}
