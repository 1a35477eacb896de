//! Formal isomorphisms `(Ψ_t, Θ_t)`, conjugation of deformations,
//! trivialization of coboundary infinitesimals and rigidity reports.

use alloc::vec::Vec;

use crate::deformation::{build_from_infinitesimal, BuildOutcome, DeformationTriple};
use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::hochschild::Cochain;
use crate::linalg::{self, Matrix};
use crate::morphism::EquivariantMorphism;
use crate::morphism_complex::{MorphismCochain, MorphismComplex};

/// `Ψ_t = Σ ψ_i t^i` on `A` and `Θ_t = Σ θ_i t^i` on `B`, truncated at
/// order `N`, with `ψ_0 = θ_0 = id`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalIsomorphismPair<F: Field> {
    psi: Vec<Matrix<F>>,
    theta: Vec<Matrix<F>>,
}

impl<F: Field> FormalIsomorphismPair<F> {
    pub fn new(psi: Vec<Matrix<F>>, theta: Vec<Matrix<F>>) -> Result<Self> {
        if psi.is_empty() || theta.is_empty() {
            return Err(Error::Invalid("formal isomorphisms need a constant term".into()));
        }
        if psi.len() != theta.len() {
            return Err(Error::OrderMismatch(psi.len() - 1, theta.len() - 1));
        }
        let (da, db) = (psi[0].rows(), theta[0].rows());
        for m in &psi {
            check_shape("ψ term rows", da, m.rows())?;
            check_shape("ψ term columns", da, m.cols())?;
        }
        for m in &theta {
            check_shape("θ term rows", db, m.rows())?;
            check_shape("θ term columns", db, m.cols())?;
        }
        if !psi[0].is_identity() || !theta[0].is_identity() {
            return Err(Error::Invalid("constant terms ψ_0 and θ_0 must be identities".into()));
        }
        Ok(FormalIsomorphismPair { psi, theta })
    }

    pub fn identity(field: &F, da: usize, db: usize, order: usize) -> Self {
        let mut psi = alloc::vec![Matrix::zeros(field, da, da); order + 1];
        let mut theta = alloc::vec![Matrix::zeros(field, db, db); order + 1];
        psi[0] = Matrix::identity(field, da);
        theta[0] = Matrix::identity(field, db);
        FormalIsomorphismPair { psi, theta }
    }

    /// `(id + ψ t^n, id + θ t^n)` truncated at `order`.
    pub fn elementary(psi_n: &Matrix<F>, theta_n: &Matrix<F>, n: usize, order: usize) -> Result<Self> {
        if n == 0 || n > order {
            return Err(Error::Invalid(alloc::format!("term index {n} outside 1..={order}")));
        }
        let mut p = Self::identity(psi_n.field(), psi_n.rows(), theta_n.rows(), order);
        p.psi[n] = psi_n.clone();
        p.theta[n] = theta_n.clone();
        Self::new(p.psi, p.theta)
    }

    pub fn order(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn psi(&self) -> &[Matrix<F>] {
        &self.psi
    }

    pub fn theta(&self) -> &[Matrix<F>] {
        &self.theta
    }

    /// Whether every `ψ_i` commutes with the action on `A` and every `θ_i`
    /// with the action on `B`.
    pub fn is_equivariant(&self, phi: &EquivariantMorphism<F>) -> Result<bool> {
        let (ga, gb) = (phi.source_action(), phi.target_action());
        for p in &self.psi {
            if !ga.intertwines(ga, p)? {
                return Ok(false);
            }
        }
        for t in &self.theta {
            if !gb.intertwines(gb, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(Ψ_t^{-1}, Θ_t^{-1})` truncated at the same order.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        Self::new(truncated_inverse(&self.psi, n)?, truncated_inverse(&self.theta, n)?)
    }

    /// `(Ψ Ψ', Θ Θ')`: conjugating by `other` then by `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let n = self.order();
        Self::new(compose_series(&self.psi, &other.psi, n)?, compose_series(&self.theta, &other.theta, n)?)
    }
}

/// Inverse of `Σ a_i t^i` modulo `t^{N+1}`.
pub fn truncated_inverse<F: Field>(series: &[Matrix<F>], n: usize) -> Result<Vec<Matrix<F>>> {
    let a0 = series.first().ok_or(Error::ConstantTermNotInvertible)?;
    let inv0 = a0.inverse().map_err(|_| Error::ConstantTermNotInvertible)?;
    let f = a0.field();
    let d = a0.rows();
    let mut out: Vec<Matrix<F>> = Vec::with_capacity(n + 1);
    out.push(inv0.clone());
    for r in 1..=n {
        let mut acc = Matrix::zeros(f, d, d);
        for i in 1..=r.min(series.len() - 1) {
            acc = acc.add(&series[i].mul(&out[r - i])?)?;
        }
        out.push(inv0.mul(&acc)?.neg());
    }
    Ok(out)
}

/// Product of two series modulo `t^{N+1}`: `(AB)_r = Σ_{i+j=r} A_i B_j`.
pub fn compose_series<F: Field>(a: &[Matrix<F>], b: &[Matrix<F>], n: usize) -> Result<Vec<Matrix<F>>> {
    let (Some(a0), Some(b0)) = (a.first(), b.first()) else {
        return Err(Error::Invalid("empty series".into()));
    };
    let f = a0.field();
    let mut out = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let mut acc = Matrix::zeros(f, a0.rows(), b0.cols());
        for i in 0..=r {
            if let (Some(x), Some(y)) = (a.get(i), b.get(r - i)) {
                acc = acc.add(&x.mul(y)?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn require_compatible<F: Field>(d: &DeformationTriple<F>, p: &FormalIsomorphismPair<F>) -> Result<()> {
    if d.order() != p.order() {
        return Err(Error::OrderMismatch(d.order(), p.order()));
    }
    check_shape("ψ size", d.morphism().source().dim(), p.psi[0].rows())?;
    check_shape("θ size", d.morphism().target().dim(), p.theta[0].rows())
}

/// `Σ_{a+b+c+e=r} s_a ∘ m_b ∘ (s⁻¹_c ⊗ s⁻¹_e)` for `r = 1..=N`.
fn conjugate_products<F: Field>(
    terms: &dyn Fn(usize) -> Cochain<F>,
    s: &[Matrix<F>],
    s_inv: &[Matrix<F>],
    n: usize,
) -> Result<Vec<Cochain<F>>> {
    let mut out = Vec::with_capacity(n);
    for r in 1..=n {
        let mut acc: Option<Cochain<F>> = None;
        for b in 0..=r {
            let mb = terms(b);
            if mb.is_zero() {
                continue;
            }
            for c in 0..=r - b {
                for e in 0..=r - b - c {
                    let a = r - b - c - e;
                    let term = mb.precompose(&[&s_inv[c], &s_inv[e]])?.postcompose(&s[a])?;
                    acc = Some(match acc {
                        None => term,
                        Some(x) => x.add(&term)?,
                    });
                }
            }
        }
        out.push(acc.unwrap_or_else(|| terms(0).scale(&terms(0).field().zero())));
    }
    Ok(out)
}

/// `μ̃_t = Ψ μ_t (Ψ⁻¹ ⊗ Ψ⁻¹)`, `ν̃_t = Θ ν_t (Θ⁻¹ ⊗ Θ⁻¹)`, `φ̃_t = Θ φ_t Ψ⁻¹`.
pub fn conjugate<F: Field>(d: &DeformationTriple<F>, p: &FormalIsomorphismPair<F>) -> Result<DeformationTriple<F>> {
    require_compatible(d, p)?;
    if !p.is_equivariant(d.morphism())? {
        return Err(Error::Invalid("formal isomorphism is not equivariant".into()));
    }
    let n = d.order();
    let inv = p.inverse()?;
    let mu = conjugate_products(&|i| d.mu_term(i), &p.psi, &inv.psi, n)?;
    let nu = conjugate_products(&|i| d.nu_term(i), &p.theta, &inv.theta, n)?;
    let f = d.morphism().field();
    let (da, db) = (d.morphism().source().dim(), d.morphism().target().dim());
    let mut phi = Vec::with_capacity(n);
    for r in 1..=n {
        let mut acc = Matrix::zeros(f, db, da);
        for a in 0..=r {
            for b in 0..=r - a {
                let c = r - a - b;
                acc = acc.add(&p.theta[a].mul(d.phi_term(b))?.mul(&inv.psi[c])?)?;
            }
        }
        phi.push(acc);
    }
    DeformationTriple::new(d.morphism().clone(), mu, nu, phi)
}

/// Whether `p` carries `d1` to `d2` through their common order:
/// `Ψ μ = μ̃ (Ψ ⊗ Ψ)`, `Θ ν = ν̃ (Θ ⊗ Θ)` and `φ̃_t Ψ_t = Θ_t φ_t`.
pub fn is_equivalence<F: Field>(
    p: &FormalIsomorphismPair<F>,
    d1: &DeformationTriple<F>,
    d2: &DeformationTriple<F>,
) -> Result<bool> {
    require_compatible(d1, p)?;
    require_compatible(d2, p)?;
    if d1.morphism() != d2.morphism() {
        return Err(Error::Invalid("deformations of different morphisms".into()));
    }
    let n = d1.order();
    let intertwines =
        |lhs: &dyn Fn(usize) -> Cochain<F>, rhs: &dyn Fn(usize) -> Cochain<F>, s: &[Matrix<F>]| -> Result<bool> {
            for r in 0..=n {
                let mut diff = lhs(0).scale(&lhs(0).field().zero());
                for a in 0..=r {
                    diff = diff.add(&lhs(r - a).postcompose(&s[a])?)?;
                }
                for b in 0..=r {
                    for c in 0..=r - b {
                        let e = r - b - c;
                        diff = diff.sub(&rhs(b).precompose(&[&s[c], &s[e]])?)?;
                    }
                }
                if !diff.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
    if !intertwines(&|i| d1.mu_term(i), &|i| d2.mu_term(i), &p.psi)? {
        return Ok(false);
    }
    if !intertwines(&|i| d1.nu_term(i), &|i| d2.nu_term(i), &p.theta)? {
        return Ok(false);
    }
    let lhs = compose_series(&phi_series(d2), &p.psi, n)?;
    let rhs = compose_series(&p.theta, &phi_series(d1), n)?;
    Ok(lhs == rhs)
}

fn phi_series<F: Field>(d: &DeformationTriple<F>) -> Vec<Matrix<F>> {
    (0..=d.order()).map(|i| d.phi_term(i).clone()).collect()
}

/// Whether the first-order coefficients of `d1` and `d2` differ by a
/// coboundary `d(ψ, θ, m)`.
pub fn infinitesimal_class_compare<F: Field>(d1: &DeformationTriple<F>, d2: &DeformationTriple<F>) -> Result<bool> {
    if d1.morphism() != d2.morphism() {
        return Err(Error::Invalid("deformations of different morphisms".into()));
    }
    for d in [d1, d2] {
        if !d.verified_to().is_some_and(|v| v >= 1) {
            return Err(Error::NotVerified { required: 1, verified_to: d.verified_to() });
        }
    }
    let diff = d1.coefficient(1).sub(&d2.coefficient(1))?;
    Ok(MorphismComplex::new(d1.morphism()).coboundary_preimage(&diff)?.is_some())
}

/// One trivialization step.
#[derive(Debug, Clone, PartialEq)]
pub enum TrivializeStep<F: Field> {
    /// All coefficients are already zero.
    Trivial,
    /// `reduced = conjugate(input, pair)` has zero coefficients through `order`.
    Reduced { order: usize, reduced: DeformationTriple<F>, pair: FormalIsomorphismPair<F> },
    /// The `order`-infinitesimal is not a coboundary.
    NotCoboundary { order: usize, infinitesimal: MorphismCochain<F>, rank: usize, augmented_rank: usize },
}

/// Writes the `n`-infinitesimal as `d(ψ, θ, m)`, moves `m` into
/// `θ' = θ + δ⁰_B m`, and conjugates by `(id + ψ tⁿ, id + θ' tⁿ)`.
pub fn trivialize_step<F: Field>(d: &DeformationTriple<F>) -> Result<TrivializeStep<F>> {
    if !d.is_verified() {
        return Err(Error::NotVerified { required: d.order(), verified_to: d.verified_to() });
    }
    let Some((n, c)) = d.infinitesimal() else {
        return Ok(TrivializeStep::Trivial);
    };
    let cx = MorphismComplex::new(d.morphism());
    let Some(pre) = cx.coboundary_preimage(&c)? else {
        let below = cx.invariant_space(1);
        let m = cx.d_matrix_full(&below);
        let (rank, augmented_rank) = linalg::rank_certificate(&m, &c.flat())?;
        return Ok(TrivializeStep::NotCoboundary { order: n, infinitesimal: c, rank, augmented_rank });
    };
    let psi = pre.u.to_linear_map()?;
    let m = Cochain::constant(d.morphism().field(), d.morphism().target().dim(), pre.w.coeffs().to_vec());
    let dm = cx.target_complex().coboundary_apply(&m)?.to_linear_map()?;
    let theta = pre.v.to_linear_map()?.add(&dm)?;
    let pair = FormalIsomorphismPair::elementary(&psi, &theta, n, d.order())?;
    let reduced = conjugate(d, &pair)?;
    Ok(TrivializeStep::Reduced { order: n, reduced, pair })
}

/// Outcome of iterating [`trivialize_step`].
#[derive(Debug, Clone, PartialEq)]
pub struct Trivialization<F: Field> {
    /// The last deformation reached.
    pub reduced: DeformationTriple<F>,
    /// Composite pair with `reduced = conjugate(input, pair)`.
    pub pair: FormalIsomorphismPair<F>,
    /// Orders of the infinitesimals removed, in sequence.
    pub steps: Vec<usize>,
    /// `Some(n)` when stopped at a non-coboundary `n`-infinitesimal.
    pub blocked_at: Option<usize>,
}

impl<F: Field> Trivialization<F> {
    pub fn is_trivial(&self) -> bool {
        self.blocked_at.is_none()
    }
}

pub fn trivialize<F: Field>(d: &DeformationTriple<F>) -> Result<Trivialization<F>> {
    let phi = d.morphism();
    let mut pair = FormalIsomorphismPair::identity(phi.field(), phi.source().dim(), phi.target().dim(), d.order());
    let mut cur = d.clone();
    let mut steps = Vec::new();
    loop {
        match trivialize_step(&cur)? {
            TrivializeStep::Trivial => return Ok(Trivialization { reduced: cur, pair, steps, blocked_at: None }),
            TrivializeStep::Reduced { order, reduced, pair: p } => {
                pair = p.compose(&pair)?;
                steps.push(order);
                cur = reduced;
            }
            TrivializeStep::NotCoboundary { order, .. } => {
                return Ok(Trivialization { reduced: cur, pair, steps, blocked_at: Some(order) })
            }
        }
    }
}

/// Probe of one second-cohomology representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    /// Highest order the builder reached from this seed.
    pub reached_order: usize,
    /// Order at which extension was obstructed, if any.
    pub obstructed_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    /// `dim H²_G(φ, φ)`
    pub h2: usize,
    /// `h2 == 0`. A positive `h2` is not a proof of non-rigidity.
    pub rigid_sufficient: bool,
    /// `[dim H²_G(A,A), dim H²_G(B,B), dim H¹_G(A,B)]`
    pub ingredient_route: [usize; 3],
    /// All three ingredients vanish.
    pub ingredient_rigid: bool,
    /// Informational: how far each representative of `H²` extends.
    pub probes: Vec<ProbeResult>,
}

pub fn rigidity_report<F: Field>(phi: &EquivariantMorphism<F>, probe_order: usize) -> Result<RigidityReport> {
    let cx = MorphismComplex::new(phi);
    let h = cx.cohomology(2)?;
    let ingredient_route = [
        cx.source_complex().equivariant_cohomology(2).betti,
        cx.target_complex().equivariant_cohomology(2).betti,
        cx.mixed_complex().equivariant_cohomology(1).betti,
    ];
    let mut probes = Vec::new();
    if probe_order > 0 {
        for rep in &h.representatives {
            let probe = match build_from_infinitesimal(phi, rep, probe_order)? {
                BuildOutcome::Built(d) => ProbeResult { reached_order: d.order(), obstructed_at: None },
                BuildOutcome::Obstructed { partial, certificate } => {
                    ProbeResult { reached_order: partial.order(), obstructed_at: Some(certificate.order) }
                }
            };
            probes.push(probe);
        }
    }
    Ok(RigidityReport {
        h2: h.betti,
        rigid_sufficient: h.betti == 0,
        ingredient_route,
        ingredient_rigid: ingredient_route.iter().all(|&x| x == 0),
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::fixtures;
    use crate::group::GroupAction;

    fn dual_identity() -> EquivariantMorphism<Rationals> {
        let f = Rationals;
        EquivariantMorphism::identity(fixtures::dual_numbers(&f), GroupAction::trivial(&f, 2)).unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let f = Rationals;
        let psi = Matrix::from_i64(&f, &[&[0, 1], &[0, 3]]);
        let series = alloc::vec![Matrix::identity(&f, 2), psi.clone()];
        let inv = truncated_inverse(&series, 3).unwrap();
        assert_eq!(inv[1], psi.neg());
        assert_eq!(inv[2], psi.mul(&psi).unwrap());
        assert_eq!(inv[3], psi.pow(3).unwrap().neg());
        let id = compose_series(&series, &inv, 3).unwrap();
        assert!(id[0].is_identity() && id[1..].iter().all(Matrix::is_zero));
        let singular = alloc::vec![Matrix::zeros(&f, 2, 2)];
        assert_eq!(truncated_inverse(&singular, 1), Err(Error::ConstantTermNotInvertible));
    }

    #[test]
    fn identity_pair_is_neutral() {
        let f = Rationals;
        let d = fixtures::def1(&f);
        let p = FormalIsomorphismPair::identity(&f, 2, 2, 2);
        assert_eq!(conjugate(&d, &p).unwrap(), d);
        assert!(is_equivalence(&p, &d, &d).unwrap());
    }

    #[test]
    fn conjugating_trivial_gives_coboundary() {
        let f = Rationals;
        let phi = dual_identity();
        let triv = DeformationTriple::trivial(&phi, 2).unwrap();
        let psi = Matrix::from_i64(&f, &[&[0, 0], &[0, 1]]);
        let p = FormalIsomorphismPair::elementary(&psi, &Matrix::zeros(&f, 2, 2), 1, 2).unwrap();
        let d = conjugate(&triv, &p).unwrap();
        assert!(d.is_verified());
        assert!(is_equivalence(&p, &triv, &d).unwrap());
        assert!(infinitesimal_class_compare(&triv, &d).unwrap());
        let (n, c) = d.infinitesimal().unwrap();
        assert_eq!(n, 1);
        // First-order change is −d(ψ, 0, 0).
        let cx = MorphismComplex::new(&phi);
        let gen = cx
            .cochain(1, Cochain::from_linear_map(&psi), Cochain::zero(&f, 1, 2, 2), Cochain::zero(&f, 0, 2, 2))
            .unwrap();
        let dpsi = cx.d_apply(&gen).unwrap();
        assert!(c
            .sub(&MorphismCochain { degree: 2, u: dpsi.u.neg(), v: dpsi.v.neg(), w: dpsi.w.neg() })
            .unwrap()
            .is_zero());
        let t = trivialize(&d).unwrap();
        assert!(t.is_trivial());
        assert!(t.reduced.mu().iter().all(Cochain::is_zero));
        assert!(t.reduced.phi().iter().all(Matrix::is_zero));
    }

    #[test]
    fn def1_is_not_trivial() {
        let f = Rationals;
        let d = fixtures::def1(&f);
        let triv = DeformationTriple::trivial(d.morphism(), 2).unwrap();
        assert!(!infinitesimal_class_compare(&d, &triv).unwrap());
        match trivialize_step(&d).unwrap() {
            TrivializeStep::NotCoboundary { order, rank, augmented_rank, .. } => {
                assert_eq!(order, 1);
                assert!(augmented_rank > rank);
            }
            other => panic!("expected a nonzero class, got {other:?}"),
        }
    }

    #[test]
    fn normalization_identity() {
        // (δ⁰_B m) ∘ φ = δ⁰_{A,B} m for the projection of the dual numbers.
        let f = Rationals;
        let a = fixtures::dual_numbers(&f);
        let b = fixtures::dual_numbers(&f);
        let phi = EquivariantMorphism::new(
            a,
            GroupAction::trivial(&f, 2),
            b,
            GroupAction::trivial(&f, 2),
            Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]),
        )
        .unwrap();
        let cx = MorphismComplex::new(&phi);
        for m in [alloc::vec![f.one(), f.zero()], alloc::vec![f.from_i64(2), f.from_i64(-3)]] {
            let c = Cochain::constant(&f, 2, m);
            let lhs = cx.target_complex().coboundary_apply(&c).unwrap().precompose_all(phi.matrix()).unwrap();
            let rhs = cx.mixed_complex().coboundary_apply(&c).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rigidity_examples() {
        let f = Rationals;
        let mat = EquivariantMorphism::identity(fixtures::mat2(&f), GroupAction::trivial(&f, 4)).unwrap();
        let r = rigidity_report(&mat, 0).unwrap();
        assert_eq!((r.h2, r.rigid_sufficient), (0, true));
        let r = rigidity_report(&dual_identity(), 2).unwrap();
        assert!(r.h2 >= 1 && !r.rigid_sufficient);
        assert_eq!(r.probes.len(), r.h2);
        let k = EquivariantMorphism::identity(fixtures::ground_field(&f), GroupAction::trivial(&f, 1)).unwrap();
        let r = rigidity_report(&k, 1).unwrap();
        assert_eq!((r.h2, r.ingredient_route, r.rigid_sufficient), (0, [0, 0, 0], true));
    }
}
