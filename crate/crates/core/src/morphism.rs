//! Equivariant algebra morphisms.

use alloc::format;

use crate::algebra::{Algebra, Bimodule, Validation, Violation};
use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::group::GroupAction;
use crate::linalg::Matrix;

/// An algebra map `φ: A → B` (a `d_B × d_A` matrix) between algebras acted on
/// by the same finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantMorphism<F: Field> {
    source: Algebra<F>,
    source_action: GroupAction<F>,
    target: Algebra<F>,
    target_action: GroupAction<F>,
    matrix: Matrix<F>,
}

impl<F: Field> EquivariantMorphism<F> {
    /// Checks shapes and that both actions share one group table; the
    /// algebraic conditions are checked by [`check_morphism`].
    pub fn new(
        source: Algebra<F>,
        source_action: GroupAction<F>,
        target: Algebra<F>,
        target_action: GroupAction<F>,
        matrix: Matrix<F>,
    ) -> Result<Self> {
        check_shape("morphism rows", target.dim(), matrix.rows())?;
        check_shape("morphism columns", source.dim(), matrix.cols())?;
        check_shape("source action dimension", source.dim(), source_action.dim())?;
        check_shape("target action dimension", target.dim(), target_action.dim())?;
        source_action.require_same_group(&target_action)?;
        if source.field() != target.field() || source.field() != matrix.field() {
            return Err(Error::FieldMismatch(format!(
                "{} / {} / {}",
                source.field().tag(),
                target.field().tag(),
                matrix.field().tag()
            )));
        }
        Ok(EquivariantMorphism { source, source_action, target, target_action, matrix })
    }

    /// The identity morphism of `a` under `action`.
    pub fn identity(a: Algebra<F>, action: GroupAction<F>) -> Result<Self> {
        let m = Matrix::identity(a.field(), a.dim());
        Self::new(a.clone(), action.clone(), a, action, m)
    }

    pub fn field(&self) -> &F {
        self.source.field()
    }

    pub fn source(&self) -> &Algebra<F> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<F> {
        &self.target
    }

    pub fn source_action(&self) -> &GroupAction<F> {
        &self.source_action
    }

    pub fn target_action(&self) -> &GroupAction<F> {
        &self.target_action
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// `B` as an `A`-bimodule through `φ`.
    pub fn induced_bimodule(&self) -> Bimodule<F> {
        Bimodule::induced(&self.source, &self.target, &self.matrix).expect("shapes checked on construction")
    }

    /// Same data with another matrix (used for the higher terms `φ_t`).
    pub fn with_matrix(&self, matrix: Matrix<F>) -> Result<Self> {
        Self::new(
            self.source.clone(),
            self.source_action.clone(),
            self.target.clone(),
            self.target_action.clone(),
            matrix,
        )
    }
}

/// Multiplicativity on basis pairs and `φ g_A = g_B φ` for every element.
pub fn check_morphism<F: Field>(phi: &EquivariantMorphism<F>) -> Validation {
    let mut report = Validation::default();
    for (i, j) in phi.source.morphism_failures(&phi.target, &phi.matrix) {
        report.push(Violation::MorphismMultiplicative { i, j });
    }
    for g in 0..phi.source_action.order() {
        let lhs = phi.matrix.mul(phi.source_action.element(g)).expect("shapes checked");
        let rhs = phi.target_action.element(g).mul(&phi.matrix).expect("shapes checked");
        if lhs != rhs {
            report.push(Violation::MorphismEquivariance { g });
        }
    }
    report
}
