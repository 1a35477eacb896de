//! Small named algebras and actions used by tests, examples and the CLI.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::deformation::DeformationTriple;
use crate::field::Field;
use crate::group::GroupAction;
use crate::hochschild::Cochain;
use crate::linalg::Matrix;
use crate::morphism::EquivariantMorphism;

fn named<F: Field>(field: &F, names: &[&str], triples: &[(usize, usize, usize, i64)]) -> Algebra<F> {
    Algebra::from_triples(
        field,
        names.iter().map(|s| s.to_string()).collect(),
        triples.iter().map(|&(i, j, k, c)| (i, j, k, field.from_i64(c))),
    )
    .expect("fixture indices in range")
}

/// `k[x]/(x²)` on the basis `1, x`.
pub fn dual_numbers<F: Field>(field: &F) -> Algebra<F> {
    named(field, &["1", "x"], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
}

/// 2×2 matrices on the unit-matrix basis `E11, E12, E21, E22`.
pub fn mat2<F: Field>(field: &F) -> Algebra<F> {
    let mut t = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                // E_ab · E_bd = E_ad
                t.push((2 * a + b, 2 * b + d, 2 * a + d, 1));
            }
        }
    }
    named(field, &["E11", "E12", "E21", "E22"], &t)
}

/// The group algebra `k[Z/2]` on the basis `1, s` with `s² = 1`.
pub fn group_algebra_z2<F: Field>(field: &F) -> Algebra<F> {
    named(field, &["1", "s"], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)])
}

/// Upper-triangular 2×2 matrices on the basis `E11, E12, E22`.
pub fn upper_triangular2<F: Field>(field: &F) -> Algebra<F> {
    named(field, &["E11", "E12", "E22"], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)])
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field<F: Field>(field: &F) -> Algebra<F> {
    named(field, &["1"], &[(0, 0, 0, 1)])
}

/// `k^n` with orthogonal idempotents `e_i`.
pub fn product_of_fields<F: Field>(field: &F, n: usize) -> Algebra<F> {
    let t: Vec<_> = (0..n).map(|i| (i, i, i, 1)).collect();
    let names: Vec<String> = (0..n).map(|i| alloc::format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    named(field, &refs, &t)
}

/// A `d`-dimensional algebra with identically zero product.
pub fn zero_algebra<F: Field>(field: &F, d: usize) -> Algebra<F> {
    Algebra::from_int_triples(field, d, &[]).expect("no entries")
}

/// `diag(1, -1)`: `x ↦ -x` on the dual numbers, `s ↦ -s` on `k[Z/2]`.
pub fn sign_2<F: Field>(field: &F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[1, 0], &[0, -1]])
}

/// Conjugation by `diag(1, -1)` on `mat2`.
pub fn mat2_sign<F: Field>(field: &F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]])
}

/// Conjugation by `diag(1, -1)` on `upper_triangular2`.
pub fn upper_triangular2_sign<F: Field>(field: &F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])
}

/// The augmentation `x ↦ 0` from the dual numbers to the ground field.
pub fn dual_projection<F: Field>(field: &F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[1, 0]])
}

/// The unit map from the ground field into the dual numbers.
pub fn dual_inclusion<F: Field>(field: &F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[1], &[0]])
}

/// The diagonal inclusion `k × k → mat2` onto `E11, E22`.
pub fn diagonal_inclusion<F: Field>(field: &F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]])
}

/// `k[x]/(x² − t)` seen as a deformation of the identity of the dual
/// numbers: `μ_1 = ν_1` with `μ_1(x, x) = 1`, no other terms, order 2.
pub fn def1<F: Field>(field: &F) -> DeformationTriple<F> {
    let a = dual_numbers(field);
    let phi = EquivariantMorphism::identity(a, GroupAction::trivial(field, 2)).expect("square");
    let mut mu1 = Cochain::zero(field, 2, 2, 2);
    mu1.set_value_at(&[1, 1], &[field.one(), field.zero()]);
    let zero = Cochain::zero(field, 2, 2, 2);
    DeformationTriple::new(
        phi,
        alloc::vec![mu1.clone(), zero.clone()],
        alloc::vec![mu1, zero],
        alloc::vec![Matrix::zeros(field, 2, 2); 2],
    )
    .expect("shapes agree")
}
