#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod algebra;
pub mod deformation;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod group;
pub mod hochschild;
pub mod linalg;
pub mod morphism;
pub mod morphism_complex;
pub mod rational;

pub use algebra::{Algebra, Bimodule, Validation, Violation};
pub use deformation::DeformationTriple;
pub use error::{Error, Result};
pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use group::GroupAction;
pub use hochschild::{Cochain, CochainComplex, CohomologyResult};
pub use linalg::{Matrix, Subspace};
pub use morphism::EquivariantMorphism;
pub use morphism_complex::{MorphismCochain, MorphismComplex};
pub use rational::Rational;
