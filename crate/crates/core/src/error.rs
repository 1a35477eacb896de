use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{what}: expected {expected}, found {found}")]
    Shape { what: &'static str, expected: usize, found: usize },
    #[error("{0}")]
    Parse(String),
    #[error("{1}: {0}")]
    InvalidModulus(u64, &'static str),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("matrix is not invertible")]
    Singular,
    #[error("generator {0} not invertible")]
    GeneratorNotInvertible(usize),
    #[error("closure exceeds cap of {0} elements")]
    ClosureExceedsCap(usize),
    #[error("generated map violates multiplicativity on products: {0}")]
    ActionNotMultiplicative(String),
    #[error("group actions do not share one abstract group: {0}")]
    GroupMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("deformation not verified through order {required} (verified to {verified_to:?})")]
    NotVerified { required: usize, verified_to: Option<usize> },
    #[error("seed is not a cocycle")]
    SeedNotCocycle,
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term not invertible")]
    ConstantTermNotInvertible,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_shape(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Shape { what, expected, found })
    }
}
