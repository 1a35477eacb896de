use defcomplex_core::Error;

/// Failures that end a run without a computed result.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// Malformed input, unknown names, size caps. Exit code 3.
    #[error("{0}")]
    Input(String),
    /// Well-formed input whose data violates a structural invariant. Exit code 1.
    #[error("{}", .0.join("; "))]
    Validation(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 3,
            CliError::Validation(_) => 1,
        }
    }

    /// Shape and parse problems are input errors; everything else is a validation failure.
    pub fn from_core(e: Error, at: &str) -> Self {
        let msg = format!("{at}: {e}");
        match e {
            Error::Shape { .. }
            | Error::Parse(_)
            | Error::InvalidModulus(..)
            | Error::FieldMismatch(_)
            | Error::OrderMismatch(..) => CliError::Input(msg),
            Error::Singular
            | Error::GeneratorNotInvertible(_)
            | Error::ClosureExceedsCap(_)
            | Error::ActionNotMultiplicative(_)
            | Error::GroupMismatch(_)
            | Error::Invalid(_)
            | Error::NotVerified { .. }
            | Error::SeedNotCocycle
            | Error::ConstantTermNotInvertible => CliError::Validation(vec![msg]),
        }
    }
}
