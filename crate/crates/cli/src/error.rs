use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{line}:{column}: {msg}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("invalid problem: {0}")]
    Problem(String),
    #[error(transparent)]
    Core(#[from] hilbert_lambda::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        use hilbert_lambda::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Problem(_) => 2,
            CliError::Mismatch(_) => 5,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::NotLambdaFinite | E::NotInert => 3,
                E::NotStabilized(_) | E::BudgetExceeded(_) | E::NotRational(_) => 4,
                E::CheckFailed(_) => 5,
                E::InvalidInput(_)
                | E::Shape(_)
                | E::Inhomogeneous(_)
                | E::UnsupportedCombination { .. }
                | E::WrongBase(_) => 2,
                _ => 1,
            },
        }
    }
}
