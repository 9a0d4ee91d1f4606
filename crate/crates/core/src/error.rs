use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length {length} is not supported over base {base}")]
    UnsupportedCombination { length: String, base: String },
    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,
    #[error("operation requires the integers as base ring, got {0}")]
    WrongBase(String),
    #[error("relation {0} is not homogeneous for the declared grading")]
    Inhomogeneous(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Groebner basis computation exceeded its budget of {0} steps")]
    BudgetExceeded(usize),
    #[error("sequence is not rational with the expected denominator: {0}")]
    NotRational(String),
    #[error("sequence did not stabilize: {0}")]
    NotStabilized(String),
    #[error("starting submodule has infinite length")]
    NotLambdaFinite,
    #[error("starting submodule is not inert: the first step has infinite length")]
    NotInert,
    #[error("the zero monomial has no dimension")]
    ZeroMu,
    #[error("input too large for brute force: {0}")]
    TooLarge(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
