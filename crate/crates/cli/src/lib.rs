//! Library half of the `hlambda` command: problem files, the polynomial
//! text syntax, report rendering and the reproduction table.

pub mod error;
pub mod parse;
pub mod problem;
pub mod report;
pub mod table;

pub use error::CliError;
pub use problem::{Problem, ProblemFile};
