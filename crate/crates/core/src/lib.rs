pub mod arith;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod modrepr;
pub mod oracles;
pub mod poly;
pub mod ring;
pub mod slices;
pub mod variants;

pub use error::{Error, Result};
