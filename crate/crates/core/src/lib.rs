//! Exact symbolic computation with quantum matrix pairs over triangular
//! algebras, their modular action, and the quantum group `GL_q(2)`.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod matrix;
pub mod modular;
pub mod mq2;
pub mod pairs;
pub mod talgebra;

pub use coeff::LaurentScalar;
pub use error::{Error, Result};
pub use matrix::{UTMatrix, Which};
pub use talgebra::{Element, Family, Generator};
