use thiserror::Error;

use crate::talgebra::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("BetaExponent: a beta generator cannot be raised to the power {0}")]
    BetaExponent(i64),

    #[error("BetaDegreeExceeded: product has a monomial of beta-degree 2 or more")]
    BetaDegreeExceeded,

    #[error("NonReducible: no defining relation applies to {0}")]
    NonReducible(String),

    #[error("FamilyMismatch: operands belong to type {0} and type {1}")]
    FamilyMismatch(Family, Family),

    #[error("NonInvertibleEntry: {0} is not a unit monomial")]
    NonInvertibleEntry(String),

    #[error("NonUnitScalar: {0} is not an invertible monomial scalar")]
    NonUnitScalar(String),

    #[error("UnsupportedTransform: type {family} admits only (n,0,0,n), got ({n},{m},{s},{t})")]
    UnsupportedTransform {
        family: Family,
        n: i64,
        m: i64,
        s: i64,
        t: i64,
    },

    #[error("UnsupportedFamily: the modular action is defined for types I and II, not {0}")]
    UnsupportedFamily(Family),

    #[error("CorrespondenceBroken: {0}")]
    CorrespondenceBroken(String),

    #[error("ParseError at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
