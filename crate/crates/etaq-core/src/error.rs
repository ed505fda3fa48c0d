use thiserror::Error;

/// Errors surfaced by the library.
///
/// Every operation with a nontrivial precondition returns one of these
/// instead of panicking, so the CLI can map them to usage errors.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EtaqError {
    #[error("arguments are not coprime: gcd({a}, {b}) != 1")]
    NotCoprime { a: i128, b: i128 },

    #[error("argument must be odd: {0}")]
    EvenArgument(i128),

    #[error("invalid eta-quotient spec: {0}")]
    InvalidSpec(String),

    #[error("series has non-unit constant term; cannot invert")]
    NonUnitConstant,

    #[error("unsatisfiable constraint: {0}")]
    Unsatisfiable(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("certification failed: {0}")]
    CertificationFailed(String),
}
