//! Exact computation engine for eta-quotient Fourier coefficients.
//!
//! The crate has three layers:
//!
//! * **Exact ground truth** — [`qseries`] expands any finite product
//!   ∏ (q^ℓ; q^ℓ)^{δ_ℓ} into an integer power series by sparse pentagonal
//!   passes, giving coefficients and sign sequences that every other layer
//!   is tested against.
//! * **Analytic evaluation** — [`multiplier`] evaluates the eta multiplier
//!   system and its derived character sums exactly (as rational turns),
//!   [`bessel`] provides the two modified Bessel functions with certified
//!   upper/lower bounds, and [`exactformula`] combines them into convergent
//!   coefficient series with rigorous truncation-tail bounds and into the
//!   closed-form main/error terms used for sign certification.
//! * **Certification** — [`certify`] reproduces each case's proof shape
//!   (inequality margins above a threshold, direct expansion below it),
//!   emits machine-checkable certificates, and scans exponent boxes for new
//!   candidates with purely periodic sign patterns.

pub mod arith;
pub mod bessel;
pub mod certify;
pub mod error;
pub mod exactformula;
pub mod multiplier;
pub mod qseries;
pub mod roots;

pub use arith::{FareyArc, Residue};
pub use certify::{Certificate, KnownPatternsReport, ScanConfig, ScanHit};
pub use error::EtaqError;
pub use exactformula::{C3Decomposition, CaseConstants, FormulaResult, QuadratureDiagnostic};
pub use multiplier::KloostermanValue;
pub use qseries::{EtaQuotientSpec, IntSeries, PatternCheck, SignPattern};
pub use roots::RootOfUnity;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, EtaqError>;
