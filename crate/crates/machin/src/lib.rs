//! Exact arithmetic for Machin-like arctangent identities.
//!
//! Everything rigorous in this crate is carried by exact rationals: Gaussian
//! rationals for the direction checks, the quartic field Q(i, sqrt 5) for the
//! golden-section identities, and closed rational intervals (`Enclosure`) for
//! every claim about a real number. Floating point only appears in reported
//! Lehmer measures and approximation columns, never in a proof path.

pub mod catalog;
pub mod exact;
pub mod formula;
pub mod generator;
pub mod golden;
pub mod pi;
pub mod ratfun;

pub mod cli;

pub use exact::{Enclosure, GaussRat, QuarticNum, Rat};
pub use formula::{ArctanTerm, MachinFormula, VerificationReport};
