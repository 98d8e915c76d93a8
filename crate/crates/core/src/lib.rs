//! Exact angular-momentum coupling coefficients through harmonic-oscillator
//! polar bases.

pub mod basis;
pub mod coupling;
pub mod error;
pub mod exact;
pub mod polyn;
pub mod recoupling;
pub mod series;

pub use error::{Error, Result};
