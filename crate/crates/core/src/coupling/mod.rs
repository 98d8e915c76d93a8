//! Clebsch–Gordan coefficients and passage matrix elements: the Racah
//! oracle, four polar-basis pipelines, the two passage routes and the
//! sign-flip symmetry orbits.

mod calibration;
mod oracle;
mod passage;
mod pipelines;
mod radial;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{parity_sign, ratio, HalfInt, RadicalSum};

pub use calibration::{calibration, Calibration, Pipeline};
pub use oracle::{cg_racah_oracle, oracle_value, threej, threej_value};
pub use passage::{passage_element, symmetry_images_variant, symmetry_orbit, Route, ThreeJLabels};
pub use pipelines::{
    cg_hypergeometric, cg_laguerre_integral, cg_vilenkin, gaunt_cg, gaunt_eval, hypergeometric_eval,
    laguerre_integral_eval, laguerre_integral_key, terminating_3f2, vilenkin_key, vilenkin_sum, Formula, PipelineEval,
};
pub use radial::{radial_selection, RadialSelection};

/// Whether output signs follow the printed phase factors or the
/// calibrated (Condon–Shortley) convention.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum PhaseConvention {
    Printed,
    #[default]
    Calibrated,
}

/// A coupling value with its magnitude, calibrated sign and the raw phase
/// exponent the pipeline reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CGValue {
    #[serde(serialize_with = "serialize_display")]
    pub magnitude: RadicalSum,
    /// −1, 0 or +1, zero exactly when the magnitude is zero.
    pub sign: i8,
    /// Exponent `φ` of the printed phase factor `e^{iπφ}`.
    pub phase_exponent_raw: HalfInt,
    /// Sign of the value before any phase factor.
    pub core_sign: i8,
}

fn serialize_display<S: serde::Serializer>(v: &RadicalSum, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Exact sign of a single-term radical sum.
pub(crate) fn sign_of(v: &RadicalSum) -> Result<i8> {
    v.signum()
        .ok_or_else(|| Error::Consistency(format!("sign of `{v}` is not decidable")))
}

impl CGValue {
    pub fn zero() -> Self {
        CGValue {
            magnitude: RadicalSum::zero(),
            sign: 0,
            phase_exponent_raw: HalfInt::ZERO,
            core_sign: 0,
        }
    }

    /// Value `core · (−1)^applied`, reporting `raw` as the printed exponent.
    pub fn from_core(core: &RadicalSum, raw: HalfInt, applied: i64) -> Result<Self> {
        let core_sign = sign_of(core)?;
        Ok(CGValue {
            magnitude: if core_sign < 0 { -core } else { core.clone() },
            sign: core_sign * parity_sign(applied) as i8,
            phase_exponent_raw: raw,
            core_sign,
        })
    }

    /// A value whose printed phase is already included in its sign.
    pub fn from_value(v: &RadicalSum) -> Result<Self> {
        CGValue::from_core(v, HalfInt::ZERO, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// `sign · magnitude`.
    pub fn value(&self) -> RadicalSum {
        if self.sign < 0 {
            -&self.magnitude
        } else {
            self.magnitude.clone()
        }
    }

    /// The magnitude squared as a rational.
    pub fn squared(&self) -> BigRational {
        self.magnitude.square().as_rational().unwrap_or_else(BigRational::zero)
    }

    /// The value under the printed phase `e^{iπφ}` applied to the core.
    pub fn printed(&self) -> PhasedValue {
        let phi = self.phase_exponent_raw;
        let (k, imaginary) = if phi.is_integer() {
            (phi.twice() / 2, false)
        } else {
            ((phi.twice() - 1) / 2, true)
        };
        let sign = self.core_sign as i64 * parity_sign(k);
        PhasedValue {
            real: self.magnitude.scale(&ratio(sign, 1)),
            imaginary,
        }
    }

    pub fn with_convention(&self, convention: PhaseConvention) -> PhasedValue {
        match convention {
            PhaseConvention::Printed => self.printed(),
            PhaseConvention::Calibrated => PhasedValue {
                real: self.value(),
                imaginary: false,
            },
        }
    }
}

impl fmt::Display for CGValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A real radical value, optionally times `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasedValue {
    pub real: RadicalSum,
    pub imaginary: bool,
}

impl fmt::Display for PhasedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.imaginary && !self.real.is_zero() {
            write!(f, "i*({})", self.real)
        } else {
            write!(f, "{}", self.real)
        }
    }
}

/// `a / b` when both are single terms over the same radicand.
pub fn rational_ratio(a: &RadicalSum, b: &RadicalSum) -> Option<BigRational> {
    let (ca, ra) = a.single_term()?;
    let (cb, rb) = b.single_term()?;
    if cb.is_zero() {
        return None;
    }
    if ca.is_zero() {
        return Some(BigRational::zero());
    }
    (ra == rb).then(|| ca / cb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_phase_rendering() {
        let v = CGValue::from_core(&RadicalSum::from_int(2), HalfInt::from_twice(3), 0).unwrap();
        assert_eq!(v.sign, 1);
        let p = v.printed();
        assert!(p.imaginary);
        assert_eq!(p.to_string(), "i*(-2)");
        let v = CGValue::from_core(&RadicalSum::from_int(-1), HalfInt::from_int(1), 1).unwrap();
        assert_eq!((v.sign, v.core_sign), (1, -1));
        assert_eq!(v.printed().to_string(), "1");
        assert!(CGValue::zero().is_zero());
    }

    #[test]
    fn ratios() {
        let a = RadicalSum::sqrt_of(&ratio(1, 2)).unwrap();
        let b = RadicalSum::sqrt_of(&ratio(2, 1)).unwrap();
        assert_eq!(rational_ratio(&a, &b), Some(ratio(1, 2)));
        assert_eq!(rational_ratio(&a, &RadicalSum::one()), None);
    }
}
