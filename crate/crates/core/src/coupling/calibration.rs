//! Per-pipeline sign and scale fixed once against the oracle at a single
//! reference key.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::basis::{map_abs_indices, CGKey, PassageKey};
use crate::exact::{HalfInt, RadicalSum};

use super::oracle::oracle_value;
use super::pipelines::{gaunt_eval, hypergeometric_eval, laguerre_integral_eval, Formula, PipelineEval};
use super::rational_ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pipeline {
    Hypergeometric,
    Gaunt,
    LaguerreIntegral,
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [Pipeline::Hypergeometric, Pipeline::Gaunt, Pipeline::LaguerreIntegral];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Hypergeometric => "hypergeometric",
            Pipeline::Gaunt => "gaunt",
            Pipeline::LaguerreIntegral => "laguerre-integral",
        }
    }
}

/// Calibrated value `= (−1)^offset · scale · core · (−1)^working_exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub offset: i64,
    #[serde(serialize_with = "ser_rational")]
    pub scale: BigRational,
    /// The reference key, for reporting.
    pub at: String,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn fit(eval: PipelineEval, reference: &RadicalSum, at: String) -> Calibration {
    let r = rational_ratio(reference, &eval.uncalibrated())
        .expect("pipeline and oracle share a radicand at the reference key");
    Calibration {
        offset: i64::from(r.is_negative()),
        scale: r.abs(),
        at,
    }
}

fn compute(p: Pipeline) -> Calibration {
    match p {
        Pipeline::Hypergeometric => {
            let key = PassageKey::new(h(1), h(1), h(1), h(1), h(2)).expect("reference key");
            let mk = map_abs_indices(key.j1, key.j2, key.j3, key.m1, key.m2).expect("reference key");
            let eval = hypergeometric_eval(&key, Formula::Corrected).expect("reference key");
            fit(eval, &oracle_value(&mk.key), key.to_string())
        }
        Pipeline::Gaunt => {
            let key = CGKey::from_twice([1, 1, 2, 1, 1]).expect("reference key");
            let eval = gaunt_eval(h(1), h(1), h(2), h(1), h(1), Formula::Corrected).expect("reference key");
            fit(eval, &oracle_value(&key), key.to_string())
        }
        Pipeline::LaguerreIntegral => {
            let key = CGKey::from_twice([1, 1, 2, -1, 1]).expect("reference key");
            let eval = laguerre_integral_eval(h(1), h(1), h(2), 0, Formula::Corrected).expect("reference key");
            fit(eval, &oracle_value(&key), key.to_string())
        }
    }
}

/// The calibration of `p`, computed on first use.
pub fn calibration(p: Pipeline) -> &'static Calibration {
    static CELLS: [OnceLock<Calibration>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let i = match p {
        Pipeline::Hypergeometric => 0,
        Pipeline::Gaunt => 1,
        Pipeline::LaguerreIntegral => 2,
    };
    CELLS[i].get_or_init(|| compute(p))
}
