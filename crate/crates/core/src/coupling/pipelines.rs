//! The four polar-basis routes to Clebsch–Gordan values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::basis::{validate_triple, CGKey, PassageKey};
use crate::error::{domain, Error, Result};
use crate::exact::{check_jm, fact, half_angle_beta, parity_sign, pochhammer, ratio, HalfInt, RadicalSum};
use crate::polyn::{laguerre_weighted_overlap, wigner_small_d};

use super::calibration::{calibration, Pipeline};
use super::CGValue;

/// Which arrangement of a normalization to use: the one that reproduces
/// the oracle, or the one as typeset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    Corrected,
    Printed,
}

/// Raw output of a pipeline: the value before any phase factor, the
/// exponent of the printed phase, and the exponent applied before
/// calibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineEval {
    pub core: RadicalSum,
    pub printed_exponent: HalfInt,
    pub working_exponent: i64,
}

impl PipelineEval {
    /// `core · (−1)^working_exponent`.
    pub fn uncalibrated(&self) -> RadicalSum {
        self.core.scale(&ratio(parity_sign(self.working_exponent), 1))
    }

    fn finish(&self, pipeline: Pipeline) -> Result<CGValue> {
        let c = calibration(pipeline);
        CGValue::from_core(
            &self.core.scale(&c.scale),
            self.printed_exponent,
            self.working_exponent + c.offset,
        )
    }
}

fn w(h: HalfInt) -> i64 {
    debug_assert!(h.is_integer(), "{h} is not whole");
    h.twice().div_euclid(2)
}

fn fi(n: i64) -> BigInt {
    fact(usize::try_from(n).expect("nonnegative factorial argument"))
}

fn sqrt_ratio(num: BigInt, den: BigInt) -> Result<RadicalSum> {
    RadicalSum::sqrt_of(&BigRational::new(num, den))
}

/// `₃F₂(a1, a2, a3; b1, b2; 1)` where some `aᵢ` is a nonpositive integer.
/// A lower Pochhammer that vanishes while the upper product is still
/// nonzero is reported as an indeterminate term.
pub fn terminating_3f2(upper: &[BigRational; 3], lower: &[BigRational; 2]) -> Result<BigRational> {
    let bound = upper
        .iter()
        .filter(|a| a.is_integer() && !a.is_positive())
        .map(|a| (-a).to_integer())
        .min()
        .ok_or_else(|| Error::Domain("hypergeometric series does not terminate".into()))?;
    let bound: u32 = u32::try_from(bound).map_err(|_| Error::Domain("series too long".into()))?;
    let mut sum = BigRational::zero();
    for k in 0..=bound {
        let num = upper.iter().fold(BigRational::one(), |acc, a| acc * pochhammer(a, k));
        if num.is_zero() {
            break;
        }
        let den = lower.iter().fold(BigRational::one(), |acc, b| acc * pochhammer(b, k));
        if den.is_zero() {
            return Err(Error::IndeterminateTerm { index: k });
        }
        sum += num / (den * BigRational::from_integer(fact(k as usize)));
    }
    Ok(sum)
}

/// Closed `₃F₂` form of the passage element for the projections
/// `(|m1|, |m2|)` of `key`. Its value is the coefficient on the
/// absolute-value-mapped key.
pub fn hypergeometric_eval(key: &PassageKey, formula: Formula) -> Result<PipelineEval> {
    let (j1, j2, j3) = (key.j1, key.j2, key.j3);
    let (a1, a2) = (key.m1.abs(), key.m2.abs());
    let n = key.n();
    let p_pp = w(j3 + a1 + a2);
    let p_mp = w(j3 - a1 + a2);
    let p_pm = w(j3 + a1 - a2);
    let p_mm = w(j3 - a1 - a2);
    let (up, down) = match formula {
        Formula::Corrected => (p_mp, p_pm),
        Formula::Printed => (p_pm, p_mp),
    };
    let num = BigInt::from(j3.twice() + 1) * fi(p_pp) * fi(up);
    let den = fi(n)
        * fi(w(j1 + j2 + j3) + 1)
        * fi(p_mm)
        * fi(down)
        * fi(w(j1 - a1))
        * fi(w(j1 + a1))
        * fi(w(j2 - a2))
        * fi(w(j2 + a2));
    let radical = sqrt_ratio(num, den)?;
    let q = |h: HalfInt| BigRational::from_integer(BigInt::from(w(h)));
    let upper = [
        BigRational::from_integer((-n).into()),
        -q(j1 + j2 + j3) - BigRational::one(),
        -q(j2 - a2),
    ];
    let lower = [-q(j1 + j2 - a1 - a2), -q(j1 + j2 + a1 - a2)];
    let series = terminating_3f2(&upper, &lower)?;
    let outer = fi(w(j1 + j2 - a1 - a2)) * fi(w(j1 + j2 + a1 - a2));
    Ok(PipelineEval {
        core: radical.scale(&(series * BigRational::from_integer(outer))),
        printed_exponent: HalfInt::from_int(n) + key.m1,
        working_exponent: n,
    })
}

/// Calibrated `₃F₂` pipeline value; see [`hypergeometric_eval`].
pub fn cg_hypergeometric(key: &PassageKey) -> Result<CGValue> {
    hypergeometric_eval(key, Formula::Corrected)?.finish(Pipeline::Hypergeometric)
}

/// Half-angle θ-integral of a small-d function against
/// `(cos sin)^{a+b} tan^{β−α}` for `⟨a b; α β | c, α+β⟩` with `γ = −α−β`.
pub fn gaunt_eval(
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    alpha: HalfInt,
    beta: HalfInt,
    formula: Formula,
) -> Result<PipelineEval> {
    if !validate_triple(a, b, c) {
        return domain(format!("triangle rule fails for ({a}, {b}, {c})"));
    }
    check_jm(a, alpha, "(a, α)")?;
    check_jm(b, beta, "(b, β)")?;
    let exponent = w(b + beta);
    let gamma = -(alpha + beta);
    if gamma.abs() > c {
        return Ok(PipelineEval {
            core: RadicalSum::zero(),
            printed_exponent: HalfInt::from_int(exponent),
            working_exponent: exponent,
        });
    }
    let d = wigner_small_d(c, b - a, gamma)?;
    let shift_cos = w(a + alpha) + w(b - beta);
    let shift_sin = w(a - alpha) + w(b + beta);
    let mut integral = BigRational::zero();
    for (p, q, coef) in d.half_angle_terms() {
        let value = half_angle_beta(p as i64 + shift_cos, q as i64 + shift_sin).map_err(|_| {
            Error::Consistency(format!(
                "odd half-angle exponents ({}, {}) for ({a} {b} {c}; {alpha} {beta})",
                p as i64 + shift_cos,
                q as i64 + shift_sin
            ))
        })?;
        integral += coef * value;
    }
    let delta = w(a + b + c);
    let dim = match formula {
        Formula::Corrected => BigInt::from(c.twice() + 1),
        Formula::Printed => BigInt::one(),
    };
    let num = dim * fi(delta + 1) * fi(delta - w(c + c));
    let den = fi(w(a + alpha)) * fi(w(a - alpha)) * fi(w(b + beta)) * fi(w(b - beta));
    let core = &(&sqrt_ratio(num, den)? * &d.prefactor) * &RadicalSum::from_rational(integral);
    Ok(PipelineEval {
        core,
        printed_exponent: HalfInt::from_int(exponent),
        working_exponent: exponent,
    })
}

/// Calibrated θ-integral value of `⟨a b; α β | c, α+β⟩`.
pub fn gaunt_cg(a: HalfInt, b: HalfInt, c: HalfInt, alpha: HalfInt, beta: HalfInt) -> Result<CGValue> {
    gaunt_eval(a, b, c, alpha, beta, Formula::Corrected)?.finish(Pipeline::Gaunt)
}

fn check_vilenkin_args(l1: HalfInt, l2: HalfInt, l3: HalfInt, k: i64) -> Result<()> {
    if !validate_triple(l1, l2, l3) {
        return domain(format!("triangle rule fails for ({l1}, {l2}, {l3})"));
    }
    if k < 0 || k > l1.twice().min(l2.twice()) {
        return domain(format!("k = {k} outside 0..=min(2 l1, 2 l2)"));
    }
    Ok(())
}

/// The key `⟨l1 l2; k−l1, l2−k | l3, l2−l1⟩` addressed by the Laguerre
/// routes.
pub fn vilenkin_key(l1: HalfInt, l2: HalfInt, l3: HalfInt, k: i64) -> Result<CGKey> {
    check_vilenkin_args(l1, l2, l3, k)?;
    CGKey::new(l1, l2, l3, HalfInt::from_int(k) - l1, l2 - HalfInt::from_int(k))
}

pub fn laguerre_integral_key(l1: HalfInt, l2: HalfInt, l: HalfInt, k: i64) -> Result<CGKey> {
    vilenkin_key(l1, l2, l, k)
}

/// The finite μ-sum
/// `Σ_μ (−1)^μ (l1+l2−μ)! / (μ! (n−μ)! (l1+l2+l3−μ+1)!) · (2l2−μ)!/(k−μ)!`
/// with `n = l1+l2−l3` and terms `μ > k` dropped. Half-integer `l1 + l2`
/// would put a Γ at a half-integer argument and is rejected.
pub fn vilenkin_sum(l1: HalfInt, l2: HalfInt, l3: HalfInt, k: i64) -> Result<BigRational> {
    check_vilenkin_args(l1, l2, l3, k)?;
    let s = (l1 + l2).whole("l1 + l2 (Γ argument)")?;
    let n = w(l1 + l2 - l3);
    let big = w(l1 + l2 + l3);
    let two_l2 = l2.twice();
    let mut sum = BigRational::zero();
    for mu in 0..=n.min(k) {
        let num = fi(s - mu) * fi(two_l2 - mu);
        let den = fi(mu) * fi(n - mu) * fi(big - mu + 1) * fi(k - mu);
        sum += BigRational::new(num * BigInt::from(parity_sign(mu)), den);
    }
    Ok(sum)
}

/// The μ-sum with its printed phase exponent `2 l2` (the remaining
/// exponent symbols are undefined in the source expression).
pub fn cg_vilenkin(l1: HalfInt, l2: HalfInt, l3: HalfInt, k: i64) -> Result<CGValue> {
    let sum = vilenkin_sum(l1, l2, l3, k)?;
    let exponent = l2.twice();
    CGValue::from_core(&RadicalSum::from_rational(sum), HalfInt::from_int(exponent), exponent)
}

/// Integral representation `N · ∫ x^{l2−l1+l} e^{−x} L_{2l1−k}^{2(l2−l1)}
/// L_n^{2l+1} dx` with `n = l1+l2−l`.
pub fn laguerre_integral_eval(l1: HalfInt, l2: HalfInt, l: HalfInt, k: i64, formula: Formula) -> Result<PipelineEval> {
    check_vilenkin_args(l1, l2, l, k)?;
    let n = w(l1 + l2 - l);
    let (t1, t2) = (l1.twice(), l2.twice());
    let overlap = laguerre_weighted_overlap((t1 - k) as u32, t2 - t1, n as u32, l.twice() + 1, w(l2 - l1 + l))?;
    let norm = match formula {
        Formula::Corrected => sqrt_ratio(
            BigInt::from(l.twice() + 1) * fi(n) * fi(t1 - k),
            fi(w(l1 + l2 + l) + 1) * fi(t2 - k),
        )?,
        Formula::Printed => sqrt_ratio(fi(t2 - k), fi(t1 - k))?,
    };
    Ok(PipelineEval {
        core: norm.scale(&overlap),
        printed_exponent: HalfInt::from_int(k),
        working_exponent: k + t1,
    })
}

/// Calibrated integral-representation value on [`laguerre_integral_key`].
pub fn cg_laguerre_integral(l1: HalfInt, l2: HalfInt, l: HalfInt, k: i64) -> Result<CGValue> {
    laguerre_integral_eval(l1, l2, l, k, Formula::Corrected)?.finish(Pipeline::LaguerreIntegral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::map_abs_indices;
    use crate::coupling::oracle_value;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn pk(j1: i64, m1: i64, j2: i64, m2: i64, j3: i64) -> PassageKey {
        PassageKey::new(h(j1), h(m1), h(j2), h(m2), h(j3)).unwrap()
    }

    #[test]
    fn terminating_series() {
        let q = |n: i64| BigRational::from_integer(n.into());
        // ₃F₂(−1, b, c; d, e; 1) = 1 − bc/(de)
        let v = terminating_3f2(&[q(-1), q(2), q(3)], &[q(4), q(6)]).unwrap();
        assert_eq!(v, ratio(3, 4));
        assert_eq!(
            terminating_3f2(&[q(-2), q(1), q(1)], &[q(-1), q(1)]),
            Err(Error::IndeterminateTerm { index: 2 })
        );
        assert!(terminating_3f2(&[q(1), q(1), q(1)], &[q(1), q(1)]).is_err());
    }

    #[test]
    fn hypergeometric_examples() {
        let v = cg_hypergeometric(&pk(1, 1, 1, 1, 2)).unwrap();
        assert_eq!(v.value(), RadicalSum::one());
        let v = cg_hypergeometric(&pk(2, 2, 2, 0, 2)).unwrap();
        assert_eq!(v.magnitude, RadicalSum::sqrt_of(&ratio(1, 4)).unwrap());
        // stretched j3 = j1 + j2: one series term
        let v = hypergeometric_eval(&pk(4, 2, 2, 0, 6), Formula::Corrected).unwrap();
        assert!(!v.core.is_zero());
    }

    #[test]
    fn hypergeometric_matches_oracle_small() {
        for key in PassageKey::enumerate(4, true) {
            let mk = map_abs_indices(key.j1, key.j2, key.j3, key.m1, key.m2).unwrap();
            let got = cg_hypergeometric(&key).unwrap();
            assert_eq!(got.value(), oracle_value(&mk.key), "{key}");
        }
    }

    #[test]
    fn gaunt_examples() {
        let v = gaunt_cg(h(1), h(1), h(2), h(1), h(1)).unwrap();
        assert_eq!(v.value(), RadicalSum::one());
        let v = gaunt_cg(h(1), h(1), h(0), h(1), h(-1)).unwrap();
        assert_eq!(v.magnitude, RadicalSum::sqrt_of(&ratio(1, 2)).unwrap());
        assert!(gaunt_cg(h(1), h(1), h(1), h(1), h(1)).is_err());
    }

    #[test]
    fn laguerre_integral_examples() {
        let key = laguerre_integral_key(h(1), h(1), h(2), 0).unwrap();
        let v = cg_laguerre_integral(h(1), h(1), h(2), 0).unwrap();
        assert_eq!(v.value(), oracle_value(&key));
        let key = laguerre_integral_key(h(2), h(2), h(4), 1).unwrap();
        let v = cg_laguerre_integral(h(2), h(2), h(4), 1).unwrap();
        assert_eq!(v.value(), oracle_value(&key));
        assert!(cg_laguerre_integral(h(2), h(2), h(4), 3).is_err());
    }

    #[test]
    fn vilenkin_runs_as_printed() {
        // stretched: single μ = 0 term (l1+l2)!/(n! (2l1+2l2+1)!) · (2l2)!/k!
        let v = vilenkin_sum(h(1), h(1), h(2), 1).unwrap();
        assert_eq!(v, ratio(1, 6));
        assert!(vilenkin_sum(h(1), h(2), h(1), 1).is_err());
        assert!(cg_vilenkin(h(2), h(2), h(2), 0).is_ok());
    }
}
