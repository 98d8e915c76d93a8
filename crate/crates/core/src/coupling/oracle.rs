//! Condon–Shortley Clebsch–Gordan coefficients from Racah's single sum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::basis::{validate_triple, CGKey};
use crate::error::Result;
use crate::exact::{check_jm, fact, parity_sign, ratio, HalfInt, RadicalSum};

use super::CGValue;

fn f(twice: i64) -> BigInt {
    debug_assert!(twice >= 0 && twice % 2 == 0, "factorial of {twice}/2");
    fact((twice / 2) as usize)
}

/// The signed value `⟨j1 j2; m1 m2 | j3 m3⟩`.
pub fn oracle_value(key: &CGKey) -> RadicalSum {
    let [j1, j2, j3, m1, m2, m3] = key.twice();
    let num = BigInt::from(j3 + 1)
        * f(j1 + j2 - j3)
        * f(j1 - j2 + j3)
        * f(-j1 + j2 + j3)
        * f(j3 + m3)
        * f(j3 - m3)
        * f(j1 - m1)
        * f(j1 + m1)
        * f(j2 - m2)
        * f(j2 + m2);
    let pre = BigRational::new(num, f(j1 + j2 + j3 + 2));
    let mut sum = BigRational::zero();
    for k in 0..=(j1 + j2 + j3) / 2 {
        let k2 = 2 * k;
        let args = [
            k2,
            j1 + j2 - j3 - k2,
            j1 - m1 - k2,
            j2 + m2 - k2,
            j3 - j2 + m1 + k2,
            j3 - j1 - m2 + k2,
        ];
        if args.iter().any(|a| *a < 0) {
            continue;
        }
        let den = args.iter().fold(BigInt::one(), |acc, a| acc * f(*a));
        sum += BigRational::new(BigInt::from(parity_sign(k)), den);
    }
    RadicalSum::sqrt_of(&pre)
        .expect("oracle prefactor is nonnegative")
        .scale(&sum)
}

/// The Racah closed form as a [`CGValue`] with no phase exponent.
pub fn cg_racah_oracle(key: &CGKey) -> CGValue {
    CGValue::from_value(&oracle_value(key)).expect("oracle values are single radicals")
}

/// Signed 3j symbol `(j1 j2 j3; m1 m2 m3)`. Zero when the projections do
/// not sum to zero or the triangle rule fails; malformed `(j, m)` pairs
/// are a domain error.
pub fn threej_value(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> Result<RadicalSum> {
    check_jm(j1, m1, "(j1, m1)")?;
    check_jm(j2, m2, "(j2, m2)")?;
    check_jm(j3, m3, "(j3, m3)")?;
    if (m1 + m2 + m3).twice() != 0 || !validate_triple(j1, j2, j3) {
        return Ok(RadicalSum::zero());
    }
    let key = CGKey::new(j1, j2, j3, m1, m2)?;
    let exponent = (j1 - j2 - m3).whole("j1 − j2 − m3")?;
    let norm = RadicalSum::sqrt_of(&ratio(1, j3.twice() + 1))?;
    Ok((&oracle_value(&key) * &norm).scale(&ratio(parity_sign(exponent), 1)))
}

/// [`threej_value`] as a [`CGValue`], with the conversion phase
/// `j1 − j2 − m3` reported as the raw exponent.
pub fn threej(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> Result<CGValue> {
    let v = threej_value(j1, j2, j3, m1, m2, m3)?;
    if v.is_zero() {
        return Ok(CGValue::zero());
    }
    let exponent = (j1 - j2 - m3).whole("j1 − j2 − m3")?;
    let core = v.scale(&ratio(parity_sign(exponent), 1));
    CGValue::from_core(&core, HalfInt::from_int(exponent), exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::m_values;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn key(t: [i64; 5]) -> CGKey {
        CGKey::from_twice(t).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_value(&key([1, 1, 2, 1, 1])), RadicalSum::one());
        for tj in 0..=6 {
            for m in m_values(h(tj)) {
                let k = CGKey::new(h(tj), h(0), h(tj), m, h(0)).unwrap();
                assert_eq!(oracle_value(&k), RadicalSum::one());
            }
        }
        let half = RadicalSum::sqrt_of(&ratio(1, 2)).unwrap();
        assert_eq!(oracle_value(&key([1, 1, 2, 1, -1])), half);
        assert_eq!(oracle_value(&key([1, 1, 0, 1, -1])), half);
        assert_eq!(oracle_value(&key([1, 1, 0, -1, 1])), -&half);
        let third = RadicalSum::sqrt_of(&ratio(1, 3)).unwrap();
        assert_eq!(oracle_value(&key([2, 2, 0, 0, 0])), -&third);
        assert_eq!(oracle_value(&key([2, 2, 2, 2, 0])), half);
    }

    #[test]
    fn threej_examples() {
        let v = threej_value(h(2), h(2), h(0), h(0), h(0), h(0)).unwrap();
        assert_eq!(v, -RadicalSum::sqrt_of(&ratio(1, 3)).unwrap());
        assert_eq!(v.to_string(), "-(1/1)*sqrt(1/3)");
        assert!(threej_value(h(2), h(2), h(0), h(2), h(0), h(0)).unwrap().is_zero());
        let v = threej_value(h(1), h(1), h(2), h(1), h(1), h(-2)).unwrap();
        assert_eq!(v, -RadicalSum::sqrt_of(&ratio(1, 3)).unwrap());
        assert!(threej_value(h(1), h(1), h(2), h(3), h(1), h(-2)).is_err());
        let c = threej(h(2), h(2), h(0), h(0), h(0), h(0)).unwrap();
        assert_eq!((c.sign, c.phase_exponent_raw), (-1, h(0)));
    }

    /// Float evaluation of Racah's formula in a different arrangement
    /// (Wigner's 3j sum) as an independent cross-check.
    fn wigner3j_float(j: [f64; 3], m: [f64; 3]) -> f64 {
        let f = |x: f64| (1..=x.round() as u64).map(|k| k as f64).product::<f64>();
        let [a, b, c] = j;
        let [d, e, g] = m;
        let tri = f(a + b - c) * f(a - b + c) * f(-a + b + c) / f(a + b + c + 1.0);
        let norm = (tri * f(a + d) * f(a - d) * f(b + e) * f(b - e) * f(c + g) * f(c - g)).sqrt();
        let mut s = 0.0;
        for k in 0..=((a + b + c) as i64 + 1) {
            let k = k as f64;
            let args = [k, c - b + k + d, c - a + k - e, a + b - c - k, a - k - d, b - k + e];
            if args.iter().any(|x| *x < -1e-9) {
                continue;
            }
            let sign = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
            s += sign / args.iter().map(|x| f(*x)).product::<f64>();
        }
        let phase = if ((a - b - g).round() as i64).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        phase * norm * s
    }

    #[test]
    fn threej_matches_float_formula() {
        for k in CGKey::enumerate(5) {
            let v = threej_value(k.j1(), k.j2(), k.j3(), k.m1(), k.m2(), -k.m3()).unwrap();
            let j = [k.j1(), k.j2(), k.j3()].map(HalfInt::to_f64);
            let m = [k.m1(), k.m2(), -k.m3()].map(HalfInt::to_f64);
            assert!((v.to_f64() - wigner3j_float(j, m)).abs() < 1e-10, "{k}");
        }
    }
}
