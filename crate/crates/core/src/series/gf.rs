//! Expansions of the Laguerre, Schwinger 3j and two-parameter CG
//! generating functions.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::basis::{PassageKey, PhiReading};
use crate::coupling::{passage_element, rational_ratio, CGValue, Formula, Route};
use crate::error::{domain, Error, Result};
use crate::exact::{fact, HalfInt, RadicalSum};
use crate::polyn::{laguerre_weighted_overlap, RationalPoly};

use super::MultiSeries;

pub const LAGUERRE_GF_VARS: [&str; 2] = ["s", "x"];
pub const THREEJ_GF_VARS: [&str; 9] = ["t1", "t2", "tp1", "tp2", "s", "xi1", "xi2", "eta1", "eta2"];
pub const CG_GF_VARS: [&str; 2] = ["u", "v"];

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(1−s)^{−α−1} exp(−s x/(1−s))` through `s^{max_n}`.
pub fn laguerre_gf(alpha: i64, max_n: u32) -> Result<MultiSeries> {
    let vars = &LAGUERRE_GF_VARS;
    let trunc = 2 * max_n;
    let geometric = MultiSeries::binomial_series(vars, trunc, &[1, 0], &q(-1), -1)?;
    let tail = geometric.sub(&MultiSeries::one(vars, trunc))?;
    let x = MultiSeries::var(vars, trunc, "x")?;
    let arg = tail.mul(&x)?.scale(&q(-1));
    let prefactor = MultiSeries::binomial_series(vars, trunc, &[1, 0], &q(-1), -alpha - 1)?;
    prefactor.mul(&arg.exp()?)
}

/// The polynomial multiplying `sⁿ` in [`laguerre_gf`].
pub fn laguerre_from_gf(n: u32, alpha: i64) -> Result<RationalPoly> {
    let part = laguerre_gf(alpha, n)?.coefficient_of(&[("s", n)])?;
    let coeffs = (0..=n).map(|k| part.coeff(&[k])).collect::<Result<Vec<_>>>()?;
    Ok(RationalPoly::from_coeffs(coeffs))
}

/// The exponent of the 3j generating function,
/// `ξ1(η1 t2 + η2 t'1) + ξ2(−η1 t'2 + η2 t1) − s(t1 t2 + t'1 t'2)`.
pub fn threej_gf_form(trunc: u32) -> MultiSeries {
    let terms: [([u32; 9], i64); 6] = [
        ([0, 1, 0, 0, 0, 1, 0, 1, 0], 1),
        ([0, 0, 1, 0, 0, 1, 0, 0, 1], 1),
        ([0, 0, 0, 1, 0, 0, 1, 1, 0], -1),
        ([1, 0, 0, 0, 0, 0, 1, 0, 1], 1),
        ([1, 1, 0, 0, 1, 0, 0, 0, 0], -1),
        ([0, 0, 1, 1, 1, 0, 0, 0, 0], -1),
    ];
    let mut form = MultiSeries::zero(&THREEJ_GF_VARS, trunc);
    for (e, c) in terms {
        form.insert(e.to_vec(), q(c));
    }
    form
}

fn decode_3j(e: &[u32]) -> Result<PassageKey> {
    let e: Vec<i64> = e.iter().map(|&x| x as i64).collect();
    let [t1, t2, tp1, tp2, s, xi1, xi2, eta1, eta2] = e[..] else {
        return domain("3j generating function has nine variables");
    };
    let h = HalfInt::from_twice;
    let (j1, m1, j2, m2, j3) = (t1 + t2, t1 - t2, tp1 + tp2, tp1 - tp2, xi1 + xi2);
    let consistent = eta1 + eta2 == j3 && 2 * xi1 == j3 - m1 + m2 && 2 * eta1 == j3 - m1 - m2 && 2 * s == j1 + j2 - j3;
    if !consistent {
        return Err(Error::Consistency(format!(
            "monomial {e:?} breaks the projection selection rule"
        )));
    }
    PassageKey::new(h(j1), h(m1), h(j2), h(m2), h(j3))
}

/// Coefficients of `exp(form)` keyed by the passage labels each monomial
/// encodes, for every label set reachable with at most `order` factors of
/// the form (variable degree `3·order`).
pub fn expand_3j_gf(order: u32) -> Result<BTreeMap<PassageKey, BigRational>> {
    let series = threej_gf_form(3 * order).exp()?;
    let mut out = BTreeMap::new();
    for (e, c) in series.terms() {
        out.insert(decode_3j(e)?, c.clone());
    }
    Ok(out)
}

fn fi(n: i64) -> BigInt {
    fact(usize::try_from(n).expect("nonnegative factorial argument"))
}

fn w(h: HalfInt) -> i64 {
    h.twice().div_euclid(2)
}

/// Generating-function coefficient turned into a passage value before the
/// one-point normalization:
/// `coeff · √(∏ monomial factorials · p!/(2j3+p+1)!) · (2j3+1)`, with
/// `(2j3+p+2)!` under [`Formula::Printed`].
pub fn threej_gf_value(key: &PassageKey, coeff: &BigRational, formula: Formula) -> Result<RadicalSum> {
    let (j1, m1, j2, m2, j3) = (key.j1, key.m1, key.j2, key.m2, key.j3);
    let p = key.n();
    let exps = [
        j1 + m1,
        j1 - m1,
        j2 + m2,
        j2 - m2,
        j3 - m1 + m2,
        j3 + m1 - m2,
        j3 - m1 - m2,
        j3 + m1 + m2,
    ];
    let prod = exps.iter().fold(BigInt::one(), |acc, x| acc * fi(w(*x)));
    let top = w(j3 + j3)
        + p
        + match formula {
            Formula::Corrected => 1,
            Formula::Printed => 2,
        };
    let r = BigRational::new(prod * fi(p), fi(top));
    Ok(RadicalSum::sqrt_of(&r)?.scale(&(coeff * q(j3.twice() + 1))))
}

/// The normalization constant fixed at the stretched `j = ½` key
/// `ξ1 η1 t2`, against the signed passage element.
pub fn threej_gf_scale() -> &'static BigRational {
    static SCALE: OnceLock<BigRational> = OnceLock::new();
    SCALE.get_or_init(|| {
        let h = HalfInt::from_twice;
        let key = PassageKey::new(h(1), h(-1), h(0), h(0), h(1)).expect("reference key");
        let target = passage_element(&key, Route::Signed, PhiReading::MappedJ2).expect("reference key");
        let raw = threej_gf_value(&key, &BigRational::one(), Formula::Corrected).expect("reference key");
        rational_ratio(&target.magnitude, &raw)
            .expect("reference values share a radicand")
            .abs()
    })
}

fn check_cg_gf_args(j3: HalfInt, a1: HalfInt, a2: HalfInt) -> Result<i64> {
    if !a1.is_nonnegative() || !a2.is_nonnegative() || a1 + a2 > j3 {
        return domain(format!(
            "need 0 ≤ |m1|, |m2| and |m1| + |m2| ≤ j3, got ({a1}, {a2}, {j3})"
        ));
    }
    (j3 - a1 - a2).whole("j3 − |m1| − |m2|")
}

/// The left-hand side as a series in `(u, v)`: the coefficient of
/// `u^{n1} v^n` is `∫ x^{j3+|m1|−|m2|} e^{−x} L_{n1}^{2|m1|} L_n^{2j3+1} dx`.
pub fn cg_gf_integral(j3: HalfInt, a1: HalfInt, a2: HalfInt, max_n: u32) -> Result<MultiSeries> {
    check_cg_gf_args(j3, a1, a2)?;
    let c = w(j3 + a1 - a2);
    let mut s = MultiSeries::zero(&CG_GF_VARS, max_n);
    for n1 in 0..=max_n {
        for n in 0..=(max_n - n1) {
            let v = laguerre_weighted_overlap(n1, a1.twice(), n, j3.twice() + 1, c)?;
            s.insert(vec![n1, n], v);
        }
    }
    Ok(s)
}

/// Closed form of [`cg_gf_integral`]: with `c = j3+|m1|−|m2|`,
/// `c! (1−u)^{j3−|m1|−|m2|} (1−v)^{−(j3−|m1|+|m2|+1)} (1−uv)^{−(c+1)}`, or
/// under [`Formula::Printed`]
/// `c! (1−u)^{−(c−1)} (1−v)^{j3−|m1|+|m2|} (1−uv)^{−(c+1)}`.
pub fn cg_gf_closed_form(j3: HalfInt, a1: HalfInt, a2: HalfInt, max_n: u32, formula: Formula) -> Result<MultiSeries> {
    let k = check_cg_gf_args(j3, a1, a2)?;
    let c = w(j3 + a1 - a2);
    let d = w(j3 - a1 + a2);
    let (eu, ev) = match formula {
        Formula::Corrected => (k, -(d + 1)),
        Formula::Printed => (-(c - 1), d),
    };
    let vars = &CG_GF_VARS;
    let fu = MultiSeries::binomial_series(vars, max_n, &[1, 0], &q(-1), eu)?;
    let fv = MultiSeries::binomial_series(vars, max_n, &[0, 1], &q(-1), ev)?;
    let fuv = MultiSeries::binomial_series(vars, max_n, &[1, 1], &q(-1), -(c + 1))?;
    Ok(fu.mul(&fv)?.mul(&fuv)?.scale(&BigRational::from_integer(fi(c))))
}

/// One coefficient where the printed closed form departs from the
/// integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CgGfDiscrepancy {
    pub n1: u32,
    pub n: u32,
    #[serde(serialize_with = "ser_rational")]
    pub integral: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub printed: BigRational,
}

fn ser_rational<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn cg_gf_discrepancies(j3: HalfInt, a1: HalfInt, a2: HalfInt, max_n: u32) -> Result<Vec<CgGfDiscrepancy>> {
    let lhs = cg_gf_integral(j3, a1, a2, max_n)?;
    let rhs = cg_gf_closed_form(j3, a1, a2, max_n, Formula::Printed)?;
    let mut out = Vec::new();
    for n1 in 0..=max_n {
        for n in 0..=(max_n - n1) {
            let (a, b) = (lhs.coeff(&[n1, n])?, rhs.coeff(&[n1, n])?);
            if a != b {
                out.push(CgGfDiscrepancy {
                    n1,
                    n,
                    integral: a,
                    printed: b,
                });
            }
        }
    }
    Ok(out)
}

/// Passage values read off the `(u, v)` expansion: for each `(n1, n)` with
/// `n1 + n ≤ max_n` whose labels `j1 = n1+|m1|`, `j2 = j3+n−j1` are
/// admissible, `(−1)^{n1} A · [u^{n1} vⁿ]` with
/// `A² = (2j3+1) n! (j3+|m1|+|m2|)! (j3−|m1|+|m2|)! / ((j1+j2+j3+1)!
/// (j3−|m1|−|m2|)! (j3+|m1|−|m2|)!) · ∏ (jᵢ−|mᵢ|)!/(jᵢ+|mᵢ|)!`.
pub fn expand_cg_gf(j3: HalfInt, a1: HalfInt, a2: HalfInt, max_n: u32) -> Result<BTreeMap<(u32, u32), CGValue>> {
    let series = cg_gf_integral(j3, a1, a2, max_n)?;
    let mut out = BTreeMap::new();
    for n1 in 0..=max_n {
        for n in 0..=(max_n - n1) {
            let j1 = HalfInt::from_int(n1 as i64) + a1;
            let j2 = j3 + HalfInt::from_int(n as i64) - j1;
            if j2 < a2 {
                continue;
            }
            let i = series.coeff(&[n1, n])?;
            if i.is_zero() {
                out.insert((n1, n), CGValue::zero());
                continue;
            }
            let num = BigInt::from(j3.twice() + 1)
                * fi(n as i64)
                * fi(w(j3 + a1 + a2))
                * fi(w(j3 - a1 + a2))
                * fi(w(j1 - a1))
                * fi(w(j2 - a2));
            let den =
                fi(w(j1 + j2 + j3) + 1) * fi(w(j3 - a1 - a2)) * fi(w(j3 + a1 - a2)) * fi(w(j1 + a1)) * fi(w(j2 + a2));
            let core = RadicalSum::sqrt_of(&BigRational::new(num, den))?.scale(&i);
            out.insert(
                (n1, n),
                CGValue::from_core(&core, HalfInt::from_int(n1 as i64), n1 as i64)?,
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::cg_hypergeometric;
    use crate::exact::ratio;
    use crate::polyn::laguerre;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn laguerre_generating_function() {
        for n in 0..=4 {
            for alpha in 0..=3 {
                assert_eq!(
                    laguerre_from_gf(n, alpha).unwrap(),
                    laguerre(n, alpha),
                    "n={n} α={alpha}"
                );
            }
        }
    }

    #[test]
    fn threej_series_examples() {
        let s = threej_gf_form(9).exp().unwrap();
        assert_eq!(s.coeff(&[0; 9]).unwrap(), ratio(1, 1));
        assert_eq!(s.coeff(&[0, 1, 0, 0, 0, 1, 0, 1, 0]).unwrap(), ratio(1, 1));
        // a monomial no product of the generators reaches
        assert!(s.coeff(&[1, 0, 0, 0, 0, 1, 0, 1, 0]).unwrap().is_zero());
        assert_eq!(threej_gf_scale(), &ratio(1, 1));
    }

    #[test]
    fn threej_series_matches_signed_passage() {
        let coeffs = expand_3j_gf(5).unwrap();
        let mut seen = 0;
        for (key, c) in &coeffs {
            if key.j1.twice() > 3 || key.j2.twice() > 3 {
                continue;
            }
            let got = threej_gf_value(key, c, Formula::Corrected)
                .unwrap()
                .scale(threej_gf_scale());
            let want = passage_element(key, Route::Signed, PhiReading::MappedJ2).unwrap();
            assert_eq!(got.abs(), Some(want.magnitude), "{key}");
            seen += 1;
        }
        assert!(seen > 20);
    }

    #[test]
    fn cg_series_closed_forms() {
        for (j3, a1, a2) in [(2, 0, 0), (3, 1, 0), (4, 2, 2), (3, 1, 2), (4, 0, 2)] {
            let (j3, a1, a2) = (h(j3), h(a1), h(a2));
            let lhs = cg_gf_integral(j3, a1, a2, 4).unwrap();
            let rhs = cg_gf_closed_form(j3, a1, a2, 4, Formula::Corrected).unwrap();
            assert_eq!(lhs, rhs);
            assert!(!cg_gf_discrepancies(j3, a1, a2, 4).unwrap().is_empty());
        }
    }

    #[test]
    fn cg_series_matches_hypergeometric() {
        for (j3, a1, a2) in [(2, 0, 0), (3, 1, 0), (4, 2, 2), (3, 1, 2)] {
            let (j3, a1, a2) = (h(j3), h(a1), h(a2));
            for ((n1, n), v) in expand_cg_gf(j3, a1, a2, 4).unwrap() {
                let j1 = HalfInt::from_int(n1 as i64) + a1;
                let j2 = j3 + HalfInt::from_int(n as i64) - j1;
                let key = PassageKey::new(j1, a1, j2, a2, j3).unwrap();
                assert_eq!(v.value(), cg_hypergeometric(&key).unwrap().value(), "{key}");
            }
        }
    }

    #[test]
    fn cg_series_vanishes_off_domain() {
        let s = cg_gf_integral(h(2), h(1), h(1), 5).unwrap();
        // n2 = j3 − |m1| − |m2| + n − n1 < 0
        assert!(s.coeff(&[2, 0]).unwrap().is_zero());
        assert!(s.coeff(&[3, 1]).unwrap().is_zero());
    }
}
