//! Passage matrix elements between the polar and Cartesian-pair bases,
//! and the sign-flip orbits of 3j labels.

use serde::Serialize;

use crate::basis::{map_abs_indices_with, map_signed_indices, CGKey, PassageKey, PhiReading};
use crate::error::{Error, Result};
use crate::exact::{HalfInt, RadicalSum};

use super::oracle::oracle_value;
use super::CGValue;

/// How a passage element is read off a coupling coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Route {
    /// Through `(|m1|, |m2|)`: `e^{iπφ} ⟨…⟩` on the absolute-value map.
    Abs,
    /// Through signed projections: `(−1)^{j2−m2} √(2j3+1) ⟨…⟩` on the
    /// signed map.
    Signed,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Abs => "abs",
            Route::Signed => "signed",
        }
    }
}

/// The passage element for `key` by `route`. `reading` selects the phase
/// exponent on the absolute-value route and is ignored otherwise.
pub fn passage_element(key: &PassageKey, route: Route, reading: PhiReading) -> Result<CGValue> {
    match route {
        Route::Abs => {
            let mk = map_abs_indices_with(key.j1, key.j2, key.j3, key.m1.abs(), key.m2.abs(), reading)?;
            let v = oracle_value(&mk.key);
            if v.is_zero() {
                return Ok(CGValue {
                    phase_exponent_raw: mk.phase_exponent,
                    ..CGValue::zero()
                });
            }
            CGValue::from_core(&v, mk.phase_exponent, 0)
        }
        Route::Signed => {
            let mk = map_signed_indices(key.j1, key.j2, key.j3, key.m1, key.m2)?;
            let dim = RadicalSum::sqrt_of(&crate::exact::ratio(key.j3.twice() + 1, 1))?;
            let core = &dim * &oracle_value(&mk.key);
            let e = mk.phase_exponent.whole("j2 − m2")?;
            if core.is_zero() {
                return Ok(CGValue {
                    phase_exponent_raw: mk.phase_exponent,
                    ..CGValue::zero()
                });
            }
            CGValue::from_core(&core, mk.phase_exponent, e)
        }
    }
}

/// Unvalidated 3j labels `(j1 j2 j3; m1 m2 m3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ThreeJLabels {
    pub j: [HalfInt; 3],
    pub m: [HalfInt; 3],
}

impl ThreeJLabels {
    pub fn of_key(key: &CGKey) -> Self {
        ThreeJLabels {
            j: [key.j1(), key.j2(), key.j3()],
            m: [key.m1(), key.m2(), -key.m3()],
        }
    }

    /// Whether these labels address a nonvanishing-eligible 3j symbol.
    pub fn is_valid(&self) -> bool {
        CGKey::new(self.j[0], self.j[1], self.j[2], self.m[0], self.m[1]).is_ok()
            && (self.m[0] + self.m[1] + self.m[2]).twice() == 0
    }
}

/// Image labels of `key`'s 3j symbol under the four sign choices
/// `(A, B) = (±m1, ±m2)`, with `m1 = (M−J1+J2)/2`, `m2 = (M+J1−J2)/2` and
/// third projection `third(M, A+B)`.
fn images(key: &CGKey, third: impl Fn(HalfInt, HalfInt) -> HalfInt) -> Result<Vec<(ThreeJLabels, HalfInt)>> {
    let (j1, j2, j3) = (key.j1(), key.j2(), key.j3());
    let (big_m1, big_m2, big_m) = (key.m1(), key.m2(), key.m3());
    let m1 = HalfInt::halve_twice_sum((big_m - j1 + j2).twice(), "orbit m1")?;
    let m2 = HalfInt::halve_twice_sum((big_m + j1 - j2).twice(), "orbit m2")?;
    let mut out = Vec::with_capacity(4);
    for (s1, s2) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        let a = if s1 > 0 { m1 } else { -m1 };
        let b = if s2 > 0 { m2 } else { -m2 };
        let half = |x: HalfInt| HalfInt::halve_twice_sum(x.twice(), "orbit label");
        let labels = ThreeJLabels {
            j: [half(j1 + j2 - a + b)?, half(j1 + j2 + a - b)?, j3],
            m: [
                half(big_m1 - big_m2 + a + b)?,
                half(-big_m1 + big_m2 + a + b)?,
                third(big_m, a + b),
            ],
        };
        let phase = (j1 - j2 + big_m) - (labels.j[0] - labels.j[1] + a + b);
        out.push((labels, phase));
    }
    Ok(out)
}

/// The distinct coupling keys related to `key` by flipping the signs of
/// the intermediate projections, each with the exponent `e` such that
/// `⟨key⟩ = (−1)^e ⟨image⟩`. The first entry is `key` itself with `e = 0`.
pub fn symmetry_orbit(key: &CGKey) -> Result<Vec<(CGKey, HalfInt)>> {
    let mut out: Vec<(CGKey, HalfInt)> = Vec::with_capacity(4);
    for (labels, phase) in images(key, |_, ab| -ab)? {
        let image = CGKey::new(labels.j[0], labels.j[1], labels.j[2], labels.m[0], labels.m[1])
            .map_err(|e| Error::Consistency(format!("orbit image of {key} invalid: {e}")))?;
        if !out.iter().any(|(k, _)| *k == image) {
            out.push((image, phase));
        }
    }
    Ok(out)
}

/// The four images with the third projection taken as `−M` rather than
/// `−(A+B)`, unvalidated, for reporting which ones break the projection
/// sum rule.
pub fn symmetry_images_variant(key: &CGKey) -> Result<Vec<ThreeJLabels>> {
    Ok(images(key, |m, _| -m)?.into_iter().map(|(l, _)| l).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parity_sign, ratio};

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn orbit_values_agree() {
        for key in CGKey::enumerate(6) {
            let v = oracle_value(&key);
            let orbit = symmetry_orbit(&key).unwrap();
            assert_eq!(orbit[0], (key, HalfInt::ZERO));
            for (image, e) in orbit {
                let e = e.whole("phase").unwrap();
                let w = oracle_value(&image).scale(&ratio(parity_sign(e), 1));
                assert_eq!(v, w, "{key} -> {image}");
            }
        }
    }

    #[test]
    fn variant_breaks_sum_rule_somewhere() {
        let broken = CGKey::enumerate(4)
            .iter()
            .flat_map(|k| symmetry_images_variant(k).unwrap())
            .filter(|l| !l.is_valid())
            .count();
        assert!(broken > 0);
    }

    #[test]
    fn routes_differ_by_dimension() {
        for key in PassageKey::enumerate(4, true) {
            let a = passage_element(&key, Route::Abs, PhiReading::MappedJ2).unwrap();
            let s = passage_element(&key, Route::Signed, PhiReading::MappedJ2).unwrap();
            assert_eq!(s.squared(), a.squared() * ratio(key.j3.twice() + 1, 1), "{key}");
        }
    }

    #[test]
    fn abs_route_ignores_projection_signs() {
        let k = PassageKey::new(h(2), h(-2), h(1), h(-1), h(3)).unwrap();
        let a = passage_element(&k, Route::Abs, PhiReading::LiteralJ2).unwrap();
        let b = passage_element(&k.abs_m(), Route::Abs, PhiReading::LiteralJ2).unwrap();
        assert_eq!(a, b);
    }
}
