//! Exact symbols against independent floating-point Racah formulas and
//! tabulated closed forms.

use polarcg::basis::{validate_triple, CGKey};
use polarcg::coupling::{oracle_value, threej_value};
use polarcg::exact::{j_values, parity_sign, ratio, HalfInt, RadicalSum};
use polarcg::recoupling::{ninej_value, sixj_value};
use proptest::prelude::*;

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn f(n: f64) -> f64 {
    (1..=(n.round() as i64)).map(|k| k as f64).product()
}

fn racah_cg(j1: f64, j2: f64, j: f64, m1: f64, m2: f64) -> f64 {
    let m = m1 + m2;
    let pre = ((2.0 * j + 1.0) * f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j) / f(j1 + j2 + j + 1.0)).sqrt()
        * (f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2)).sqrt();
    let mut sum = 0.0;
    for k in 0..=((j1 + j2 - j).round() as i64) {
        let k = k as f64;
        let d = [
            j1 + j2 - j - k,
            j1 - m1 - k,
            j2 + m2 - k,
            j - j2 + m1 + k,
            j - j1 - m2 + k,
        ];
        if d.iter().any(|x| *x < -1e-9) {
            continue;
        }
        let sign = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / (f(k) * d.iter().map(|x| f(*x)).product::<f64>());
    }
    pre * sum
}

fn delta(a: f64, b: f64, c: f64) -> f64 {
    (f(a + b - c) * f(a - b + c) * f(-a + b + c) / f(a + b + c + 1.0)).sqrt()
}

fn racah_sixj(a: f64, b: f64, c: f64, d: f64, e: f64, g: f64) -> f64 {
    let t = [a + b + c, a + e + g, d + b + g, d + e + c];
    let p = [a + b + d + e, a + c + d + g, b + c + e + g];
    let lo = t.iter().cloned().fold(f64::MIN, f64::max).round() as i64;
    let hi = p.iter().cloned().fold(f64::MAX, f64::min).round() as i64;
    let mut sum = 0.0;
    for z in lo..=hi {
        let zf = z as f64;
        let den: f64 = t.iter().map(|x| f(zf - x)).product::<f64>() * p.iter().map(|x| f(x - zf)).product::<f64>();
        let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * f(zf + 1.0) / den;
    }
    delta(a, b, c) * delta(a, e, g) * delta(d, b, g) * delta(d, e, c) * sum
}

#[test]
fn cg_matches_float_racah() {
    for key in CGKey::enumerate(6) {
        let t = key.twice().map(|x| x as f64 / 2.0);
        let want = racah_cg(t[0], t[1], t[2], t[3], t[4]);
        let got = oracle_value(&key).to_f64();
        assert!((got - want).abs() < 1e-10, "{key}: {got} vs {want}");
    }
}

#[test]
fn sixj_matches_float_racah() {
    let js: Vec<HalfInt> = j_values(4).collect();
    for &a in &js {
        for &b in &js {
            for &c in &js {
                for &d in &js {
                    for &e in &js {
                        for &g in &js {
                            if !(validate_triple(a, b, c)
                                && validate_triple(a, e, g)
                                && validate_triple(d, b, g)
                                && validate_triple(d, e, c))
                            {
                                continue;
                            }
                            let got = sixj_value(a, b, c, d, e, g).unwrap().to_f64();
                            let x = |v: HalfInt| v.to_f64();
                            let want = racah_sixj(x(a), x(b), x(c), x(d), x(e), x(g));
                            assert!((got - want).abs() < 1e-10, "{a} {b} {c} {d} {e} {g}: {got} vs {want}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn tabulated_values() {
    let cg = |t: [i64; 5]| oracle_value(&CGKey::from_twice(t).unwrap()).to_string();
    assert_eq!(cg([2, 2, 4, 0, 0]), "(1/1)*sqrt(2/3)");
    assert_eq!(cg([2, 2, 0, 2, -2]), "(1/1)*sqrt(1/3)");
    assert_eq!(cg([1, 1, 0, 1, -1]), "(1/1)*sqrt(1/2)");
    assert_eq!(cg([1, 1, 0, -1, 1]), "-(1/1)*sqrt(1/2)");
    assert_eq!(
        threej_value(h(2), h(2), h(0), h(0), h(0), h(0)).unwrap().to_string(),
        "-(1/1)*sqrt(1/3)"
    );
    assert_eq!(
        sixj_value(h(2), h(2), h(2), h(2), h(2), h(2)).unwrap().to_string(),
        "1/6"
    );
    assert_eq!(
        sixj_value(h(1), h(1), h(2), h(1), h(1), h(0)).unwrap().to_string(),
        "1/2"
    );
}

#[test]
fn ninej_with_a_zero_reduces_to_sixj() {
    // {a b e; c d e; f f 0} = (−1)^{b+c+e+f} / √((2e+1)(2f+1)) · {a b e; d c f}
    for a in j_values(2) {
        for b in j_values(2) {
            for c in j_values(2) {
                for d in j_values(2) {
                    for e in j_values(4) {
                        for g in j_values(4) {
                            let ok = validate_triple(a, b, e)
                                && validate_triple(c, d, e)
                                && validate_triple(a, c, g)
                                && validate_triple(b, d, g);
                            if !ok {
                                continue;
                            }
                            let nine = ninej_value([[a, b, e], [c, d, e], [g, g, HalfInt::ZERO]]).unwrap();
                            let six = sixj_value(a, b, e, d, c, g).unwrap();
                            let phase = (b + c + e + g).to_int().unwrap();
                            let norm = RadicalSum::sqrt_of(&ratio(1, (e.twice() + 1) * (g.twice() + 1))).unwrap();
                            let want = (&six * &norm).scale(&ratio(parity_sign(phase), 1));
                            assert_eq!(nine, want, "{a} {b} {e}; {c} {d} {e}; {g} {g} 0");
                        }
                    }
                }
            }
        }
    }
}

fn cg_key() -> impl Strategy<Value = CGKey> {
    let keys = CGKey::enumerate(6);
    (0..keys.len()).prop_map(move |i| keys[i])
}

proptest! {
    #[test]
    fn exchange_symmetry(key in cg_key()) {
        // ⟨j1 m1 j2 m2 | J M⟩ = (−1)^{j1+j2−J} ⟨j2 m2 j1 m1 | J M⟩
        let swapped = CGKey::new(key.j2(), key.j1(), key.j3(), key.m2(), key.m1()).unwrap();
        let e = (key.j1() + key.j2() - key.j3()).to_int().unwrap();
        let want = oracle_value(&swapped).scale(&ratio(parity_sign(e), 1));
        prop_assert_eq!(oracle_value(&key), want);
    }

    #[test]
    fn projection_reversal(key in cg_key()) {
        // ⟨j1 −m1 j2 −m2 | J −M⟩ = (−1)^{j1+j2−J} ⟨j1 m1 j2 m2 | J M⟩
        let flipped = CGKey::new(key.j1(), key.j2(), key.j3(), -key.m1(), -key.m2()).unwrap();
        let e = (key.j1() + key.j2() - key.j3()).to_int().unwrap();
        let want = oracle_value(&key).scale(&ratio(parity_sign(e), 1));
        prop_assert_eq!(oracle_value(&flipped), want);
    }

    #[test]
    fn squares_are_rational(key in cg_key()) {
        prop_assert!(oracle_value(&key).square().as_rational().is_some());
    }
}
