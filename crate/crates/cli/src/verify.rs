//! Named verification suites comparing every pipeline with the oracle.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use polarcg::basis::{map_abs_indices, validate_triple, CGKey, PassageKey, PhiReading};
use polarcg::coupling::{
    cg_hypergeometric, cg_laguerre_integral, gaunt_cg, laguerre_integral_key, oracle_value, passage_element,
    radial_selection, symmetry_orbit, threej_value, Formula, Route,
};
use polarcg::exact::{j_values, m_values, parity_sign, ratio, HalfInt, RadicalSum};
use polarcg::polyn::laguerre;
use polarcg::recoupling::{recoupling_matrix, recoupling_oracle_at, recoupling_value, RecouplingLabels};
use polarcg::series::{
    cg_gf_closed_form, cg_gf_integral, expand_3j_gf, expand_cg_gf, laguerre_from_gf, threej_gf_scale, threej_gf_value,
};
use polarcg::Error;

/// Outcome counts of one suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifySuiteResult {
    pub suite: String,
    pub cases: usize,
    pub exact: usize,
    pub magnitude_only: usize,
    pub failures: Vec<CaseFailure>,
    /// Keys left out of the comparison, with the reason.
    pub flagged: Vec<String>,
    /// Whether a sign disagreement counts against the suite.
    pub sign_required: bool,
    pub notes: Vec<String>,
    /// Matched cases whose value is not 0 or ±1, where counted.
    pub nontrivial: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseFailure {
    pub key: String,
    pub values: Vec<(String, String)>,
}

/// Result of comparing one case.
#[derive(Clone, Debug)]
pub enum Outcome {
    Exact,
    MagnitudeOnly,
    Failure(Vec<(String, String)>),
    Flagged(String),
}

impl VerifySuiteResult {
    pub fn new(suite: &str, sign_required: bool) -> Self {
        VerifySuiteResult {
            suite: suite.to_string(),
            sign_required,
            ..Default::default()
        }
    }

    pub fn record(&mut self, key: String, outcome: Outcome) {
        match outcome {
            Outcome::Exact => {
                self.cases += 1;
                self.exact += 1;
            }
            Outcome::MagnitudeOnly => {
                self.cases += 1;
                self.magnitude_only += 1;
            }
            Outcome::Failure(values) => {
                self.cases += 1;
                self.failures.push(CaseFailure { key, values });
            }
            Outcome::Flagged(why) => self.flagged.push(format!("{key}: {why}")),
        }
    }

    fn record_all(&mut self, outcomes: Vec<(String, Outcome)>) {
        for (k, o) in outcomes {
            self.record(k, o);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && (!self.sign_required || self.magnitude_only == 0)
    }
}

impl fmt::Display for VerifySuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} exact, {} magnitude-only, {} failures, {} flagged [{}]",
            self.suite,
            self.cases,
            self.exact,
            self.magnitude_only,
            self.failures.len(),
            self.flagged.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for fl in self.failures.iter().take(10) {
            let vals: Vec<String> = fl.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "\n  failure {}: {}", fl.key, vals.join(", "))?;
        }
        Ok(())
    }
}

/// Compares a value against a reference: exact equality, equal magnitude,
/// or a failure listing both.
pub fn compare(got: &RadicalSum, want: &RadicalSum, got_name: &str) -> Outcome {
    if got == want {
        return Outcome::Exact;
    }
    let neg = -got;
    if &neg == want {
        return Outcome::MagnitudeOnly;
    }
    Outcome::Failure(vec![
        (got_name.into(), got.to_string()),
        ("oracle".into(), want.to_string()),
    ])
}

fn fail_err(e: &Error) -> Outcome {
    Outcome::Failure(vec![("error".into(), e.to_string())])
}

/// The closed `₃F₂` pipeline against the oracle on the absolute-value
/// mapped key, for every passage key with `2j1, 2j2 ≤ max_2j`.
pub fn verify_hypergeometric(max_2j: i64) -> VerifySuiteResult {
    let keys = PassageKey::enumerate(max_2j, false);
    let outcomes: Vec<(String, Outcome)> = keys
        .par_iter()
        .map(|k| {
            let mk = match map_abs_indices(k.j1, k.j2, k.j3, k.m1.abs(), k.m2.abs()) {
                Ok(m) => m,
                Err(e) => return (k.to_string(), fail_err(&e)),
            };
            let want = oracle_value(&mk.key);
            let outcome = match cg_hypergeometric(k) {
                Ok(v) => compare(&v.value(), &want, "hypergeometric"),
                Err(Error::IndeterminateTerm { index }) => {
                    Outcome::Flagged(format!("indeterminate term at index {index}"))
                }
                Err(e) => fail_err(&e),
            };
            (k.to_string(), outcome)
        })
        .collect();
    let mut r = VerifySuiteResult::new("pipelines/hypergeometric", true);
    r.record_all(outcomes);
    r
}

/// The θ-integral pipeline against the oracle on every key with all
/// `2j ≤ max_2j`.
pub fn verify_gaunt(max_2j: i64) -> VerifySuiteResult {
    let keys = CGKey::enumerate(max_2j);
    let outcomes: Vec<(String, Outcome)> = keys
        .par_iter()
        .map(|k| {
            let outcome = match gaunt_cg(k.j1(), k.j2(), k.j3(), k.m1(), k.m2()) {
                Ok(v) => compare(&v.value(), &oracle_value(k), "gaunt"),
                Err(e) => fail_err(&e),
            };
            (k.to_string(), outcome)
        })
        .collect();
    let mut r = VerifySuiteResult::new("pipelines/gaunt", true);
    r.record_all(outcomes);
    r
}

/// The integral representation on `⟨l1 l2; k−l1, l2−k | l, l2−l1⟩` for
/// `2l1, 2l2 ≤ max_2l` and every admissible `(l, k)`; magnitudes are
/// compared.
pub fn verify_laguerre_integral(max_2l: i64) -> VerifySuiteResult {
    let mut cases = Vec::new();
    for l1 in j_values(max_2l) {
        for l2 in j_values(max_2l) {
            let mut l = (l1 - l2).abs();
            while l <= l1 + l2 {
                for k in 0..=l1.twice().min(l2.twice()) {
                    cases.push((l1, l2, l, k));
                }
                l = l + HalfInt::from_int(1);
            }
        }
    }
    let outcomes: Vec<(String, Outcome)> = cases
        .par_iter()
        .map(|&(l1, l2, l, k)| {
            let name = format!("(l1={l1}, l2={l2}, l={l}, k={k})");
            let key = match laguerre_integral_key(l1, l2, l, k) {
                Ok(key) => key,
                Err(e) => return (name, fail_err(&e)),
            };
            let outcome = match cg_laguerre_integral(l1, l2, l, k) {
                Ok(v) => compare(&v.value(), &oracle_value(&key), "integral"),
                Err(e) => fail_err(&e),
            };
            (format!("{name} {key}"), outcome)
        })
        .collect();
    let mut r = VerifySuiteResult::new("pipelines/laguerre-integral", false);
    r.record_all(outcomes);
    r
}

/// Radial selection: only the lowest power survives projection onto
/// `L_n^{2j3+1}`, for every triple with `2j ≤ max_2j`.
pub fn verify_radial(max_2j: i64) -> VerifySuiteResult {
    let mut r = VerifySuiteResult::new("pipelines/radial-selection", false);
    for a in j_values(max_2j) {
        for b in j_values(max_2j) {
            for c in j_values(max_2j) {
                if !validate_triple(a, b, c) {
                    continue;
                }
                let key = format!("({a} {b} {c})");
                let outcome = match radial_selection(a, b, c) {
                    Ok(s) if s.only_origin() => Outcome::Exact,
                    Ok(s) => Outcome::Failure(vec![
                        ("expansion".into(), format!("{:?}", s.by_expansion)),
                        ("overlap".into(), format!("{:?}", s.by_overlap)),
                    ]),
                    Err(e) => fail_err(&e),
                };
                r.record(key, outcome);
            }
        }
    }
    r
}

pub fn pipelines(max_2j: i64) -> Vec<VerifySuiteResult> {
    vec![
        verify_hypergeometric(max_2j),
        verify_gaunt(max_2j),
        verify_laguerre_integral(max_2j.min(4)),
        verify_radial(max_2j.min(6)),
    ]
}

fn orthogonal(rows: &[Vec<RadicalSum>]) -> bool {
    let n = rows.len();
    for i in 0..n {
        for k in 0..n {
            let dot = rows[i]
                .iter()
                .zip(&rows[k])
                .fold(RadicalSum::zero(), |acc, (x, y)| &acc + &(x * y));
            let want = if i == k { RadicalSum::one() } else { RadicalSum::zero() };
            if dot != want {
                return false;
            }
        }
    }
    true
}

/// Orthogonality of every Clebsch–Gordan block `(j1, j2, M)` with
/// `2j1, 2j2 ≤ max_2j`, in both index orders.
pub fn verify_cg_orthogonality(max_2j: i64) -> VerifySuiteResult {
    let mut blocks = Vec::new();
    for j1 in j_values(max_2j) {
        for j2 in j_values(max_2j) {
            let mut m = -(j1 + j2);
            while m <= j1 + j2 {
                blocks.push((j1, j2, m));
                m = m + HalfInt::from_int(1);
            }
        }
    }
    let outcomes: Vec<(String, Outcome)> = blocks
        .par_iter()
        .map(|&(j1, j2, m)| {
            let m1s: Vec<HalfInt> = m_values(j1).filter(|m1| (m - *m1).abs() <= j2).collect();
            let mut j3s = Vec::new();
            let mut j3 = (j1 - j2).abs();
            while j3 <= j1 + j2 {
                if m.abs() <= j3 {
                    j3s.push(j3);
                }
                j3 = j3 + HalfInt::from_int(1);
            }
            let by_m: Vec<Vec<RadicalSum>> = m1s
                .iter()
                .map(|&m1| {
                    j3s.iter()
                        .map(|&j3| oracle_value(&CGKey::new(j1, j2, j3, m1, m - m1).expect("valid block key")))
                        .collect()
                })
                .collect();
            let by_j: Vec<Vec<RadicalSum>> = (0..j3s.len())
                .map(|c| by_m.iter().map(|row| row[c].clone()).collect())
                .collect();
            let ok = m1s.len() == j3s.len() && orthogonal(&by_m) && orthogonal(&by_j);
            let outcome = if ok {
                Outcome::Exact
            } else {
                Outcome::Failure(vec![("size".into(), format!("{}x{}", m1s.len(), j3s.len()))])
            };
            (format!("(j1={j1}, j2={j2}, M={m})"), outcome)
        })
        .collect();
    let mut r = VerifySuiteResult::new("orthogonality/cg", true);
    r.record_all(outcomes);
    r
}

/// Orthogonality of the recoupling matrices between `(j12, j34)` and
/// `(j14, j23)` at fixed outer momenta with `2j ≤ max_2j`.
pub fn verify_recoupling_unitarity(max_2j: i64) -> VerifySuiteResult {
    let mut outer = Vec::new();
    for a in j_values(max_2j) {
        for b in j_values(max_2j) {
            for c in j_values(max_2j) {
                for d in j_values(max_2j) {
                    for j in j_values(max_2j) {
                        outer.push((a, b, c, d, j));
                    }
                }
            }
        }
    }
    let outcomes: Vec<(String, Outcome)> = outer
        .par_iter()
        .filter_map(|&(a, b, c, d, j)| {
            let name = format!("(j1={a}, j2={b}, j3={c}, j4={d}, j={j})");
            match recoupling_matrix(a, b, c, d, j) {
                Ok(m) if m.rows.is_empty() => None,
                Ok(m) if m.is_orthogonal() => Some((name, Outcome::Exact)),
                Ok(m) => Some((
                    name,
                    Outcome::Failure(vec![("size".into(), format!("{}x{}", m.rows.len(), m.cols.len()))]),
                )),
                Err(e) => Some((name, fail_err(&e))),
            }
        })
        .collect();
    let mut r = VerifySuiteResult::new("orthogonality/recoupling", true);
    r.record_all(outcomes);
    r
}

pub fn orthogonality(max_2j: i64) -> Vec<VerifySuiteResult> {
    vec![
        verify_cg_orthogonality(max_2j),
        verify_recoupling_unitarity(max_2j.min(3)),
    ]
}

/// Every sign-flip image of every 3j symbol with `2j ≤ max_2j` has the
/// same modulus; exact when the signed values agree too. The observed
/// phase exponents of the coupling-coefficient relation are tallied.
pub fn verify_symmetry(max_2j: i64) -> VerifySuiteResult {
    let keys = CGKey::enumerate(max_2j);
    let results: Vec<(Vec<(String, Outcome)>, Vec<i64>)> = keys
        .par_iter()
        .map(|k| {
            let orig = threej_value(k.j1(), k.j2(), k.j3(), k.m1(), k.m2(), -k.m3()).expect("valid key");
            let cg = oracle_value(k);
            let mut out = Vec::new();
            let mut phases = Vec::new();
            match symmetry_orbit(k) {
                Ok(orbit) => {
                    for (image, e) in orbit.into_iter().skip(1) {
                        let name = format!("{k} -> {image}");
                        let v = threej_value(image.j1(), image.j2(), image.j3(), image.m1(), image.m2(), -image.m3())
                            .expect("valid image");
                        let mut outcome = compare(&v, &orig, "image 3j");
                        if let Outcome::Failure(_) = outcome {
                        } else {
                            let e = e.whole("phase").expect("whole phase");
                            phases.push(e.rem_euclid(2));
                            let related = oracle_value(&image).scale(&ratio(parity_sign(e), 1));
                            if related != cg {
                                outcome = Outcome::Failure(vec![
                                    ("cg relation".into(), related.to_string()),
                                    ("oracle".into(), cg.to_string()),
                                ]);
                            }
                        }
                        out.push((name, outcome));
                    }
                }
                Err(e) => out.push((k.to_string(), fail_err(&e))),
            }
            (out, phases)
        })
        .collect();
    let mut r = VerifySuiteResult::new("symmetry", false);
    let mut tally = BTreeMap::new();
    for (outs, phases) in results {
        r.record_all(outs);
        for p in phases {
            *tally.entry(p).or_insert(0usize) += 1;
        }
    }
    r.notes.push(format!(
        "distinct images: {}; coupling-coefficient phase (-1)^e with e even: {}, e odd: {}",
        r.cases,
        tally.get(&0).unwrap_or(&0),
        tally.get(&1).unwrap_or(&0)
    ));
    r
}

/// Laguerre generating function against the series definition.
pub fn verify_laguerre_gf(max_n: u32, max_alpha: i64) -> VerifySuiteResult {
    let mut r = VerifySuiteResult::new("gf/laguerre", true);
    for n in 0..=max_n {
        for alpha in 0..=max_alpha {
            let outcome = match laguerre_from_gf(n, alpha) {
                Ok(p) if p == laguerre(n, alpha) => Outcome::Exact,
                Ok(p) => Outcome::Failure(vec![
                    ("gf".into(), p.to_string()),
                    ("laguerre".into(), laguerre(n, alpha).to_string()),
                ]),
                Err(e) => fail_err(&e),
            };
            r.record(format!("(n={n}, alpha={alpha})"), outcome);
        }
    }
    r
}

/// Schwinger 3j generating function expanded to `order` factors against
/// the signed passage route, for every passage key with all `2j ≤ max_2j`.
pub fn verify_threej_gf(order: u32, max_2j: i64) -> VerifySuiteResult {
    let mut r = VerifySuiteResult::new("gf/3j", false);
    let coeffs = match expand_3j_gf(order) {
        Ok(c) => c,
        Err(e) => {
            r.record("expansion".into(), fail_err(&e));
            return r;
        }
    };
    let scale = threej_gf_scale();
    for key in PassageKey::enumerate(max_2j, false) {
        if key.j3.twice() > max_2j {
            continue;
        }
        let name = key.to_string();
        let want = match passage_element(&key, Route::Signed, PhiReading::MappedJ2) {
            Ok(v) => v.value(),
            Err(e) => {
                r.record(name, fail_err(&e));
                continue;
            }
        };
        let got = match coeffs.get(&key) {
            Some(c) => match threej_gf_value(&key, c, Formula::Corrected) {
                Ok(v) => v.scale(scale),
                Err(e) => {
                    r.record(name, fail_err(&e));
                    continue;
                }
            },
            None => RadicalSum::zero(),
        };
        r.record(name, compare(&got, &want, "gf"));
    }
    r.notes
        .push(format!("expansion order {order} (variable degree {})", 3 * order));
    r
}

/// Two-parameter CG generating function: the integral side expanded to
/// total degree `degree` reproduces the `₃F₂` pipeline, and the derived
/// closed form equals the integral, for `2j3 ≤ max_2j`.
pub fn verify_cg_gf(degree: u32, max_2j: i64) -> VerifySuiteResult {
    let mut r = VerifySuiteResult::new("gf/cg", true);
    let mut closed_mismatch = 0;
    for j3 in j_values(max_2j) {
        for a1 in j_values(j3.twice()) {
            for a2 in j_values(j3.twice()) {
                if a1 + a2 > j3 || !(j3 - a1 - a2).is_integer() {
                    continue;
                }
                let lhs = cg_gf_integral(j3, a1, a2, degree);
                let rhs = cg_gf_closed_form(j3, a1, a2, degree, Formula::Corrected);
                match (lhs, rhs) {
                    (Ok(l), Ok(rr)) if l == rr => {}
                    _ => closed_mismatch += 1,
                }
                let values = match expand_cg_gf(j3, a1, a2, degree) {
                    Ok(v) => v,
                    Err(e) => {
                        r.record(format!("(j3={j3}, |m1|={a1}, |m2|={a2})"), fail_err(&e));
                        continue;
                    }
                };
                for ((n1, n), v) in values {
                    let j1 = HalfInt::from_int(n1 as i64) + a1;
                    let j2 = j3 + HalfInt::from_int(n as i64) - j1;
                    let name = format!("(j3={j3}, |m1|={a1}, |m2|={a2}, n1={n1}, n={n})");
                    let outcome = match PassageKey::new(j1, a1, j2, a2, j3).and_then(|k| cg_hypergeometric(&k)) {
                        Ok(want) => compare(&v.value(), &want.value(), "gf"),
                        Err(Error::IndeterminateTerm { index }) => {
                            Outcome::Flagged(format!("indeterminate term at index {index}"))
                        }
                        Err(e) => fail_err(&e),
                    };
                    r.record(name, outcome);
                }
            }
        }
    }
    if closed_mismatch > 0 {
        r.record(
            "closed form".into(),
            Outcome::Failure(vec![("mismatching parameter sets".into(), closed_mismatch.to_string())]),
        );
    }
    r.notes.push(format!(
        "degree {degree}; derived closed form equals the integral expansion"
    ));
    r
}

pub fn gf(max_2j: i64) -> Vec<VerifySuiteResult> {
    vec![
        verify_laguerre_gf(6, 4),
        verify_threej_gf(8, max_2j),
        verify_cg_gf(6, 6),
    ]
}

/// Generating-function recoupling values against the contraction, in
/// magnitude, for every configuration with all `2j ≤ max_2j`; also checks
/// that the contraction does not depend on the projection chosen.
pub fn verify_recoupling(max_2j: i64) -> VerifySuiteResult {
    let labels = RecouplingLabels::enumerate(max_2j);
    let outcomes: Vec<(String, Outcome, bool)> = labels
        .par_iter()
        .map(|l| {
            let name = l.to_string();
            let want = match recoupling_oracle_at(l, l.j) {
                Ok(v) => v,
                Err(e) => return (name, fail_err(&e), false),
            };
            for m in m_values(l.j) {
                match recoupling_oracle_at(l, m) {
                    Ok(v) if v == want => {}
                    Ok(v) => {
                        return (
                            name,
                            Outcome::Failure(vec![
                                (format!("oracle at m={m}"), v.to_string()),
                                ("oracle".into(), want.to_string()),
                            ]),
                            false,
                        )
                    }
                    Err(e) => return (name, fail_err(&e), false),
                }
            }
            let nontrivial = !want.is_zero() && want != RadicalSum::one() && want != -RadicalSum::one();
            let outcome = match recoupling_value(l) {
                Ok(v) => compare(&v.value(), &want, "gf"),
                Err(e) => fail_err(&e),
            };
            (name, outcome, nontrivial)
        })
        .collect();
    let mut r = VerifySuiteResult::new("recoupling", false);
    let mut nontrivial = 0;
    for (name, o, nt) in outcomes {
        if nt && !matches!(o, Outcome::Failure(_)) {
            nontrivial += 1;
        }
        r.record(name, o);
    }
    r.nontrivial = Some(nontrivial);
    r.notes.push(format!(
        "nontrivial configurations matched (|value| not 0 or 1): {nontrivial}"
    ));
    r
}

pub fn recoupling(max_2j: i64) -> Vec<VerifySuiteResult> {
    vec![verify_recoupling(max_2j)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in pipelines(3) {
            assert!(r.passed(), "{r}");
        }
        for r in orthogonality(2) {
            assert!(r.passed(), "{r}");
        }
        assert!(verify_symmetry(3).passed());
        assert!(verify_threej_gf(5, 2).passed());
        assert!(verify_cg_gf(3, 3).passed());
        let rec = verify_recoupling(1);
        assert!(rec.passed(), "{rec}");
    }

    #[test]
    fn counts_add_up() {
        let r = verify_hypergeometric(2);
        assert_eq!(r.cases, r.exact + r.magnitude_only + r.failures.len());
        let mut r = VerifySuiteResult::new("x", true);
        r.record("a".into(), Outcome::MagnitudeOnly);
        assert!(!r.passed());
        r.sign_required = false;
        assert!(r.passed());
    }
}
