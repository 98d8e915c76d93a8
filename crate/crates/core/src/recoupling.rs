//! Recoupling of four angular momenta, 6j and 9j symbols: a Schwinger
//! generating-function route paired in Fock–Bargmann space, checked against
//! the direct contraction of Clebsch–Gordan coefficients.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::basis::{validate_triple, CGKey};
use crate::coupling::{oracle_value, rational_ratio, CGValue};
use crate::error::{domain, Error, Result};
use crate::exact::{m_values, parity_sign, ratio, HalfInt, RadicalSum};
use crate::series::{bargmann_pair, MultiSeries};

/// Spinor components of the four momenta and the total, then the formal
/// markers selecting the coupled sector.
pub const RECOUPLING_VARS: [&str; 19] = [
    "a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2", "z1", "z2", "alpha1", "alpha2", "alpha3", "beta1", "beta2",
    "beta3", "gamma1", "gamma2", "gamma3",
];
const SPINORS: usize = 10;

/// Largest number of quadratic-form factors expanded by default.
pub const DEFAULT_BUDGET: u32 = 10;

/// `⟨((j1 j2) j12, (j3 j4) j34) j | ((j1 j4) j14, (j2 j3) j23) j⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RecouplingLabels {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub j3: HalfInt,
    pub j4: HalfInt,
    pub j12: HalfInt,
    pub j34: HalfInt,
    pub j14: HalfInt,
    pub j23: HalfInt,
    pub j: HalfInt,
}

impl RecouplingLabels {
    pub fn new(js: [HalfInt; 9]) -> Self {
        let [j1, j2, j3, j4, j12, j34, j14, j23, j] = js;
        RecouplingLabels {
            j1,
            j2,
            j3,
            j4,
            j12,
            j34,
            j14,
            j23,
            j,
        }
    }

    pub fn as_array(&self) -> [HalfInt; 9] {
        [
            self.j1, self.j2, self.j3, self.j4, self.j12, self.j34, self.j14, self.j23, self.j,
        ]
    }

    fn triads(&self) -> [(HalfInt, HalfInt, HalfInt, &'static str); 6] {
        [
            (self.j1, self.j2, self.j12, "(j1 j2 j12)"),
            (self.j3, self.j4, self.j34, "(j3 j4 j34)"),
            (self.j1, self.j4, self.j14, "(j1 j4 j14)"),
            (self.j2, self.j3, self.j23, "(j2 j3 j23)"),
            (self.j12, self.j34, self.j, "(j12 j34 j)"),
            (self.j14, self.j23, self.j, "(j14 j23 j)"),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.triads().iter().all(|(a, b, c, _)| validate_triple(*a, *b, *c))
    }

    pub fn validate(&self) -> Result<()> {
        for (a, b, c, name) in self.triads() {
            if !validate_triple(a, b, c) {
                return domain(format!("triangle rule fails for {name} = ({a}, {b}, {c})"));
            }
        }
        Ok(())
    }

    /// Number of quadratic-form factors in the selected sector,
    /// `j1 + j2 + j3 + j4 + j`.
    pub fn order(&self) -> u32 {
        let t = self.j1 + self.j2 + self.j3 + self.j4 + self.j;
        (t.twice() / 2) as u32
    }

    /// All valid label sets with every `2j ≤ max_twice`, in sorted order.
    pub fn enumerate(max_twice: i64) -> Vec<RecouplingLabels> {
        let js: Vec<HalfInt> = (0..=max_twice).map(HalfInt::from_twice).collect();
        let mut out = Vec::new();
        for &j1 in &js {
            for &j2 in &js {
                for &j3 in &js {
                    for &j4 in &js {
                        for &j12 in &js {
                            if !validate_triple(j1, j2, j12) {
                                continue;
                            }
                            for &j34 in &js {
                                if !validate_triple(j3, j4, j34) {
                                    continue;
                                }
                                for &j in &js {
                                    if !validate_triple(j12, j34, j) {
                                        continue;
                                    }
                                    for &j14 in &js {
                                        for &j23 in &js {
                                            let l = RecouplingLabels::new([j1, j2, j3, j4, j12, j34, j14, j23, j]);
                                            if l.is_valid() {
                                                out.push(l);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for RecouplingLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<(({} {}){}, ({} {}){}){} | (({} {}){}, ({} {}){}){}>",
            self.j1,
            self.j2,
            self.j12,
            self.j3,
            self.j4,
            self.j34,
            self.j,
            self.j1,
            self.j4,
            self.j14,
            self.j2,
            self.j3,
            self.j23,
            self.j
        )
    }
}

impl FromStr for RecouplingLabels {
    type Err = Error;

    /// Nine comma-separated values `j1,j2,j3,j4,j12,j34,j14,j23,j`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<HalfInt> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_>>()?;
        let js: [HalfInt; 9] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("expected nine values, got `{s}`")))?;
        Ok(RecouplingLabels::new(js))
    }
}

/// Which coupling order a quadratic form encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// `(j1 j2) j12, (j3 j4) j34` on spinor slots `(a b c d)`.
    First,
    /// `(j1 j4) j14, (j3 j2) j23` on slots `(a d c b)`.
    Second,
}

/// A bilinear family `[xy] = x1 y2 − x2 y1` or `(xy) = x1 y1 + x2 y2` with
/// its marker monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub antisymmetric: bool,
    pub x: char,
    pub y: char,
    pub markers: &'static [&'static str],
}

/// The exponent of a recoupling generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingForm {
    pub side: Side,
    pub families: Vec<Family>,
    pub quadratic: MultiSeries,
}

fn spinor_index(x: char) -> usize {
    match x {
        'a' => 0,
        'b' => 2,
        'c' => 4,
        'd' => 6,
        'z' => 8,
        _ => unreachable!("unknown spinor {x}"),
    }
}

fn marker_index(name: &str) -> usize {
    RECOUPLING_VARS.iter().position(|v| *v == name).expect("known marker")
}

fn families(side: Side) -> Vec<Family> {
    // slots (p, q, r, t) = (a, b, c, d) on the first side, (a, d, c, b) on the second
    let (p, q, r, t) = match side {
        Side::First => ('a', 'b', 'c', 'd'),
        Side::Second => ('a', 'd', 'c', 'b'),
    };
    let fam = |antisymmetric, x, y, markers| Family {
        antisymmetric,
        x,
        y,
        markers,
    };
    vec![
        fam(true, p, q, &["alpha3"]),
        fam(true, r, t, &["beta3"]),
        fam(true, q, t, &["gamma3", "alpha1", "beta1"]),
        fam(true, q, r, &["gamma3", "alpha1", "beta2"]),
        fam(true, p, t, &["gamma3", "alpha2", "beta1"]),
        fam(true, p, r, &["gamma3", "alpha2", "beta2"]),
        fam(false, 'z', p, &["gamma2", "alpha2"]),
        fam(false, 'z', q, &["gamma2", "alpha1"]),
        fam(false, 'z', r, &["gamma1", "beta2"]),
        fam(false, 'z', t, &["gamma1", "beta1"]),
    ]
}

/// The quadratic form of one coupling order, with every marker carried as
/// a formal variable.
pub fn build_coupling_form(side: Side, trunc: u32) -> CouplingForm {
    let fams = families(side);
    let mut q = MultiSeries::zero(&RECOUPLING_VARS, trunc);
    for f in &fams {
        let (x, y) = (spinor_index(f.x), spinor_index(f.y));
        let mut base = vec![0u32; RECOUPLING_VARS.len()];
        for m in f.markers {
            base[marker_index(m)] += 1;
        }
        let pairs: [(usize, usize, i64); 2] = if f.antisymmetric {
            [(x, y + 1, 1), (x + 1, y, -1)]
        } else {
            [(x, y, 1), (x + 1, y + 1, 1)]
        };
        for (i, k, sign) in pairs {
            let mut e = base.clone();
            e[i] += 1;
            e[k] += 1;
            q.insert(e, ratio(sign, 1));
        }
    }
    CouplingForm {
        side,
        families: fams,
        quadratic: q,
    }
}

/// Marker exponents `(α1, α2, α3, β1, β2, β3, γ1, γ2, γ3)` for coupling
/// `(ja jb) jab` on the first pair, `(jc jd) jcd` on the second, to total
/// `j`: `α3 = ja+jb−jab`, `α2 = ja+jab−jb`, `α1 = jb+jab−ja`, likewise for
/// `β`, and `γ3 = jab+jcd−j`, `γ2 = jab+j−jcd`, `γ1 = jcd+j−jab`.
fn marker_exponents(
    ja: HalfInt,
    jb: HalfInt,
    jab: HalfInt,
    jc: HalfInt,
    jd: HalfInt,
    jcd: HalfInt,
    j: HalfInt,
) -> [u32; 9] {
    let w = |h: HalfInt| (h.twice() / 2) as u32;
    [
        w(jb + jab - ja),
        w(ja + jab - jb),
        w(ja + jb - jab),
        w(jd + jcd - jc),
        w(jc + jcd - jd),
        w(jc + jd - jcd),
        w(jcd + j - jab),
        w(jab + j - jcd),
        w(jab + jcd - j),
    ]
}

/// The polynomial in the ten spinor components multiplying the marker
/// monomial of `labels` in `exp(form)` for `side`.
pub fn sector_polynomial(labels: &RecouplingLabels, side: Side) -> Result<MultiSeries> {
    let l = labels;
    let markers = match side {
        Side::First => marker_exponents(l.j1, l.j2, l.j12, l.j3, l.j4, l.j34, l.j),
        Side::Second => marker_exponents(l.j1, l.j4, l.j14, l.j3, l.j2, l.j23, l.j),
    };
    let t = |h: HalfInt| h.twice() as u32;
    let spin_caps = [
        t(l.j1),
        t(l.j1),
        t(l.j2),
        t(l.j2),
        t(l.j3),
        t(l.j3),
        t(l.j4),
        t(l.j4),
        t(l.j),
        t(l.j),
    ];
    let caps: Vec<u32> = spin_caps.iter().chain(markers.iter()).copied().collect();
    let trunc = 2 * labels.order() + markers.iter().sum::<u32>();
    let form = build_coupling_form(side, trunc).quadratic.with_caps(caps)?;
    let fixed: Vec<(&str, u32)> = RECOUPLING_VARS[SPINORS..].iter().copied().zip(markers).collect();
    form.exp()?.coefficient_of(&fixed)
}

/// Unnormalized overlap `⟨P', P⟩ / √(⟨P, P⟩ ⟨P', P'⟩)` of the two sector
/// polynomials under the Fock–Bargmann pairing.
fn raw_recoupling(labels: &RecouplingLabels, budget: u32) -> Result<RadicalSum> {
    labels.validate()?;
    let order = labels.order();
    if order > budget {
        return Err(Error::Budget {
            required: order,
            budget,
        });
    }
    let first = sector_polynomial(labels, Side::First)?;
    let second = sector_polynomial(labels, Side::Second)?;
    let spinors = &RECOUPLING_VARS[..SPINORS];
    let scalar = |f: &MultiSeries, g: &MultiSeries| -> Result<BigRational> {
        Ok(bargmann_pair(f, g, spinors)?
            .terms()
            .next()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero))
    };
    let cross = scalar(&second, &first)?;
    let n1 = scalar(&first, &first)?;
    let n2 = scalar(&second, &second)?;
    if n1.is_zero() || n2.is_zero() {
        return Err(Error::Consistency(format!("empty coupled sector for {labels}")));
    }
    Ok(RadicalSum::sqrt_of(&(BigRational::one() / (n1 * n2)))?.scale(&cross))
}

/// The trivial configuration `j1 = j12 = j14 = j = ½`, others zero, used to
/// fix the overall normalization.
fn trivial_labels() -> RecouplingLabels {
    let (z, h) = (HalfInt::ZERO, HalfInt::from_twice(1));
    RecouplingLabels::new([h, z, z, z, h, z, h, z, h])
}

/// The normalization fixed once at the trivial configuration.
pub fn recoupling_scale() -> &'static BigRational {
    static SCALE: OnceLock<BigRational> = OnceLock::new();
    SCALE.get_or_init(|| {
        let raw = raw_recoupling(&trivial_labels(), DEFAULT_BUDGET).expect("trivial configuration");
        rational_ratio(&RadicalSum::one(), &raw).expect("trivial overlap is rational")
    })
}

/// Recoupling coefficient read off the paired generating functions.
pub fn recoupling_value(labels: &RecouplingLabels) -> Result<CGValue> {
    recoupling_value_with_budget(labels, DEFAULT_BUDGET)
}

/// [`recoupling_value`] refusing expansions of more than `budget` factors.
pub fn recoupling_value_with_budget(labels: &RecouplingLabels, budget: u32) -> Result<CGValue> {
    let v = raw_recoupling(labels, budget)?.scale(recoupling_scale());
    if v.is_zero() {
        return Ok(CGValue::zero());
    }
    CGValue::from_value(&v)
}

fn cg_or_zero(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt) -> RadicalSum {
    CGKey::new(j1, j2, j3, m1, m2)
        .map(|k| oracle_value(&k))
        .unwrap_or_else(|_| RadicalSum::zero())
}

/// Direct contraction of six Clebsch–Gordan coefficients at total
/// projection `m`.
pub fn recoupling_oracle_at(labels: &RecouplingLabels, m: HalfInt) -> Result<RadicalSum> {
    labels.validate()?;
    let l = labels;
    if m.abs() > l.j || !(l.j - m).is_integer() {
        return domain(format!("projection {m} not allowed for j = {}", l.j));
    }
    let mut sum = RadicalSum::zero();
    for m1 in m_values(l.j1) {
        for m2 in m_values(l.j2) {
            for m3 in m_values(l.j3) {
                let m4 = m - m1 - m2 - m3;
                if m4.abs() > l.j4 || !(l.j4 - m4).is_integer() {
                    continue;
                }
                let left = [
                    cg_or_zero(l.j1, l.j2, l.j12, m1, m2),
                    cg_or_zero(l.j3, l.j4, l.j34, m3, m4),
                    cg_or_zero(l.j12, l.j34, l.j, m1 + m2, m3 + m4),
                ];
                let right = [
                    cg_or_zero(l.j1, l.j4, l.j14, m1, m4),
                    cg_or_zero(l.j2, l.j3, l.j23, m2, m3),
                    cg_or_zero(l.j14, l.j23, l.j, m1 + m4, m2 + m3),
                ];
                if left.iter().chain(right.iter()).any(RadicalSum::is_zero) {
                    continue;
                }
                let term = left
                    .iter()
                    .chain(right.iter())
                    .fold(RadicalSum::one(), |acc, v| &acc * v);
                sum += &term;
            }
        }
    }
    Ok(sum)
}

/// [`recoupling_oracle_at`] with `m = j`.
pub fn recoupling_oracle(labels: &RecouplingLabels) -> Result<CGValue> {
    let v = recoupling_oracle_at(labels, labels.j)?;
    if v.is_zero() {
        return Ok(CGValue::zero());
    }
    CGValue::from_value(&v)
}

/// `{a b c; d e f}`, zero when a triangle condition fails.
pub fn sixj(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt) -> Result<CGValue> {
    Ok(CGValue::from_value(&sixj_value(a, b, c, d, e, f)?)?)
}

/// The 6j symbol as a radical: `(−1)^{a+b+d+e} R / √((2c+1)(2f+1))` with `R`
/// the contraction recoupling `((a b) c, d) e` to `(a, (b d) f) e`.
pub fn sixj_value(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt) -> Result<RadicalSum> {
    for x in [a, b, c, d, e, f] {
        if !x.is_nonnegative() {
            return domain(format!("negative angular momentum {x}"));
        }
    }
    let ok =
        validate_triple(a, b, c) && validate_triple(a, e, f) && validate_triple(d, b, f) && validate_triple(d, e, c);
    if !ok {
        return Ok(RadicalSum::zero());
    }
    let labels = RecouplingLabels::new([a, b, d, HalfInt::ZERO, c, d, a, f, e]);
    let r = recoupling_oracle_at(&labels, e)?;
    let phase = (a + b + d + e).whole("a + b + d + e")?;
    let norm = RadicalSum::sqrt_of(&ratio(1, (c.twice() + 1) * (f.twice() + 1)))?;
    Ok((&r * &norm).scale(&ratio(parity_sign(phase), 1)))
}

/// `{j1 j2 j12; j3 j4 j34; j13 j24 j}` as
/// `Σ_x (−1)^{2x} (2x+1) {j1 j3 j13; j24 j x} {j2 j4 j24; j3 x j34} {j12 j34 j; x j1 j2}`,
/// zero when a row or column triangle fails.
pub fn ninej(rows: [[HalfInt; 3]; 3]) -> Result<CGValue> {
    Ok(CGValue::from_value(&ninej_value(rows)?)?)
}

pub fn ninej_value(rows: [[HalfInt; 3]; 3]) -> Result<RadicalSum> {
    let [[j1, j2, j12], [j3, j4, j34], [j13, j24, j]] = rows;
    if rows.iter().flatten().any(|x| !x.is_nonnegative()) {
        return domain("negative angular momentum in 9j symbol");
    }
    let triads = [
        (j1, j2, j12),
        (j3, j4, j34),
        (j13, j24, j),
        (j1, j3, j13),
        (j2, j4, j24),
        (j12, j34, j),
    ];
    if !triads.iter().all(|(a, b, c)| validate_triple(*a, *b, *c)) {
        return Ok(RadicalSum::zero());
    }
    let lo = (j1 - j).abs().max((j2 - j34).abs()).max((j3 - j24).abs());
    let hi = (j1 + j).min(j2 + j34).min(j3 + j24);
    let mut sum = RadicalSum::zero();
    let mut x = lo;
    while x <= hi {
        let a = sixj_value(j1, j3, j13, j24, j, x)?;
        let b = sixj_value(j2, j4, j24, j3, x, j34)?;
        let c = sixj_value(j12, j34, j, x, j1, j2)?;
        let weight = ratio(parity_sign(x.twice()) * (x.twice() + 1), 1);
        sum += &(&(&a * &b) * &c).scale(&weight);
        x = x + HalfInt::from_int(1);
    }
    Ok(sum)
}

/// Recoupling matrix at fixed `(j1, j2, j3, j4, j)`: rows `(j12, j34)`,
/// columns `(j14, j23)`, entries from the contraction.
#[derive(Clone, Debug)]
pub struct RecouplingMatrix {
    pub rows: Vec<(HalfInt, HalfInt)>,
    pub cols: Vec<(HalfInt, HalfInt)>,
    pub entries: Vec<Vec<RadicalSum>>,
}

pub fn recoupling_matrix(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j: HalfInt) -> Result<RecouplingMatrix> {
    let pairs = |a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt| -> Vec<(HalfInt, HalfInt)> {
        let mut out = Vec::new();
        let mut x = (a - b).abs();
        while x <= a + b {
            let mut y = (c - d).abs();
            while y <= c + d {
                if validate_triple(x, y, j) {
                    out.push((x, y));
                }
                y = y + HalfInt::from_int(1);
            }
            x = x + HalfInt::from_int(1);
        }
        out
    };
    let rows = pairs(j1, j2, j3, j4);
    let cols = pairs(j1, j4, j2, j3);
    let mut entries = Vec::with_capacity(rows.len());
    for &(j12, j34) in &rows {
        let mut row = Vec::with_capacity(cols.len());
        for &(j14, j23) in &cols {
            let l = RecouplingLabels::new([j1, j2, j3, j4, j12, j34, j14, j23, j]);
            row.push(recoupling_oracle_at(&l, j)?);
        }
        entries.push(row);
    }
    Ok(RecouplingMatrix { rows, cols, entries })
}

impl RecouplingMatrix {
    /// Whether `M Mᵀ` is the identity, exactly.
    pub fn is_orthogonal(&self) -> bool {
        if self.rows.len() != self.cols.len() {
            return false;
        }
        for (i, ri) in self.entries.iter().enumerate() {
            for (k, rk) in self.entries.iter().enumerate() {
                let dot = ri
                    .iter()
                    .zip(rk)
                    .fold(RadicalSum::zero(), |acc, (x, y)| &acc + &(x * y));
                let want = if i == k { RadicalSum::one() } else { RadicalSum::zero() };
                if dot != want {
                    return false;
                }
            }
        }
        true
    }
}
