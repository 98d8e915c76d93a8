//! Quantum-number bookkeeping for the 2D and 4D polar oscillator bases and
//! the maps from oscillator labels to coupling labels.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::{check_jm, j_values, m_values, HalfInt};

/// True iff `|j1 − j2| ≤ j3 ≤ j1 + j2` and `j1 + j2 + j3` is whole.
pub fn validate_triple(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    j1.is_nonnegative()
        && j2.is_nonnegative()
        && j3.is_nonnegative()
        && (j1 - j2).abs() <= j3
        && j3 <= j1 + j2
        && (j1 + j2 + j3).is_integer()
}

fn require_triple(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Result<()> {
    if validate_triple(j1, j2, j3) {
        Ok(())
    } else {
        domain(format!("triangle rule fails for ({j1}, {j2}, {j3})"))
    }
}

/// State of the 2D polar oscillator: `j = n + |m|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Polar2DLabel {
    pub j: HalfInt,
    pub m: HalfInt,
    pub n: u32,
}

impl Polar2DLabel {
    pub fn new(j: HalfInt, m: HalfInt) -> Result<Self> {
        check_jm(j, m, "2D label")?;
        let n = (j - m.abs()).whole("n = j − |m|")?;
        Ok(Polar2DLabel { j, m, n: n as u32 })
    }

    /// `2n + 2|m| + 1`, the energy in units of ħω.
    pub fn energy_index(&self) -> i64 {
        2 * self.n as i64 + self.m.abs().twice() + 1
    }
}

/// State of the 4D polar oscillator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Polar4DLabel {
    pub n: u32,
    pub j3: HalfInt,
    pub m: HalfInt,
    pub mp: HalfInt,
}

impl Polar4DLabel {
    pub fn new(n: u32, j3: HalfInt, m: HalfInt, mp: HalfInt) -> Result<Self> {
        check_jm(j3, m, "4D label m")?;
        check_jm(j3, mp, "4D label m'")?;
        Ok(Polar4DLabel { n, j3, m, mp })
    }

    /// The 4D state reached from `Φ_{j1 m1} Φ_{j2 m2}` at fixed `j3`, with
    /// `m = m1 + m2`, `m' = m1 − m2` and `n = j1 + j2 − j3`.
    pub fn from_pair(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j3: HalfInt) -> Result<Self> {
        let n = (j1 + j2 - j3).whole("n = j1 + j2 − j3")?;
        if n < 0 {
            return domain(format!("n = j1 + j2 − j3 = {n} is negative"));
        }
        Polar4DLabel::new(n as u32, j3, m1 + m2, m1 - m2)
    }
}

/// A validated Clebsch–Gordan key `⟨j1 j2; m1 m2 | j3 m1+m2⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CGKey {
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
}

impl CGKey {
    pub fn new(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<Self> {
        check_jm(j1, m1, "(j1, m1)")?;
        check_jm(j2, m2, "(j2, m2)")?;
        check_jm(j3, m1 + m2, "(j3, m3)")?;
        require_triple(j1, j2, j3)?;
        Ok(CGKey { j1, j2, j3, m1, m2 })
    }

    /// Builds a key from doubled values `[j1, j2, j3, m1, m2]`.
    pub fn from_twice(t: [i64; 5]) -> Result<Self> {
        let h = HalfInt::from_twice;
        CGKey::new(h(t[0]), h(t[1]), h(t[2]), h(t[3]), h(t[4]))
    }

    pub fn j1(&self) -> HalfInt {
        self.j1
    }
    pub fn j2(&self) -> HalfInt {
        self.j2
    }
    pub fn j3(&self) -> HalfInt {
        self.j3
    }
    pub fn m1(&self) -> HalfInt {
        self.m1
    }
    pub fn m2(&self) -> HalfInt {
        self.m2
    }
    pub fn m3(&self) -> HalfInt {
        self.m1 + self.m2
    }

    /// Doubled `[j1, j2, j3, m1, m2, m3]`.
    pub fn twice(&self) -> [i64; 6] {
        [self.j1, self.j2, self.j3, self.m1, self.m2, self.m3()].map(HalfInt::twice)
    }

    /// All valid keys with `2j1, 2j2 ≤ max_twice`, ordered lexicographically
    /// on doubled `(j1, j2, j3, m1, m2)`.
    pub fn enumerate(max_twice: i64) -> Vec<CGKey> {
        let mut out = Vec::new();
        for j1 in j_values(max_twice) {
            for j2 in j_values(max_twice) {
                let mut j3 = (j1 - j2).abs();
                while j3 <= j1 + j2 {
                    for m1 in m_values(j1) {
                        for m2 in m_values(j2) {
                            if (m1 + m2).abs() <= j3 {
                                out.push(CGKey { j1, j2, j3, m1, m2 });
                            }
                        }
                    }
                    j3 = j3 + HalfInt::from_int(1);
                }
            }
        }
        out
    }
}

impl fmt::Display for CGKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} {}; {} {} | {} {}>",
            self.j1,
            self.j2,
            self.m1,
            self.m2,
            self.j3,
            self.m3()
        )
    }
}

/// Oscillator labels `(j1, m1, j2, m2, j3)` of a passage element
/// `⟨Φ_{j1 m1} Φ_{j2 m2} | Ψ_{n j3 m' m}⟩`.
///
/// `(j1, j2, j3)` need not form a triangle; the conditions are `|m_i| ≤ j_i`
/// with whole `j_i − m_i`, whole `n = j1 + j2 − j3 ≥ 0`, and
/// `|m1| + |m2| ≤ j3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PassageKey {
    pub j1: HalfInt,
    pub m1: HalfInt,
    pub j2: HalfInt,
    pub m2: HalfInt,
    pub j3: HalfInt,
}

impl PassageKey {
    pub fn new(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j3: HalfInt) -> Result<Self> {
        check_jm(j1, m1, "(j1, m1)")?;
        check_jm(j2, m2, "(j2, m2)")?;
        let n = (j1 + j2 - j3).whole("n = j1 + j2 − j3")?;
        if n < 0 {
            return domain(format!("n = j1 + j2 − j3 = {n} is negative"));
        }
        if m1.abs() + m2.abs() > j3 {
            return domain(format!("|m1| + |m2| = {} exceeds j3 = {j3}", m1.abs() + m2.abs()));
        }
        Ok(PassageKey { j1, m1, j2, m2, j3 })
    }

    pub fn n(&self) -> i64 {
        (self.j1 + self.j2 - self.j3).twice() / 2
    }

    /// Radial node counts `(n1, n2)` of the two 2D factors.
    pub fn radial_nodes(&self) -> (i64, i64) {
        (
            (self.j1 - self.m1.abs()).twice() / 2,
            (self.j2 - self.m2.abs()).twice() / 2,
        )
    }

    pub fn abs_m(&self) -> PassageKey {
        PassageKey {
            m1: self.m1.abs(),
            m2: self.m2.abs(),
            ..*self
        }
    }

    /// All keys with `2j1, 2j2 ≤ max_twice`; with `nonnegative_m` only
    /// `m1, m2 ≥ 0`. Ordered on doubled `(j1, j2, j3, m1, m2)`.
    pub fn enumerate(max_twice: i64, nonnegative_m: bool) -> Vec<PassageKey> {
        let mut out = Vec::new();
        for j1 in j_values(max_twice) {
            for j2 in j_values(max_twice) {
                let mut j3 = HalfInt::from_twice((j1 + j2).twice() % 2);
                while j3 <= j1 + j2 {
                    for m1 in m_values(j1) {
                        for m2 in m_values(j2) {
                            if nonnegative_m && (m1.twice() < 0 || m2.twice() < 0) {
                                continue;
                            }
                            if m1.abs() + m2.abs() <= j3 {
                                out.push(PassageKey { j1, m1, j2, m2, j3 });
                            }
                        }
                    }
                    j3 = j3 + HalfInt::from_int(1);
                }
            }
        }
        out
    }
}

impl fmt::Display for PassageKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(j1={}, m1={}, j2={}, m2={}, j3={})",
            self.j1, self.m1, self.j2, self.m2, self.j3
        )
    }
}

/// A mapped coupling key with the exponent `φ` of its phase factor
/// `e^{iπφ}`. The exponent is kept unreduced and may be a half-integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MappedKey {
    pub key: CGKey,
    pub phase_exponent: HalfInt,
}

/// Two readings of the superscript in the absolute-value map's phase
/// `φ = j₂^{|m₂|} + m₂^{|m|} + N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PhiReading {
    /// `j₂^{|m₂|}` is the mapped `j₂^{|m|}`.
    MappedJ2,
    /// `j₂^{|m₂|}` is the unmapped `j2`.
    LiteralJ2,
}

impl PhiReading {
    pub const ALL: [PhiReading; 2] = [PhiReading::MappedJ2, PhiReading::LiteralJ2];

    pub fn name(self) -> &'static str {
        match self {
            PhiReading::MappedJ2 => "mapped-j2",
            PhiReading::LiteralJ2 => "literal-j2",
        }
    }
}

/// Halves the doubled value `twice_x` of `x`, returning `x/2`.
fn half(twice_x: i64, what: &str) -> Result<HalfInt> {
    HalfInt::halve_twice_sum(twice_x, what)
}

/// Mapped labels shared by both maps, from `(j1, j2, j3)` and a pair of
/// projections `(p1, p2)` (absolute values or signed):
/// `J1 = (j1+j2−p1+p2)/2`, `J2 = (j1+j2+p1−p2)/2`,
/// `M1 = (j2−j1+p1+p2)/2`, `M2 = (j1−j2+p1+p2)/2`, `J3 = j3`.
fn mapped_labels(j1: HalfInt, j2: HalfInt, j3: HalfInt, p1: HalfInt, p2: HalfInt) -> Result<CGKey> {
    let s = (j1 + j2).twice();
    let d = (j2 - j1).twice();
    let (p1, p2) = (p1.twice(), p2.twice());
    let big_j1 = half(s - p1 + p2, "mapped j1")?;
    let big_j2 = half(s + p1 - p2, "mapped j2")?;
    let big_m1 = half(d + p1 + p2, "mapped m1")?;
    let big_m2 = half(-d + p1 + p2, "mapped m2")?;
    CGKey::new(big_j1, big_j2, j3, big_m1, big_m2).map_err(|e| match e {
        Error::Domain(msg) => Error::Domain(format!("mapped key invalid: {msg}")),
        other => other,
    })
}

/// The absolute-value map with the mapped-`j₂` phase reading.
pub fn map_abs_indices(j1: HalfInt, j2: HalfInt, j3: HalfInt, am1: HalfInt, am2: HalfInt) -> Result<MappedKey> {
    map_abs_indices_with(j1, j2, j3, am1, am2, PhiReading::MappedJ2)
}

/// The absolute-value map from `(j1, j2, j3, |m1|, |m2|)` to coupling labels,
/// with `φ = j₂^{|m₂|} + m₂^{|m|} + N`, `N = n1 + n2 + n`, under the chosen
/// reading of `j₂^{|m₂|}`.
pub fn map_abs_indices_with(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    am1: HalfInt,
    am2: HalfInt,
    reading: PhiReading,
) -> Result<MappedKey> {
    if !am1.is_nonnegative() || !am2.is_nonnegative() {
        return domain(format!("absolute projections must be nonnegative, got ({am1}, {am2})"));
    }
    let pk = PassageKey::new(j1, am1, j2, am2, j3)?;
    let key = mapped_labels(j1, j2, j3, am1, am2)?;
    let (n1, n2) = pk.radial_nodes();
    let big_n = HalfInt::from_int(n1 + n2 + pk.n());
    let j2_term = match reading {
        PhiReading::MappedJ2 => key.j2(),
        PhiReading::LiteralJ2 => j2,
    };
    Ok(MappedKey {
        key,
        phase_exponent: j2_term + key.m2() + big_n,
    })
}

/// The signed map `J1 = (j1+j2−m1+m2)/2`, `J2 = (j1+j2+m1−m2)/2`,
/// `M1 = (j2−j1+m1+m2)/2`, `M2 = (j1−j2+m1+m2)/2`, `J3 = j3`, with phase
/// exponent `j2 − m2`. For `m1, m2 ≥ 0` it coincides with the
/// absolute-value map.
pub fn map_signed_indices(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<MappedKey> {
    PassageKey::new(j1, m1, j2, m2, j3)?;
    let key = mapped_labels(j1, j2, j3, m1, m2)?;
    Ok(MappedKey {
        key,
        phase_exponent: j2 - m2,
    })
}

/// Labels `[J1, M1, J2, M2, J3, M3]` of the signed map with the first
/// magnetic label taken as `(j2−j1+m1−m2)/2`. Unvalidated; used to report
/// where this variant breaks `M1 + M2 = M3`.
pub fn signed_labels_variant(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<[HalfInt; 6]> {
    let s = (j1 + j2).twice();
    let d = (j2 - j1).twice();
    let (p1, p2) = (m1.twice(), m2.twice());
    Ok([
        half(s - p1 + p2, "variant j1")?,
        half(d + p1 - p2, "variant m1")?,
        half(s + p1 - p2, "variant j2")?,
        half(-d + p1 + p2, "variant m2")?,
        j3,
        m1 + m2,
    ])
}

/// Unvalidated `[J1, J2, M1, M2]` of the signed map. Applying it twice
/// returns the input, although the image of a valid passage key need not
/// itself be a valid passage key.
pub fn signed_label_map(j1: HalfInt, j2: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<[HalfInt; 4]> {
    let s = (j1 + j2).twice();
    let d = (j2 - j1).twice();
    let (p1, p2) = (m1.twice(), m2.twice());
    Ok([
        half(s - p1 + p2, "mapped j1")?,
        half(s + p1 - p2, "mapped j2")?,
        half(d + p1 + p2, "mapped m1")?,
        half(-d + p1 + p2, "mapped m2")?,
    ])
}

/// `(n, α) = (j1 + j2 − j3, 2 j3 + 1)`.
pub fn radial_labels(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Result<(u32, u32)> {
    require_triple(j1, j2, j3)?;
    let n = (j1 + j2 - j3).whole("n")?;
    Ok((n as u32, (j3.twice() + 1) as u32))
}
