use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A half-integer quantum number, stored doubled.
///
/// All arithmetic stays on the doubled integer; there is no division that
/// could produce a `HalfInt`, so parity can only change through explicit
/// checks such as [`HalfInt::halve_twice_sum`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_nonnegative(self) -> bool {
        self.0 >= 0
    }

    /// The whole-integer value, if there is one.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Like [`to_int`](Self::to_int) but reports the failure as a domain error.
    pub fn whole(self, what: &str) -> Result<i64> {
        self.to_int()
            .ok_or_else(|| Error::Domain(format!("{what} = {self} is not a whole integer")))
    }

    /// Returns `x / 2` where `x` is given by its doubled value `twice_x`,
    /// i.e. the half-integer whose doubled value is `twice_x / 2`. Fails when
    /// `twice_x` is odd.
    pub fn halve_twice_sum(twice_x: i64, what: &str) -> Result<Self> {
        if twice_x % 2 != 0 {
            return Err(Error::Domain(format!(
                "{what}: doubled value {twice_x} is odd, cannot halve"
            )));
        }
        Ok(HalfInt(twice_x / 2))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `n`, `p/2` and `p/1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not an integer or half-integer"));
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(HalfInt::from_int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Checks that `(j, m)` is a legal angular-momentum pair: `j ≥ 0`,
/// `|m| ≤ j` and `j − m` whole.
pub fn check_jm(j: HalfInt, m: HalfInt, label: &str) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::Domain(format!("{label}: j = {j} is negative")));
    }
    if m.abs() > j {
        return Err(Error::Domain(format!("{label}: |m| = {} exceeds j = {j}", m.abs())));
    }
    if !(j - m).is_integer() {
        return Err(Error::Domain(format!("{label}: j − m = {} is not whole", j - m)));
    }
    Ok(())
}

/// Half-integers `0, 1/2, …, max_twice/2`.
pub fn j_values(max_twice: i64) -> impl Iterator<Item = HalfInt> {
    (0..=max_twice).map(HalfInt::from_twice)
}

/// Projections `−j, −j+1, …, j`.
pub fn m_values(j: HalfInt) -> impl Iterator<Item = HalfInt> {
    (-j.twice()..=j.twice()).step_by(2).map(HalfInt::from_twice)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("4".parse::<HalfInt>().unwrap(), HalfInt::from_int(4));
        assert_eq!("6/1".parse::<HalfInt>().unwrap(), HalfInt::from_int(6));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_twice(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
    }

    #[test]
    fn halving_rejects_odd() {
        assert_eq!(HalfInt::halve_twice_sum(6, "x").unwrap(), HalfInt::from_twice(3));
        assert!(HalfInt::halve_twice_sum(5, "x").is_err());
    }

    #[test]
    fn jm_checks() {
        let h = HalfInt::from_twice;
        assert!(check_jm(h(1), h(-1), "t").is_ok());
        assert!(check_jm(h(1), h(2), "t").is_err());
        assert!(check_jm(h(2), h(1), "t").is_err());
        assert!(check_jm(h(-2), h(0), "t").is_err());
        assert_eq!(m_values(h(3)).count(), 4);
    }
}
