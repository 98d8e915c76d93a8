//! Exact sums of rational multiples of square roots.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Splits a positive integer `n` into `(s, f)` with `n = s² f` and `f`
/// squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree_split needs a positive integer");
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut d = BigInt::from(2u32);
    loop {
        if &d * &d > rest {
            break;
        }
        // Past a million with no factor below d, `rest < d³` leaves only
        // p, p² or pq as candidates.
        if d > BigInt::from(1_000_000u32) && rest < &d * &d * &d {
            let r = rest.sqrt();
            if &r * &r == rest {
                outside *= r;
                rest = BigInt::one();
            }
            break;
        }
        let mut count = 0u32;
        while rest.is_multiple_of(&d) {
            rest /= &d;
            count += 1;
        }
        if count > 0 {
            outside *= d.pow(count / 2);
            if count % 2 == 1 {
                inside *= &d;
            }
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    inside *= rest;
    (outside, inside)
}

/// A finite sum `Σ cᵢ √rᵢ` with nonzero rational `cᵢ` and distinct squarefree
/// positive integer radicands `rᵢ`.
///
/// Distinct squarefree radicals are linearly independent over the
/// rationals, so the canonical map doubles as an exact equality test.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn one() -> Self {
        RadicalSum::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = RadicalSum::zero();
        s.push_term(BigInt::one(), q);
        s
    }

    pub fn from_int(n: i64) -> Self {
        RadicalSum::from_rational(BigRational::from_integer(n.into()))
    }

    /// The canonical `q √s` with `q² s = r`; negative `r` is a domain error.
    pub fn sqrt_of(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return domain(format!("square root of negative rational {r}"));
        }
        if r.is_zero() {
            return Ok(RadicalSum::zero());
        }
        // √(p/q) = √(p q) / q
        let pq = r.numer() * r.denom();
        let (outside, inside) = squarefree_split(&pq);
        let coeff = BigRational::new(outside, r.denom().clone());
        let mut s = RadicalSum::zero();
        s.push_term(inside, coeff);
        Ok(s)
    }

    fn push_term(&mut self, radicand: BigInt, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.terms.iter()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    /// `(coefficient, radicand)` when the sum has at most one term.
    pub fn single_term(&self) -> Option<(BigRational, BigInt)> {
        match self.terms.len() {
            0 => Some((BigRational::zero(), BigInt::one())),
            1 => self.terms.iter().next().map(|(r, c)| (c.clone(), r.clone())),
            _ => None,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return RadicalSum::zero();
        }
        RadicalSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * q)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact sign (−1, 0, +1). Decided exactly for up to two terms, or for
    /// any number of terms that share a sign; `None` otherwise.
    pub fn signum(&self) -> Option<i8> {
        let signs: Vec<i8> = self
            .terms
            .values()
            .map(|c| if c.is_positive() { 1 } else { -1 })
            .collect();
        match signs.as_slice() {
            [] => Some(0),
            [s] => Some(*s),
            _ if signs.iter().all(|s| *s == signs[0]) => Some(signs[0]),
            [_, _] => {
                // a√r + b√s with opposite signs: compare a²r and b²s
                let mut it = self.terms.iter();
                let (r1, c1) = it.next()?;
                let (r2, c2) = it.next()?;
                let sq1 = c1 * c1 * BigRational::from_integer(r1.clone());
                let sq2 = c2 * c2 * BigRational::from_integer(r2.clone());
                let dominant = if sq1 > sq2 { c1 } else { c2 };
                Some(if dominant.is_positive() { 1 } else { -1 })
            }
            _ => None,
        }
    }

    /// Absolute value of a sum whose sign is decidable.
    pub fn abs(&self) -> Option<Self> {
        self.signum().map(|s| if s < 0 { -self } else { self.clone() })
    }

    /// Multiplicative inverse of a single nonzero term.
    pub fn inverse(&self) -> Result<Self> {
        match self.single_term() {
            Some((c, _)) if c.is_zero() => domain("inverse of zero"),
            Some((c, r)) => {
                // 1/(c√r) = √r / (c r)
                let mut s = RadicalSum::zero();
                let rq = BigRational::from_integer(r.clone());
                s.push_term(r, (c * rq).recip());
                Ok(s)
            }
            None => domain("inverse of a multi-term radical sum is not supported"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    /// Decimal rendering truncated toward zero at `digits` places. Exact per
    /// term; multi-term sums may be off by one unit in the last place.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(2 * digits);
        let mut total = BigInt::zero();
        for (r, c) in &self.terms {
            let sq = c * c * BigRational::from_integer(r * &scale);
            let mag = (sq.numer() / sq.denom()).sqrt();
            if c.is_negative() {
                total -= mag;
            } else {
                total += mag;
            }
        }
        let neg = total.is_negative();
        let digits_str = total.abs().to_string();
        let d = digits as usize;
        let padded = format!("{digits_str:0>width$}", width = d + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - d);
        let body = if d == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RadicalSum {
    /// Canonical interchange text: terms by ascending radicand, each
    /// `(p/q)*sqrt(r/s)` with `r/s` in lowest terms and `s` collecting the
    /// radicand factors shared with the coefficient denominator, or a bare
    /// rational when the radicand is 1; joined by ` + ` / ` - `; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<(BigRational, BigRational)> = self
            .terms
            .iter()
            .map(|(r, c)| {
                let g = r.gcd(c.denom());
                (BigRational::new(r / &g, g.clone()), c * BigRational::from_integer(g))
            })
            .collect();
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (rad, c)) in parts.iter().enumerate() {
            let mag = c.abs();
            let body = if rad.is_one() {
                rational_text(&mag)
            } else {
                format!(
                    "({}/{})*sqrt({}/{})",
                    mag.numer(),
                    mag.denom(),
                    rad.numer(),
                    rad.denom()
                )
            };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn parse_term(s: &str) -> Result<RadicalSum> {
    let s = s.trim();
    if let Some((coef, rad)) = s.split_once("*sqrt(") {
        let coef = coef
            .trim()
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("coefficient of `{s}` must be parenthesized")))?;
        let rad = rad
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated sqrt in `{s}`")))?;
        let c = parse_rational(coef)?;
        let r = parse_rational(rad)?;
        Ok(RadicalSum::sqrt_of(&r)?.scale(&c))
    } else {
        Ok(RadicalSum::from_rational(parse_rational(s)?))
    }
}

impl FromStr for RadicalSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (first_neg, mut rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let mut acc = RadicalSum::zero();
        let mut neg = first_neg;
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let cut = match (plus, minus) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            let (head, tail) = match cut {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let term = parse_term(head)?;
            acc = if neg { acc - term } else { acc + term };
            match tail {
                None => break,
                Some(t) => {
                    neg = t.starts_with(" - ");
                    rest = &t[3..];
                }
            }
        }
        Ok(acc)
    }
}

impl Add<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;
    fn add(mut self, rhs: RadicalSum) -> RadicalSum {
        self += &rhs;
        self
    }
}

impl AddAssign<&RadicalSum> for RadicalSum {
    fn add_assign(&mut self, rhs: &RadicalSum) {
        for (r, c) in &rhs.terms {
            self.push_term(r.clone(), c.clone());
        }
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        -&self
    }
}

impl Sub<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &(-rhs)
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        &self - &rhs
    }
}

impl Mul<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                // r1, r2 squarefree: r1 r2 = g² (r1/g)(r2/g) with squarefree tail
                let g = r1.gcd(r2);
                let radicand = (r1 / &g) * (r2 / &g);
                let coeff = c1 * c2 * BigRational::from_integer(g);
                out.push_term(radicand, coeff);
            }
        }
        out
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: RadicalSum) -> RadicalSum {
        &self * &rhs
    }
}

/// Sign of a rational as −1, 0 or +1.
pub fn rational_sign(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt(n: i64, d: i64) -> RadicalSum {
        RadicalSum::sqrt_of(&q(n, d)).unwrap()
    }

    #[test]
    fn sqrt_normalize_examples() {
        assert!(sqrt(0, 1).is_zero());
        assert_eq!(sqrt(9, 4), RadicalSum::from_rational(q(3, 2)));
        let s = sqrt(8, 3);
        assert_eq!(s.single_term().unwrap(), (q(2, 3), BigInt::from(6)));
        assert!(RadicalSum::sqrt_of(&q(-1, 2)).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&sqrt(2, 1) + &sqrt(2, 1), sqrt(2, 1).scale(&q(2, 1)));
        assert_eq!(&sqrt(2, 1) * &sqrt(3, 1), sqrt(6, 1));
        assert_eq!(&sqrt(6, 1) * &sqrt(6, 1), RadicalSum::from_int(6));
        assert!((&sqrt(5, 7) - &sqrt(5, 7)).is_zero());
    }

    #[test]
    fn squarefree_split_large_cofactor() {
        // 1_000_003 is prime; its square must be detected past the cutoff
        let p = BigInt::from(1_000_003u64);
        let (o, i) = squarefree_split(&(&p * &p * BigInt::from(12)));
        assert_eq!(o, &p * BigInt::from(2));
        assert_eq!(i, BigInt::from(3));
    }

    #[test]
    fn rendering() {
        assert_eq!(RadicalSum::zero().to_string(), "0");
        assert_eq!(RadicalSum::one().to_string(), "1");
        assert_eq!(RadicalSum::from_rational(q(-1, 2)).to_string(), "-1/2");
        assert_eq!((-sqrt(1, 3)).to_string(), "-(1/1)*sqrt(1/3)");
        let mixed = &(&sqrt(2, 1) - &RadicalSum::from_int(1)) + &sqrt(27, 4);
        assert_eq!(mixed.to_string(), "-1 + (1/1)*sqrt(2/1) + (3/2)*sqrt(3/1)");
        assert_eq!(sqrt(3, 2).to_string(), "(1/1)*sqrt(3/2)");
        assert_eq!(sqrt(3, 4).to_string(), "(1/2)*sqrt(3/1)");
    }

    #[test]
    fn parse_accepts_rational_radicands() {
        let v: RadicalSum = "-(1/1)*sqrt(1/3)".parse().unwrap();
        assert_eq!(v, -sqrt(1, 3));
        assert!("(1/2*sqrt(3)".parse::<RadicalSum>().is_err());
    }

    #[test]
    fn signs_and_decimals() {
        assert_eq!(sqrt(2, 1).signum(), Some(1));
        let d = &sqrt(2, 1) - &RadicalSum::from_int(2);
        assert_eq!(d.signum(), Some(-1));
        assert_eq!(sqrt(1, 2).to_decimal(6), "0.707106");
        assert_eq!((-sqrt(1, 3)).to_decimal(4), "-0.5773");
        assert_eq!(RadicalSum::from_int(3).to_decimal(0), "3");
        assert_eq!(sqrt(1, 3).inverse().unwrap(), sqrt(3, 1));
    }

    fn arb_sum() -> impl Strategy<Value = RadicalSum> {
        prop::collection::vec((-20i64..20, 1i64..12, 1i64..40, 1i64..10), 0..4).prop_map(|ts| {
            ts.into_iter().fold(RadicalSum::zero(), |acc, (n, d, rn, rd)| {
                &acc + &sqrt(rn, rd).scale(&q(n, d))
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_sum(), b in arb_sum(), c in arb_sum()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn sqrt_squares_back(n in 0i64..100_000, d in 1i64..5_000) {
            let r = q(n, d);
            let s = RadicalSum::sqrt_of(&r).unwrap();
            prop_assert_eq!(s.square().as_rational(), Some(r));
        }

        #[test]
        fn render_round_trip(a in arb_sum()) {
            let back: RadicalSum = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn zero_test_agrees_with_floats(a in arb_sum(), b in arb_sum()) {
            let d = &a - &b;
            if d.is_zero() {
                prop_assert!(d.to_f64().abs() < 1e-9);
            } else {
                prop_assert!(d.to_f64().abs() > 1e-12);
            }
        }
    }
}
