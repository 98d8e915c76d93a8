//! Exact Laguerre, Jacobi and Wigner small-d polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::exact::{binomial, check_jm, fact, fact_q, parity_sign, ratio, HalfInt, RadicalSum};

/// Univariate polynomial with rational coefficients, constant term first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        RationalPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        RationalPoly::constant(BigRational::one())
    }

    /// `c xᵈ`.
    pub fn monomial(degree: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        RationalPoly::from_coeffs(coeffs)
    }

    /// `a x + b`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        RationalPoly::from_coeffs(vec![b, a])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(RationalPoly::one(), |acc, _| &acc * self)
    }

    /// `p(a x + b)`.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> Self {
        let inner = RationalPoly::linear(a.clone(), b.clone());
        let mut out = RationalPoly::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * &inner) + &RationalPoly::constant(c.clone());
        }
        out
    }

    /// Multiplies by `xᵏ`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    /// `∫₀^∞ p(x) e^{−x} dx`, using `∫ xᵏ e^{−x} = k!`.
    pub fn integrate_exp_weight(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigRational::from_integer(fact(k)))
            .sum()
    }
}

impl Add<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        self + &(-rhs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl fmt::Display for RationalPoly {
    /// Ascending powers, e.g. `3 - 3*x + 1/2*x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let num = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let body = match (i, mag.is_one()) {
                (0, _) => num,
                (_, true) => var,
                _ => format!("{num}*{var}"),
            };
            let neg = c.is_negative();
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Generalized Laguerre polynomial `L_n^α` in the standard normalization
/// (`L_0 = 1`): coefficient of `xⁱ` is `(−1)ⁱ C(n+α, n−i)/i!`. The binomial
/// is the generalized one, so negative integer `α` is accepted.
pub fn laguerre(n: u32, alpha: i64) -> RationalPoly {
    let n = n as i64;
    RationalPoly::from_coeffs(
        (0..=n)
            .map(|i| binomial(n + alpha, n - i) * ratio(parity_sign(i), 1) / fact_q(i))
            .collect(),
    )
}

/// Laguerre polynomial assembled term by term in descending powers:
/// `(−1)ⁿ Σ_k (−1)ᵏ Γ(α+n+1)/(k!(n−k)!Γ(α+n−k+1)) x^{n−k}`.
pub fn laguerre_descending(n: u32, alpha: u32) -> RationalPoly {
    let (n, a) = (n as i64, alpha as i64);
    let mut coeffs = vec![BigRational::zero(); n as usize + 1];
    for k in 0..=n {
        let c = fact_q(a + n) / (fact_q(k) * fact_q(n - k) * fact_q(a + n - k));
        coeffs[(n - k) as usize] = c * ratio(parity_sign(n + k), 1);
    }
    RationalPoly::from_coeffs(coeffs)
}

/// Jacobi polynomial in half-angle form: the pairs `(k, c)` of
/// `P_n^{(α,β)}(cos θ) = Σ_k c sin^{2k}(θ/2) cos^{2(n−k)}(θ/2)`.
pub fn jacobi_half_angle(n: u32, alpha: u32, beta: u32) -> Vec<(u32, BigRational)> {
    let (n, a, b) = (n as i64, alpha as i64, beta as i64);
    (0..=n)
        .map(|k| {
            let c = binomial(n + a, n - k) * binomial(n + b, k) * ratio(parity_sign(k), 1);
            (k as u32, c)
        })
        .collect()
}

/// Jacobi polynomial `P_n^{(α,β)}(z)` from the explicit sum
/// `Σ_k C(n+α, n−k) C(n+β, k) ((z−1)/2)ᵏ ((z+1)/2)^{n−k}`.
pub fn jacobi(n: u32, alpha: u32, beta: u32) -> RationalPoly {
    let minus = RationalPoly::linear(ratio(1, 2), ratio(-1, 2));
    let plus = RationalPoly::linear(ratio(1, 2), ratio(1, 2));
    let mut out = RationalPoly::zero();
    for (k, c) in jacobi_half_angle(n, alpha, beta) {
        // sin²(θ/2) = −(z−1)/2, so the (−1)ᵏ in c is undone here
        let term = &minus.pow(k) * &plus.pow(n - k);
        out = &out + &term.scale(&(c * ratio(parity_sign(k as i64), 1)));
    }
    out
}

/// Wigner small-d function `d^j_{m,m'}(θ)` in factored form:
/// `prefactor · sin^{sin_half_power}(θ/2) · cos^{cos_half_power}(θ/2) · P(cos θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallD {
    pub j: HalfInt,
    pub m: HalfInt,
    pub mp: HalfInt,
    /// Includes the phase; its square is rational.
    pub prefactor: RadicalSum,
    /// `|m + m'|`.
    pub cos_half_power: u32,
    /// `|m − m'|`.
    pub sin_half_power: u32,
    /// Degree `j − max(|m|, |m'|)`.
    pub jacobi_degree: u32,
    pub jacobi_part: RationalPoly,
}

pub fn wigner_small_d(j: HalfInt, m: HalfInt, mp: HalfInt) -> Result<SmallD> {
    check_jm(j, m, "small-d row")?;
    check_jm(j, mp, "small-d column")?;
    let mu = (m - mp).abs().whole("|m − m'|")?;
    let nu = (m + mp).abs().whole("|m + m'|")?;
    let s = (j - m.abs().max(mp.abs())).whole("j − max(|m|, |m'|)")?;
    let phase = if mp >= m {
        1
    } else {
        parity_sign((mp - m).whole("m' − m")?)
    };
    let ratio_sq = BigRational::new(
        fact(s as usize) * fact((s + mu + nu) as usize),
        fact((s + mu) as usize) * fact((s + nu) as usize),
    );
    let prefactor = RadicalSum::sqrt_of(&ratio_sq)?.scale(&ratio(phase, 1));
    Ok(SmallD {
        j,
        m,
        mp,
        prefactor,
        cos_half_power: nu as u32,
        sin_half_power: mu as u32,
        jacobi_degree: s as u32,
        jacobi_part: jacobi(s as u32, mu as u32, nu as u32),
    })
}

impl SmallD {
    /// Rational half-angle terms `(cos power, sin power, c)` with
    /// `d = prefactor · Σ c cos^p(θ/2) sin^q(θ/2)`.
    pub fn half_angle_terms(&self) -> Vec<(u32, u32, BigRational)> {
        jacobi_half_angle(self.jacobi_degree, self.sin_half_power, self.cos_half_power)
            .into_iter()
            .map(|(k, c)| {
                (
                    self.cos_half_power + 2 * (self.jacobi_degree - k),
                    self.sin_half_power + 2 * k,
                    c,
                )
            })
            .collect()
    }

    /// Value at `θ = 0`.
    pub fn at_zero(&self) -> RadicalSum {
        if self.sin_half_power > 0 {
            return RadicalSum::zero();
        }
        self.prefactor.scale(&self.jacobi_part.eval(&BigRational::one()))
    }

    /// `d²` as an exact polynomial in `z = cos θ`.
    pub fn squared_in_cos(&self) -> Result<RationalPoly> {
        let pref_sq = match self.prefactor.square().as_rational() {
            Some(q) => q,
            None => return domain("small-d prefactor squared is not rational"),
        };
        let sin2 = RationalPoly::linear(ratio(-1, 2), ratio(1, 2));
        let cos2 = RationalPoly::linear(ratio(1, 2), ratio(1, 2));
        let body = &(&sin2.pow(self.sin_half_power) * &cos2.pow(self.cos_half_power))
            * &(&self.jacobi_part * &self.jacobi_part);
        Ok(body.scale(&pref_sq))
    }
}

/// Coefficients `cᵢ` with `x^r/r! = Σᵢ cᵢ L_i^α(x)`, namely
/// `cᵢ = (−1)ⁱ C(r+α, r−i)`.
pub fn monomial_to_laguerre(r: u32, alpha: i64) -> Vec<BigRational> {
    let r = r as i64;
    (0..=r)
        .map(|i| binomial(r + alpha, r - i) * ratio(parity_sign(i), 1))
        .collect()
}

/// `∫₀^∞ x^p e^{−x} L_{n1}^{a1}(x) L_{n2}^{a2}(x) dx`.
pub fn laguerre_weighted_overlap(n1: u32, a1: i64, n2: u32, a2: i64, p: i64) -> Result<BigRational> {
    if p < 0 {
        return domain(format!("weight exponent {p} is negative"));
    }
    let prod = &laguerre(n1, a1) * &laguerre(n2, a2);
    Ok(prod.shift(p as usize).integrate_exp_weight())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    JacobiAtOne,
    LaguerreAtZero,
}

/// `P_n^{(α,β)}(1)` or `L_n^α(0)`; both equal `C(n+α, n)`.
/// `β` does not enter the value at `z = 1`.
pub fn endpoint_values(kind: Endpoint, n: u32, alpha: u32, _beta: u32) -> BigRational {
    match kind {
        Endpoint::JacobiAtOne | Endpoint::LaguerreAtZero => binomial(n as i64 + alpha as i64, n as i64),
    }
}

/// `Γ(α+n+1)/n!` as a rational, for nonnegative `α + n`.
pub fn laguerre_norm(n: u32, alpha: i64) -> BigRational {
    BigRational::new(fact((alpha + n as i64) as usize), fact(n as usize))
}
