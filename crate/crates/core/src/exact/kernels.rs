//! Factorial-family kernels on big integers and rationals.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

fn factorial_cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

type PochKey = (BigRational, u32);

fn pochhammer_cache() -> &'static RwLock<HashMap<PochKey, BigRational>> {
    static CACHE: OnceLock<RwLock<HashMap<PochKey, BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `n!` for a nonnegative `n`; negative `n` is a domain error.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return domain(format!("factorial of negative number {n}"));
    }
    Ok(fact(n as usize))
}

/// Infallible factorial for indices already known to be nonnegative.
pub fn fact(n: usize) -> BigInt {
    {
        let cache = factorial_cache().read().expect("factorial cache poisoned");
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let mut cache = factorial_cache().write().expect("factorial cache poisoned");
    // Another writer may have extended the table in between.
    while cache.len() <= n {
        let k = cache.len();
        let next = &cache[k - 1] * BigInt::from(k);
        cache.push(next);
    }
    cache[n].clone()
}

/// Factorial of a signed index as a rational, or `None` when the index is
/// negative (so that `1/(−k)!` terms can be dropped by the caller).
pub fn fact_i(n: i64) -> Option<BigInt> {
    (n >= 0).then(|| fact(n as usize))
}

pub fn fact_q(n: i64) -> BigRational {
    BigRational::from_integer(factorial(n).expect("nonnegative factorial index"))
}

/// Rising factorial `a (a+1) … (a+n−1)`; `n = 0` gives 1.
pub fn pochhammer(a: &BigRational, n: u32) -> BigRational {
    let key = (a.clone(), n);
    if let Some(v) = pochhammer_cache().read().expect("pochhammer cache poisoned").get(&key) {
        return v.clone();
    }
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        if acc.is_zero() {
            break;
        }
        term += BigRational::one();
    }
    pochhammer_cache()
        .write()
        .expect("pochhammer cache poisoned")
        .entry(key)
        .or_insert_with(|| acc.clone());
    acc
}

pub fn pochhammer_int(a: i64, n: u32) -> BigRational {
    pochhammer(&BigRational::from_integer(a.into()), n)
}

/// Generalized binomial `top (top−1) … (top−k+1) / k!` for any integer
/// `top`; zero when `k < 0`.
pub fn binomial(top: i64, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    if top >= 0 && k > top {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i);
    }
    BigRational::new(num, fact(k as usize))
}

/// `∫₀^π cos^p(θ/2) sin^q(θ/2) sin θ dθ = 2 B(q/2+1, p/2+1)` for even `p, q`.
pub fn half_angle_beta(p: i64, q: i64) -> Result<BigRational> {
    if p < 0 || q < 0 || p % 2 != 0 || q % 2 != 0 {
        return domain(format!(
            "half-angle Beta integral needs even nonnegative exponents, got ({p}, {q})"
        ));
    }
    let (hp, hq) = ((p / 2) as usize, (q / 2) as usize);
    Ok(BigRational::new(
        BigInt::from(2) * fact(hq) * fact(hp),
        fact(hp + hq + 1),
    ))
}
