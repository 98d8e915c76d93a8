//! Exact numbers: half-integers, factorial kernels and radical sums.

mod halfint;
mod kernels;
mod radical;

pub use halfint::{check_jm, j_values, m_values, HalfInt};
pub use kernels::{binomial, fact, fact_i, fact_q, factorial, half_angle_beta, pochhammer, pochhammer_int};
pub use radical::{rational_sign, squarefree_split, RadicalSum};

use num_rational::BigRational;

/// Shorthand for building a rational from two machine integers.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `(−1)^k` for an integer exponent.
pub fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Square root of a nonnegative rational; alias kept for callers that read
/// better with the normalization spelled out.
pub fn sqrt_normalize(r: &BigRational) -> crate::error::Result<RadicalSum> {
    RadicalSum::sqrt_of(r)
}
