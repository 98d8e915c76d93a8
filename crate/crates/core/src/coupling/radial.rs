//! Which `(i, j)` powers survive the radial projection onto `L_n^{2j3+1}`.

use num_traits::Zero;
use serde::Serialize;

use crate::basis::radial_labels;
use crate::error::Result;
use crate::exact::HalfInt;
use crate::polyn::{laguerre_weighted_overlap, monomial_to_laguerre};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialSelection {
    pub j: [HalfInt; 3],
    pub n: u32,
    pub alpha: u32,
    /// Pairs whose power `x^{n−i−j}` has a component along `L_n^α`.
    pub by_expansion: Vec<(u32, u32)>,
    /// Pairs whose weighted overlap with `L_n^α` is nonzero.
    pub by_overlap: Vec<(u32, u32)>,
}

impl RadialSelection {
    /// Both routes keep only `(0, 0)`.
    pub fn only_origin(&self) -> bool {
        self.by_expansion == [(0, 0)] && self.by_overlap == [(0, 0)]
    }
}

pub fn radial_selection(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> Result<RadialSelection> {
    let (n, alpha) = radial_labels(j1, j2, j3)?;
    let mut by_expansion = Vec::new();
    let mut by_overlap = Vec::new();
    for i in 0..=n {
        for j in 0..=(n - i) {
            let r = n - i - j;
            let coeffs = monomial_to_laguerre(r, alpha as i64);
            if coeffs.get(n as usize).is_some_and(|c| !c.is_zero()) {
                by_expansion.push((i, j));
            }
            let ov = laguerre_weighted_overlap(0, 0, n, alpha as i64, (alpha + r) as i64)?;
            if !ov.is_zero() {
                by_overlap.push((i, j));
            }
        }
    }
    Ok(RadialSelection {
        j: [j1, j2, j3],
        n,
        alpha,
        by_expansion,
        by_overlap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::validate_triple;
    use crate::exact::j_values;

    #[test]
    fn only_lowest_power_survives() {
        for a in j_values(6) {
            for b in j_values(6) {
                for c in j_values(6) {
                    if validate_triple(a, b, c) {
                        assert!(radial_selection(a, b, c).unwrap().only_origin(), "({a} {b} {c})");
                    }
                }
            }
        }
    }
}
