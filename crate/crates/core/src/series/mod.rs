//! Truncated multivariate power series with exact rational coefficients.

mod gf;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{binomial, fact};

pub use gf::{
    cg_gf_closed_form, cg_gf_discrepancies, cg_gf_integral, expand_3j_gf, expand_cg_gf, laguerre_from_gf, laguerre_gf,
    threej_gf_form, threej_gf_scale, threej_gf_value, CgGfDiscrepancy, CG_GF_VARS, LAGUERRE_GF_VARS, THREEJ_GF_VARS,
};

/// A power series in named indeterminates, truncated at a total degree and
/// optionally at per-variable exponent caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
    trunc: u32,
    caps: Option<Vec<u32>>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn min_caps(a: &Option<Vec<u32>>, b: &Option<Vec<u32>>) -> Option<Vec<u32>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| *p.min(q)).collect()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl MultiSeries {
    pub fn zero(vars: &[&str], trunc: u32) -> Self {
        MultiSeries {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
            trunc,
            caps: None,
        }
    }

    pub fn constant(vars: &[&str], trunc: u32, c: BigRational) -> Self {
        let mut s = MultiSeries::zero(vars, trunc);
        s.insert(vec![0; vars.len()], c);
        s
    }

    pub fn one(vars: &[&str], trunc: u32) -> Self {
        MultiSeries::constant(vars, trunc, BigRational::one())
    }

    /// `c · ∏ varᵢ^{expsᵢ}`; zero if its degree exceeds `trunc`.
    pub fn monomial(vars: &[&str], trunc: u32, exps: Vec<u32>, c: BigRational) -> Result<Self> {
        if exps.len() != vars.len() {
            return domain(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                vars.len()
            ));
        }
        let mut s = MultiSeries::zero(vars, trunc);
        s.insert(exps, c);
        Ok(s)
    }

    /// The indeterminate `name` itself.
    pub fn var(vars: &[&str], trunc: u32, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::Domain(format!("unknown variable `{name}`")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MultiSeries::monomial(vars, trunc, e, BigRational::one())
    }

    /// `(1 + c·x)^k` expanded with exact binomials, for the monomial `x`
    /// with exponents `exps` and any integer `k`.
    pub fn binomial_series(vars: &[&str], trunc: u32, exps: &[u32], c: &BigRational, k: i64) -> Result<Self> {
        let d = degree(exps);
        if d == 0 {
            return domain("binomial series needs a nonconstant monomial");
        }
        let mut s = MultiSeries::zero(vars, trunc);
        let mut power = BigRational::one();
        for i in 0..=(trunc / d) {
            let coef = binomial(k, i as i64) * &power;
            s.insert(exps.iter().map(|e| e * i).collect(), coef);
            power *= c;
        }
        Ok(s)
    }

    /// Drops every term with an exponent above `caps` and keeps the caps
    /// for later products.
    pub fn with_caps(mut self, caps: Vec<u32>) -> Result<Self> {
        if caps.len() != self.vars.len() {
            return domain("caps length differs from variable count");
        }
        self.terms.retain(|e, _| e.iter().zip(&caps).all(|(x, c)| x <= c));
        self.caps = Some(caps);
        Ok(self)
    }

    fn admits(&self, e: &[u32]) -> bool {
        degree(e) <= self.trunc && self.caps.as_ref().is_none_or(|c| e.iter().zip(c).all(|(x, m)| x <= m))
    }

    pub(crate) fn insert(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() || !self.admits(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same_vars(&self, other: &MultiSeries) -> Result<()> {
        if self.vars != other.vars {
            return domain(format!(
                "variable sets differ: [{}] vs [{}]",
                self.vars.join(", "),
                other.vars.join(", ")
            ));
        }
        Ok(())
    }

    fn empty_like(&self, other: &MultiSeries) -> MultiSeries {
        MultiSeries {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
            trunc: self.trunc.min(other.trunc),
            caps: min_caps(&self.caps, &other.caps),
        }
    }

    pub fn add(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_same_vars(other)?;
        let mut out = self.empty_like(other);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> MultiSeries {
        let mut out = MultiSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * q);
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_same_vars(other)?;
        let mut out = self.empty_like(other);
        let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if !out.admits(&e) {
                    continue;
                }
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<MultiSeries> {
        let mut out = MultiSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        out.insert(vec![0; self.vars.len()], BigRational::one());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `Σ aᵏ/k!` up to the truncation. The constant term must vanish.
    pub fn exp(&self) -> Result<MultiSeries> {
        let zero = vec![0; self.vars.len()];
        if self.terms.contains_key(&zero) {
            return domain("exponential of a series with nonzero constant term");
        }
        let mut out = MultiSeries {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        out.insert(zero.clone(), BigRational::one());
        let mut power = out.clone();
        let mut k = 0u32;
        loop {
            k += 1;
            power = power
                .mul(self)?
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// The coefficient of the monomial `exps`. Asking beyond the
    /// truncation degree is an error, as that coefficient is unknown.
    pub fn coeff(&self, exps: &[u32]) -> Result<BigRational> {
        if exps.len() != self.vars.len() {
            return domain("exponent vector length differs from variable count");
        }
        if degree(exps) > self.trunc {
            return domain(format!("degree {} exceeds truncation {}", degree(exps), self.trunc));
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero))
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Domain(format!("unknown variable `{name}`")))
    }

    /// The series in the remaining variables multiplying
    /// `∏ name^{exp}` over `fixed`.
    pub fn coefficient_of(&self, fixed: &[(&str, u32)]) -> Result<MultiSeries> {
        let idx: Vec<(usize, u32)> = fixed
            .iter()
            .map(|(n, e)| self.index_of(n).map(|i| (i, *e)))
            .collect::<Result<_>>()?;
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|i| !idx.iter().any(|(j, _)| j == i))
            .collect();
        let fixed_degree: u32 = idx.iter().map(|(_, e)| e).sum();
        let mut out = MultiSeries {
            vars: keep.iter().map(|&i| self.vars[i].clone()).collect(),
            terms: BTreeMap::new(),
            trunc: self.trunc.saturating_sub(fixed_degree),
            caps: self.caps.as_ref().map(|c| keep.iter().map(|&i| c[i]).collect()),
        };
        for (e, c) in &self.terms {
            if idx.iter().all(|&(i, x)| e[i] == x) {
                out.insert(keep.iter().map(|&i| e[i]).collect(), c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficients as a JSON object from space-separated exponent vectors
    /// to rational strings, in sorted order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let key = e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                (key, serde_json::Value::String(c.to_string()))
            })
            .collect();
        serde_json::json!({
            "vars": self.vars,
            "trunc": self.trunc,
            "terms": terms,
        })
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x > 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", mag, mono.join("*")),
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

pub fn series_mul(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    a.mul(b)
}

pub fn series_exp(a: &MultiSeries) -> Result<MultiSeries> {
    a.exp()
}

/// Fock–Bargmann pairing: `⟨zⁿ, zᵐ⟩ = n! δ_{nm}` independently in each
/// paired variable, with the remaining variables of both operands carried
/// through (the union, `f`'s first).
pub fn bargmann_pair(f: &MultiSeries, g: &MultiSeries, paired: &[&str]) -> Result<MultiSeries> {
    let fi: Vec<usize> = paired.iter().map(|p| f.index_of(p)).collect::<Result<_>>()?;
    let gi: Vec<usize> = paired.iter().map(|p| g.index_of(p)).collect::<Result<_>>()?;
    let f_rest: Vec<usize> = (0..f.vars.len()).filter(|i| !fi.contains(i)).collect();
    let g_rest: Vec<usize> = (0..g.vars.len()).filter(|i| !gi.contains(i)).collect();
    let mut vars: Vec<String> = f_rest.iter().map(|&i| f.vars[i].clone()).collect();
    let mut g_slot = Vec::with_capacity(g_rest.len());
    for &i in &g_rest {
        match vars.iter().position(|v| *v == g.vars[i]) {
            Some(p) => g_slot.push(p),
            None => {
                g_slot.push(vars.len());
                vars.push(g.vars[i].clone());
            }
        }
    }
    let mut by_key: HashMap<Vec<u32>, Vec<(&Vec<u32>, &BigRational)>> = HashMap::new();
    for (e, c) in &g.terms {
        by_key
            .entry(gi.iter().map(|&i| e[i]).collect())
            .or_default()
            .push((e, c));
    }
    let mut out = MultiSeries {
        vars,
        terms: BTreeMap::new(),
        trunc: f.trunc.min(g.trunc),
        caps: None,
    };
    let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
    for (ef, cf) in &f.terms {
        let key: Vec<u32> = fi.iter().map(|&i| ef[i]).collect();
        let Some(matches) = by_key.get(&key) else { continue };
        let weight = key.iter().fold(BigInt::one(), |acc, &n| acc * fact(n as usize));
        let w = BigRational::from_integer(weight);
        for (eg, cg) in matches {
            let mut e = vec![0u32; out.vars.len()];
            for (slot, &i) in f_rest.iter().enumerate() {
                e[slot] = ef[i];
            }
            for (k, &i) in g_rest.iter().enumerate() {
                e[g_slot[k]] += eg[i];
            }
            *acc.entry(e).or_insert_with(BigRational::zero) += cf * *cg * &w;
        }
    }
    for (e, c) in acc {
        out.insert(e, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    fn xy(trunc: u32) -> (MultiSeries, MultiSeries) {
        (
            MultiSeries::var(&["x", "y"], trunc, "x").unwrap(),
            MultiSeries::var(&["x", "y"], trunc, "y").unwrap(),
        )
    }

    #[test]
    fn products() {
        let (x, _) = xy(2);
        let one = MultiSeries::one(&["x", "y"], 2);
        let p = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        assert_eq!(p.to_string(), "1 - x^2");
        assert!(p.mul(&MultiSeries::zero(&["x", "y"], 2)).unwrap().is_zero());
        let (x, _) = xy(6);
        let e = x.exp().unwrap();
        let em = x.scale(&ratio(-1, 1)).exp().unwrap();
        assert_eq!(e.mul(&em).unwrap(), MultiSeries::one(&["x", "y"], 6));
        let other = MultiSeries::one(&["x"], 2);
        assert!(x.mul(&other).is_err());
    }

    #[test]
    fn exponentials() {
        let (x, y) = xy(4);
        assert_eq!(
            MultiSeries::zero(&["x", "y"], 4).exp().unwrap(),
            MultiSeries::one(&["x", "y"], 4)
        );
        assert_eq!(x.mul(&y).unwrap().exp().unwrap().to_string(), "1 + x*y + 1/2*x^2*y^2");
        let (x, y) = xy(2);
        assert_eq!(
            x.add(&y).unwrap().exp().unwrap().to_string(),
            "1 + y + 1/2*y^2 + x + x*y + 1/2*x^2"
        );
        assert!(MultiSeries::one(&["x", "y"], 2).exp().is_err());
    }

    #[test]
    fn coefficients() {
        let (x, y) = xy(6);
        let f = MultiSeries::one(&["x", "y"], 6)
            .add(&x.mul(&y).unwrap().scale(&ratio(3, 1)))
            .unwrap();
        assert_eq!(f.coeff(&[1, 1]).unwrap(), ratio(3, 1));
        assert_eq!(f.coeff(&[2, 1]).unwrap(), ratio(0, 1));
        let e = x.mul(&y).unwrap().exp().unwrap();
        assert_eq!(e.coeff(&[3, 3]).unwrap(), ratio(1, 6));
        assert!(e.coeff(&[4, 3]).is_err());
        let part = e.coefficient_of(&[("x", 2)]).unwrap();
        assert_eq!(part.to_string(), "1/2*y^2");
    }

    #[test]
    fn pairing_examples() {
        let z2 = MultiSeries::monomial(&["z"], 6, vec![2], ratio(1, 1)).unwrap();
        let z3 = MultiSeries::monomial(&["z"], 6, vec![3], ratio(1, 1)).unwrap();
        assert_eq!(
            bargmann_pair(&z2, &z2, &["z"]).unwrap().coeff(&[]).unwrap(),
            ratio(2, 1)
        );
        assert!(bargmann_pair(&z2, &z3, &["z"]).unwrap().is_zero());
        let az = MultiSeries::monomial(&["a", "z"], 6, vec![1, 1], ratio(1, 1))
            .unwrap()
            .exp()
            .unwrap();
        let bz = MultiSeries::monomial(&["b", "z"], 6, vec![1, 1], ratio(1, 1))
            .unwrap()
            .exp()
            .unwrap();
        let p = bargmann_pair(&az, &bz, &["z"]).unwrap();
        let ab = MultiSeries::monomial(&["a", "b"], 6, vec![1, 1], ratio(1, 1))
            .unwrap()
            .exp()
            .unwrap();
        assert_eq!(p, ab);
    }

    #[test]
    fn binomials() {
        let s = MultiSeries::binomial_series(&["u"], 4, &[1], &ratio(-1, 1), -2).unwrap();
        assert_eq!(s.to_string(), "1 + 2*u + 3*u^2 + 4*u^3 + 5*u^4");
        let s = MultiSeries::binomial_series(&["u", "v"], 4, &[1, 1], &ratio(-1, 1), 1).unwrap();
        assert_eq!(s.to_string(), "1 - u*v");
    }

    #[test]
    fn caps_prune() {
        let (x, y) = xy(8);
        let e = x.add(&y).unwrap().with_caps(vec![1, 8]).unwrap().exp().unwrap();
        assert!(e.terms().all(|(k, _)| k[0] <= 1));
        assert_eq!(e.coeff(&[1, 2]).unwrap(), ratio(1, 2));
    }

    #[test]
    fn json_is_sorted() {
        let (x, y) = xy(2);
        let j = x.add(&y).unwrap().to_json();
        assert_eq!(j["terms"]["0 1"], "1");
        assert_eq!(j["vars"][0], "x");
    }

    fn small_series() -> impl Strategy<Value = MultiSeries> {
        proptest::collection::vec(((1u32..3, 0u32..3), -4i64..5, 1i64..4), 0..5).prop_map(|ts| {
            let mut s = MultiSeries::zero(&["x", "y"], 5);
            for ((a, b), n, d) in ts {
                s.insert(vec![a, b], ratio(n, d));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn exp_of_sum_is_product(a in small_series(), b in small_series()) {
            let lhs = a.add(&b).unwrap().exp().unwrap();
            let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pairing_is_symmetric(a in small_series(), b in small_series()) {
            let p = bargmann_pair(&a, &b, &["x", "y"]).unwrap();
            let q = bargmann_pair(&b, &a, &["x", "y"]).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn truncated_product_is_associative(a in small_series(), b in small_series(), c in small_series()) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
