//! Exact rational dilations `alpha`, the point sets `{a_n alpha}`, and their
//! star and extreme discrepancy.
//!
//! All fractional parts are formed in integer arithmetic as `(a_n p mod q) / q`
//! and rounded to double precision exactly once.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsum;
use crate::sequences::{self, SequenceSpec};
use crate::util;

/// Mantissa bits of randomly sampled dilations.
pub const DEFAULT_ALPHA_BITS: u64 = 192;

/// A dilation parameter `alpha = p/q` in `[0, 1)`, stored reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaValue {
    p: BigInt,
    q: BigInt,
}

impl AlphaValue {
    /// `p/q` with `0 <= p < q`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if !q.is_positive() || p.is_negative() || p >= q {
            return Err(Error::param(format!(
                "alpha must satisfy 0 <= p < q, got {p}/{q}"
            )));
        }
        let g = p.gcd(&q);
        Ok(AlphaValue {
            p: p / &g,
            q: q / g,
        })
    }

    pub fn zero() -> Self {
        AlphaValue {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    /// The fractional part of any rational.
    pub fn from_ratio_mod1(x: &BigRational) -> Self {
        let p = x.numer().mod_floor(x.denom());
        AlphaValue::new(p, x.denom().clone()).expect("reduced residue is in range")
    }

    /// `p / 2^bits` with `p` the first `bits` bits of the ChaCha20 stream for `seed`.
    pub fn seeded(seed: u64, bits: u64) -> Self {
        let p = BigInt::from(util::seeded_bits(seed, bits));
        AlphaValue::new(p, util::pow2(bits)).expect("seeded numerator is below 2^bits")
    }

    /// `{(1 + sqrt 5)/2}` truncated to `bits` binary digits.
    pub fn golden(bits: u64) -> Self {
        // floor(2^bits (sqrt5 - 1)/2) = floor((floor(sqrt(5 * 4^bits)) - 2^bits) / 2)
        let scale = util::pow2(bits);
        let root = util::isqrt(&(BigInt::from(5) << (2 * bits)));
        let p = (root - &scale) >> 1u32;
        AlphaValue::new(p, scale).expect("golden fraction is in [0,1)")
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new_raw(self.p.clone(), self.q.clone())
    }

    pub fn to_f64(&self) -> f64 {
        util::unit_ratio_to_f64(&self.p, &self.q)
    }

    /// Numerator `r` of `{a alpha} = r / q`.
    pub fn residue(&self, a: &BigInt) -> BigInt {
        (a * &self.p).mod_floor(&self.q)
    }

    /// `{h alpha}`.
    pub fn dilate(&self, h: &BigInt) -> AlphaValue {
        AlphaValue::new(self.residue(h), self.q.clone()).expect("residue is in range")
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Parses `p/q`, `seed:<k>`, `seed:<k>@<bits>` or `golden` (optionally `golden@<bits>`).
impl FromStr for AlphaValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, bits) = match s.split_once('@') {
            Some((b, bits)) => (
                b,
                bits.parse::<u64>()
                    .map_err(|_| Error::param(format!("bad bit count in {s:?}")))?,
            ),
            None => (s, DEFAULT_ALPHA_BITS),
        };
        if let Some(seed) = body.strip_prefix("seed:") {
            let seed = seed
                .parse()
                .map_err(|_| Error::param(format!("bad seed in {s:?}")))?;
            return Ok(AlphaValue::seeded(seed, bits));
        }
        if body == "golden" {
            return Ok(AlphaValue::golden(bits));
        }
        let x = sequences::parse_rational(body)?;
        AlphaValue::new(x.numer().clone(), x.denom().clone())
    }
}

/// Sorted fractional parts in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoints {
    values: Vec<f64>,
}

impl SamplePoints {
    /// Sorts `values`; every value must lie in `[0, 1)`.
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(0.0..1.0).contains(*v)) {
            return Err(Error::param(format!("sample point {v} outside [0,1)")));
        }
        values.sort_by(f64::total_cmp);
        Ok(SamplePoints { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `{a_n alpha}` in input order.
pub fn fractional_parts_unsorted(terms: &[BigInt], alpha: &AlphaValue) -> Vec<f64> {
    terms
        .par_iter()
        .map(|a| util::unit_ratio_to_f64(&alpha.residue(a), alpha.denom()))
        .collect()
}

pub fn fractional_parts(terms: &[BigInt], alpha: &AlphaValue) -> SamplePoints {
    let mut values = fractional_parts_unsorted(terms, alpha);
    values.sort_by(f64::total_cmp);
    SamplePoints { values }
}

/// Discrepancy over anchored intervals `[0, b)`.
pub fn star_discrepancy(points: &SamplePoints) -> Result<f64> {
    let x = points.values();
    if x.is_empty() {
        return Err(Error::pre("star discrepancy of an empty point set"));
    }
    let n = x.len() as f64;
    Ok(x.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let i = i as f64 + 1.0;
            (i / n - xi).max(xi - (i - 1.0) / n)
        })
        .fold(0.0, f64::max))
}

/// Discrepancy over all intervals `[a, b) ⊆ [0, 1)`.
///
/// `D+` maximises `(j-i+1)/N - (x_j - x_i)` over `i <= j` and `D-` maximises
/// `(x_j - x_i) - (j-i-1)/N` over `0 <= i < j <= N+1` with `x_0 = 0`,
/// `x_{N+1} = 1`. Both split into a term in `i` and a term in `j`, so a running
/// maximum gives each in one pass.
pub fn extreme_discrepancy(points: &SamplePoints) -> Result<f64> {
    let x = points.values();
    if x.is_empty() {
        return Err(Error::pre("extreme discrepancy of an empty point set"));
    }
    let n = x.len() as f64;

    // i = j gives exactly 1/N; the split form would round it
    let mut over = 1.0 / n;
    let mut best_left = f64::NEG_INFINITY;
    for (k, &xj) in x.iter().enumerate() {
        let j = k as f64 + 1.0;
        best_left = best_left.max(xj - j / n);
        over = over.max((j + 1.0) / n - xj + best_left);
    }

    // extended index 0..=N+1
    let at = |k: usize| match k {
        0 => 0.0,
        k if k == x.len() + 1 => 1.0,
        k => x[k - 1],
    };
    let mut under = f64::NEG_INFINITY;
    let mut best_left = f64::NEG_INFINITY;
    for k in 1..=x.len() + 1 {
        let i = k - 1;
        best_left = best_left.max(i as f64 / n - at(i));
        under = under.max(at(k) - (k as f64 - 1.0) / n + best_left);
    }
    Ok(over.max(under).min(1.0))
}

/// One checkpoint of a discrepancy profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub d_n: f64,
    pub nd_n: f64,
}

/// Extreme discrepancy of the first `N` terms of `spec` at each checkpoint.
pub fn discrepancy_profile(
    spec: &SequenceSpec,
    alpha: &AlphaValue,
    checkpoints: &[usize],
) -> Result<Vec<ProfileRow>> {
    let max_n = validate_checkpoints(checkpoints)?;
    let terms = sequences::generate(spec, max_n)?;
    profile_terms(&terms, alpha, checkpoints)
}

/// As [`discrepancy_profile`] for an explicit term list of length at least the last checkpoint.
pub fn profile_terms(
    terms: &[BigInt],
    alpha: &AlphaValue,
    checkpoints: &[usize],
) -> Result<Vec<ProfileRow>> {
    let max_n = validate_checkpoints(checkpoints)?;
    if terms.len() < max_n {
        return Err(Error::param(format!(
            "profile needs {max_n} terms, {} given",
            terms.len()
        )));
    }
    let raw = fractional_parts_unsorted(&terms[..max_n], alpha);
    checkpoints
        .par_iter()
        .map(|&n| {
            let mut prefix = raw[..n].to_vec();
            prefix.sort_by(f64::total_cmp);
            let d_n = extreme_discrepancy(&SamplePoints { values: prefix })?;
            Ok(ProfileRow {
                n,
                d_n,
                nd_n: n as f64 * d_n,
            })
        })
        .collect()
}

fn validate_checkpoints(checkpoints: &[usize]) -> Result<usize> {
    if checkpoints.is_empty() {
        return Err(Error::pre("profile needs at least one checkpoint"));
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param(
            "checkpoints must be positive and strictly increasing",
        ));
    }
    Ok(*checkpoints.last().unwrap())
}

/// `max_{1 <= H <= h_max} |sum_n e(H a_n alpha)| / (4H)`, a lower bound for `N D_N`.
pub fn koksma_lower_bound(terms: &[BigInt], alpha: &AlphaValue, h_max: u64) -> Result<f64> {
    if h_max < 1 {
        return Err(Error::pre("koksma bound needs H_max >= 1"));
    }
    let per_h: Vec<f64> = (1..=h_max)
        .into_par_iter()
        .map(|h| {
            let x = alpha.dilate(&BigInt::from(h));
            expsum::eval_point(terms, &x).norm() / (4.0 * h as f64)
        })
        .collect();
    Ok(per_h.into_iter().fold(0.0, f64::max))
}
