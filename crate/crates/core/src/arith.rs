//! Representation counts `#{(x, y) : f(x) ± f(y) = n}`, the divided difference
//! `(P(x) - P(y)) / (x - y)`, and divisor counting.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::IntPolynomial;
use crate::util;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReprMode {
    /// `f(x) + f(y) = n`
    Sum,
    /// `f(x) - f(y) = n`
    Diff,
}

impl std::str::FromStr for ReprMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(ReprMode::Sum),
            "diff" => Ok(ReprMode::Diff),
            _ => Err(Error::param(format!("mode must be sum or diff, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprCount {
    pub n: BigInt,
    pub count: u64,
    pub mode: ReprMode,
}

/// Ordered pairs `(x, y) ∈ [1, X]^2` with `f(x) ± f(y) = n`, where
/// `f_values[i] = f(i + 1)`.
pub fn count_repr(f_values: &[BigInt], n: &BigInt, mode: ReprMode) -> Result<ReprCount> {
    if f_values.is_empty() {
        return Err(Error::pre("representation count needs X >= 1"));
    }
    let mut sorted = f_values.to_vec();
    sorted.sort_unstable();
    let occurrences = |v: &BigInt| {
        let lo = sorted.partition_point(|s| s < v);
        let hi = sorted.partition_point(|s| s <= v);
        (hi - lo) as u64
    };
    let count = f_values
        .iter()
        .map(|fx| match mode {
            ReprMode::Sum => occurrences(&(n - fx)),
            ReprMode::Diff => occurrences(&(fx - n)),
        })
        .sum();
    Ok(ReprCount {
        n: n.clone(),
        count,
        mode,
    })
}

/// Every attained `n` with its representation count.
#[derive(Debug, Clone)]
pub struct ReprHistogram {
    pub mode: ReprMode,
    pub counts: BTreeMap<BigInt, u64>,
    /// Largest count, skipping `n = 0` in difference mode.
    pub max_count: u64,
    /// Smallest `n` attaining `max_count`.
    pub argmax: Option<BigInt>,
}

/// Default byte budget for the `X^2` pairwise table.
pub const DEFAULT_HISTOGRAM_BUDGET: u64 = 2 << 30;

pub fn repr_histogram(f_values: &[BigInt], mode: ReprMode) -> Result<ReprHistogram> {
    repr_histogram_with_budget(f_values, mode, DEFAULT_HISTOGRAM_BUDGET)
}

pub fn repr_histogram_with_budget(
    f_values: &[BigInt],
    mode: ReprMode,
    budget_bytes: u64,
) -> Result<ReprHistogram> {
    let x = f_values.len() as u64;
    if x == 0 {
        return Err(Error::pre("histogram needs X >= 1"));
    }
    let need = x.saturating_mul(x).saturating_mul(16);
    if need > budget_bytes {
        return Err(Error::Resource(format!(
            "histogram over X={x} needs about {need} bytes, budget is {budget_bytes}"
        )));
    }
    let runs: Vec<(BigInt, u64)> = match util::narrow_i128(f_values, 125) {
        Some(small) => pair_runs(&small, mode)
            .into_iter()
            .map(|(v, c)| (BigInt::from(v), c))
            .collect(),
        None => pair_runs(f_values, mode),
    };
    let mut max_count = 0;
    let mut argmax = None;
    for (v, c) in &runs {
        if mode == ReprMode::Diff && v.is_zero() {
            continue;
        }
        if *c > max_count {
            max_count = *c;
            argmax = Some(v.clone());
        }
    }
    Ok(ReprHistogram {
        mode,
        counts: runs.into_iter().collect(),
        max_count,
        argmax,
    })
}

fn pair_runs<T>(values: &[T], mode: ReprMode) -> Vec<(T, u64)>
where
    T: Ord + Clone + Send + Sync,
    for<'a> &'a T: std::ops::Add<&'a T, Output = T> + std::ops::Sub<&'a T, Output = T>,
{
    let mut all: Vec<T> = values
        .par_iter()
        .flat_map_iter(|a| {
            values.iter().map(move |b| match mode {
                ReprMode::Sum => a + b,
                ReprMode::Diff => a - b,
            })
        })
        .collect();
    all.par_sort_unstable();
    all.chunk_by(|a, b| a == b)
        .map(|run| (run[0].clone(), run.len() as u64))
        .collect()
}

/// `q(x, y)` stored as `coeffs[r][s]` for the monomial `x^r y^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    pub coeffs: Vec<Vec<BigInt>>,
}

impl BivariatePoly {
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        let mut xr = BigInt::one();
        for row in &self.coeffs {
            let mut ys = BigInt::one();
            for c in row {
                total += c * &xr * &ys;
                ys *= y;
            }
            xr *= x;
        }
        total
    }

    /// Total degree (`d - 1` for the divided difference of a degree-`d` polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// The polynomial `q` with `P(x) - P(y) = (x - y) q(x, y)`.
///
/// `(x^k - y^k)/(x - y) = sum_{r+s=k-1} x^r y^s`, so `q_{r,s} = c_{r+s+1}`.
pub fn divide_difference(p: &IntPolynomial) -> Result<BivariatePoly> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::param(
                "divided difference of a constant polynomial is degenerate",
            ))
        }
    };
    let c = p.coeffs();
    let coeffs = (0..d)
        .map(|r| (0..d - r).map(|s| c[r + s + 1].clone()).collect())
        .collect();
    Ok(BivariatePoly { coeffs })
}

/// Number of positive divisors of `|n|`.
pub fn divisor_count(n: i64) -> Result<u64> {
    if n == 0 {
        return Err(Error::pre("divisor count of zero"));
    }
    let n = n.unsigned_abs();
    let mut count = 0;
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            count += if i * i == n { 1 } else { 2 };
        }
        i += 1;
    }
    Ok(count)
}
