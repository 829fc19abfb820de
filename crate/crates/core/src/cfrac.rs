//! Continued fractions of exact rationals and of certified real enclosures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::discrepancy::{self, AlphaValue};
use crate::error::{Error, Result};
use crate::util;

/// `[b_0; b_1, b_2, ...]` together with its convergents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFracExpansion {
    pub b0: BigInt,
    /// `b_1, b_2, ...`, all positive.
    pub quotients: Vec<BigInt>,
    /// Number of leading partial quotients known to be correct.
    pub certified_count: usize,
    /// True when the expansion is the complete expansion of a rational.
    pub complete: bool,
}

impl CFracExpansion {
    /// `b_m`, with `b_0` at `m = 0` and zero past the end of a complete expansion.
    pub fn coefficient(&self, m: usize) -> Option<BigInt> {
        match m {
            0 => Some(self.b0.clone()),
            _ => match self.quotients.get(m - 1) {
                Some(b) => Some(b.clone()),
                None if self.complete => Some(BigInt::zero()),
                None => None,
            },
        }
    }

    /// Convergents `p_i / q_i` for `i = 0 ..= quotients.len()`.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.quotients.len() + 1);
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (self.b0.clone(), BigInt::one());
        out.push((p1.clone(), q1.clone()));
        for b in &self.quotients {
            let p2 = b * &p1 + &p0;
            let q2 = b * &q1 + &q0;
            (p0, q0) = (p1, q1);
            (p1, q1) = (p2, q2);
            out.push((p1.clone(), q1.clone()));
        }
        out
    }

    /// Folds the coefficients back into a single rational.
    pub fn value(&self) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for b in self.quotients.iter().rev() {
            let b = BigRational::from_integer(b.clone());
            acc = Some(match acc {
                None => b,
                Some(tail) => b + tail.recip(),
            });
        }
        let b0 = BigRational::from_integer(self.b0.clone());
        match acc {
            None => b0,
            Some(tail) => b0 + tail.recip(),
        }
    }
}

impl std::fmt::Display for CFracExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}", self.b0)?;
        for (i, b) in self.quotients.iter().enumerate() {
            write!(f, "{}{b}", if i == 0 { "; " } else { ", " })?;
        }
        if !self.complete {
            write!(f, ", ...")?;
        }
        write!(f, "]")
    }
}

/// Exact Euclidean expansion of `x >= 0`, truncated after `max_terms` partial quotients.
///
/// The last coefficient of a complete expansion is at least 2 unless the
/// expansion is `[b_0]` alone.
pub fn cf_expand(x: &BigRational, max_terms: usize) -> Result<CFracExpansion> {
    if x.is_negative() {
        return Err(Error::param(format!(
            "continued fraction needs x >= 0, got {x}"
        )));
    }
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let (b0, r) = p.div_mod_floor(&q);
    (p, q) = (q, r);
    let mut quotients = Vec::new();
    while !q.is_zero() && quotients.len() < max_terms {
        let (b, r) = p.div_mod_floor(&q);
        quotients.push(b);
        (p, q) = (q, r);
    }
    Ok(CFracExpansion {
        b0,
        certified_count: quotients.len(),
        complete: q.is_zero(),
        quotients,
    })
}

/// Expansion shared by every real in `[lo, hi]`.
///
/// A coefficient is emitted only while both ends have the same integer part,
/// so each one is certified for the whole interval.
pub fn cf_expand_interval(
    lo: &BigRational,
    hi: &BigRational,
    max_terms: usize,
) -> Result<CFracExpansion> {
    if lo > hi {
        return Err(Error::param(format!("empty interval [{lo}, {hi}]")));
    }
    if lo == hi {
        return cf_expand(lo, max_terms);
    }
    if lo.is_negative() {
        return Err(Error::param(format!(
            "continued fraction needs x >= 0, got lower end {lo}"
        )));
    }
    let b0 = lo.floor().to_integer();
    if hi.floor().to_integer() != b0 {
        return Err(Error::Certification(format!(
            "interval [{lo}, {hi}] does not fix b_0"
        )));
    }
    let b0_rat = BigRational::from_integer(b0.clone());
    let (mut lo, mut hi) = (lo - &b0_rat, hi - &b0_rat);
    let mut quotients = Vec::new();
    // x = b + 1/x' maps [lo, hi] to [1/hi, 1/lo]; once lo reaches 0 the next quotient is unbounded
    while quotients.len() < max_terms && lo.is_positive() {
        let (nlo, nhi) = (hi.recip(), lo.recip());
        let b = nlo.floor().to_integer();
        if nhi.floor().to_integer() != b {
            break;
        }
        let b_rat = BigRational::from_integer(b.clone());
        quotients.push(b);
        lo = nlo - &b_rat;
        hi = nhi - b_rat;
    }
    if quotients.is_empty() && max_terms > 0 {
        return Err(Error::Certification(
            "interval too wide to certify b_1".into(),
        ));
    }
    Ok(CFracExpansion {
        b0,
        certified_count: quotients.len(),
        complete: false,
        quotients,
    })
}

/// A real number available to any precision as a dyadic enclosure.
pub trait RealSource: Sync {
    /// `(lo, hi)` with `lo <= x <= hi` and `hi - lo <= 2^-bits`.
    fn enclose(&self, bits: u64) -> (BigRational, BigRational);
}

/// The golden ratio `(1 + sqrt 5) / 2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Golden;

impl RealSource for Golden {
    fn enclose(&self, bits: u64) -> (BigRational, BigRational) {
        let scale = util::pow2(bits);
        let root = util::isqrt(&(BigInt::from(5) << (2 * bits)));
        let den = util::pow2(bits + 1);
        let lo = BigRational::new(&scale + &root, den.clone());
        let hi = BigRational::new(scale + root + 1, den);
        (lo, hi)
    }
}

/// `0.b_1 b_2 b_3 ...` in binary, with the bits drawn from the seeded stream.
///
/// Truncating to `bits` digits gives exactly `AlphaValue::seeded(seed, bits)`.
#[derive(Debug, Clone, Copy)]
pub struct SeededReal {
    pub seed: u64,
}

impl RealSource for SeededReal {
    fn enclose(&self, bits: u64) -> (BigRational, BigRational) {
        let p = BigInt::from(util::seeded_bits(self.seed, bits));
        let den = util::pow2(bits);
        (
            BigRational::new(p.clone(), den.clone()),
            BigRational::new(p + 1, den),
        )
    }
}

impl RealSource for AlphaValue {
    fn enclose(&self, _bits: u64) -> (BigRational, BigRational) {
        (self.to_ratio(), self.to_ratio())
    }
}

/// Largest precision tried before giving up on certification.
pub const DEFAULT_PRECISION_CAP: u64 = 1 << 16;

fn sum_quotients(cf: &CFracExpansion, l: usize) -> BigInt {
    (1..=l).filter_map(|m| cf.coefficient(m)).sum()
}

/// `S_L = sum_{k=1}^{L} sum_{m=1}^{L} b_m(beta^k alpha)` for a rational `alpha`.
///
/// Coefficients past the end of a terminating expansion count as zero.
pub fn s_l_statistic(alpha: &BigRational, beta: u32, l: usize) -> Result<BigInt> {
    if beta < 2 {
        return Err(Error::param(format!("beta must be >= 2, got {beta}")));
    }
    let beta = BigInt::from(beta);
    (1..=l)
        .into_par_iter()
        .map(|k| {
            let x = alpha * BigRational::from_integer(beta.pow(k as u32));
            Ok(sum_quotients(&cf_expand(&x, l)?, l))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().sum())
}

/// `S_L` for a real given by enclosures, doubling the working precision for
/// each `k` until `b_1 .. b_L` of `beta^k alpha` all certify.
pub fn s_l_statistic_real(
    source: &dyn RealSource,
    beta: u32,
    l: usize,
    precision_cap: u64,
) -> Result<BigInt> {
    if beta < 2 {
        return Err(Error::param(format!("beta must be >= 2, got {beta}")));
    }
    let log2_beta = u64::from(32 - (beta - 1).leading_zeros());
    let beta_int = BigInt::from(beta);
    (1..=l)
        .into_par_iter()
        .map(|k| {
            let scale = BigRational::from_integer(beta_int.pow(k as u32));
            let mut bits = 192 + k as u64 * log2_beta;
            loop {
                let (lo, hi) = source.enclose(bits);
                let attempt = cf_expand_interval(&(lo * &scale), &(hi * &scale), l);
                match attempt {
                    Ok(cf) if cf.complete || cf.certified_count >= l => {
                        return Ok(sum_quotients(&cf, l))
                    }
                    Ok(_) | Err(Error::Certification(_)) => {}
                    Err(e) => return Err(e),
                }
                if bits >= precision_cap {
                    return Err(Error::Certification(format!(
                        "b_1..b_{l} of {beta}^{k} alpha not certified at {bits} bits"
                    )));
                }
                bits = (bits * 2).min(precision_cap);
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KroneckerReport {
    pub n: usize,
    /// `n D_n` of `{j alpha}`, `j = 0 .. n-1`.
    pub nd: f64,
    /// Least `M` with `q_M >= n`, or the expansion length if it ends first.
    pub m: usize,
    /// `sum_{i=1}^{M} (b_i + 1)`.
    pub quotient_sum: u64,
}

/// Discrepancy of the first `n` Kronecker points beside the partial-quotient sum
/// that classically controls it.
pub fn kronecker_nd(alpha: &AlphaValue, n: usize) -> Result<KroneckerReport> {
    if n == 0 {
        return Err(Error::pre("kronecker_nd needs n >= 1"));
    }
    let terms: Vec<BigInt> = (0..n).map(BigInt::from).collect();
    let d = discrepancy::extreme_discrepancy(&discrepancy::fractional_parts(&terms, alpha))?;

    let cf = cf_expand(&alpha.to_ratio(), usize::MAX)?;
    let target = BigInt::from(n);
    let convergents = cf.convergents();
    let m = convergents
        .iter()
        .position(|(_, q)| q >= &target)
        .unwrap_or(convergents.len() - 1);
    let quotient_sum: BigInt = cf.quotients[..m].iter().map(|b| b + 1).sum();
    Ok(KroneckerReport {
        n,
        nd: n as f64 * d,
        m,
        quotient_sum: quotient_sum.to_u64().unwrap_or(u64::MAX),
    })
}
