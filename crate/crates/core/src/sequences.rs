//! Integer sequence families `(a_n)` and their growth checks.
//!
//! Every family is generated in arbitrary precision. The textual form accepted by
//! [`SequenceSpec::from_str`](std::str::FromStr) is
//!
//! ```text
//! poly:c0,c1,...,cd[;map=identity|primes|floorbeta:<p>/<q>][;t=<k>]
//! digit-even:<base>
//! geom:<q>
//! thm5:d=<d>
//! explicit:@<file>        one integer per line
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients `c_0 + c_1 x + ... + c_d x^d`.
///
/// Trailing zero coefficients are stripped, so the zero polynomial has no
/// coefficients and no degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// How the polynomial argument `m_n` is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexKind {
    Identity,
    /// `m_n` is the n-th prime.
    Primes,
    /// `m_n = floor(n * beta)` with rational `beta > 1`.
    FloorBeta(BigRational),
    Explicit(Vec<BigInt>),
}

/// An index map `n -> m_n` together with its declared growth exponent `t`.
///
/// [`IndexMap::generate`] rejects maps whose values repeat or exceed `n^t` for
/// some `n >= threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    pub kind: IndexKind,
    pub t: u32,
    pub threshold: u64,
}

impl IndexMap {
    pub fn identity() -> Self {
        IndexMap {
            kind: IndexKind::Identity,
            t: 1,
            threshold: 1,
        }
    }

    /// `p_n <= n^2` from `n = 2` on.
    pub fn primes() -> Self {
        IndexMap {
            kind: IndexKind::Primes,
            t: 2,
            threshold: 2,
        }
    }

    pub fn floor_beta(beta: BigRational) -> Result<Self> {
        if beta <= BigRational::one() {
            return Err(Error::param(format!(
                "floorbeta needs beta > 1, got {beta}"
            )));
        }
        // floor(n beta) <= n^2 once n >= beta
        let threshold = beta.ceil().to_integer().to_u64().unwrap_or(u64::MAX).max(1);
        Ok(IndexMap {
            kind: IndexKind::FloorBeta(beta),
            t: 2,
            threshold,
        })
    }

    pub fn explicit(values: Vec<BigInt>, t: u32) -> Self {
        IndexMap {
            kind: IndexKind::Explicit(values),
            t,
            threshold: 1,
        }
    }

    pub fn with_exponent(mut self, t: u32) -> Self {
        self.t = t;
        self
    }

    /// `m_1 .. m_count`, validated for distinctness and the `n^t` bound.
    pub fn generate(&self, count: usize) -> Result<Vec<BigInt>> {
        let values: Vec<BigInt> = match &self.kind {
            IndexKind::Identity => (1..=count as u64).map(BigInt::from).collect(),
            IndexKind::Primes => first_primes(count).into_iter().map(BigInt::from).collect(),
            IndexKind::FloorBeta(beta) => (1..=count as u64)
                .map(|n| (beta * BigInt::from(n)).floor().to_integer())
                .collect(),
            IndexKind::Explicit(v) => {
                if v.len() < count {
                    return Err(Error::param(format!(
                        "explicit index map has {} values, {count} requested",
                        v.len()
                    )));
                }
                v[..count].to_vec()
            }
        };
        let mut seen = BTreeSet::new();
        for (i, m) in values.iter().enumerate() {
            if !seen.insert(m) {
                return Err(Error::param(format!(
                    "index map repeats value {m} at n={}",
                    i + 1
                )));
            }
            let n = i as u64 + 1;
            if n >= self.threshold && m.abs() > BigInt::from(n).pow(self.t) {
                return Err(Error::param(format!(
                    "index map violates |m_n| <= n^{} at n={n} (m_n={m})",
                    self.t
                )));
            }
        }
        Ok(values)
    }
}

/// A sequence family `(a_n)_{n >= 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    /// `a_n = P(m_n)`.
    Poly(IntPolynomial, IndexMap),
    /// Positive integers whose digit sum in `base` is even.
    DigitParityEven {
        base: u32,
    },
    /// `a_n = q^n`.
    Geometric {
        q: u32,
    },
    /// The sorted, deduplicated union of `2^{dk} + j 2^{dk+d-k}`, `0 <= j < 2^k`, `k >= 1`.
    Theorem5 {
        d: u32,
    },
    Explicit(Vec<BigInt>),
}

impl SequenceSpec {
    pub fn squares() -> Self {
        SequenceSpec::Poly(IntPolynomial::monomial(2), IndexMap::identity())
    }

    pub fn kronecker() -> Self {
        SequenceSpec::Poly(IntPolynomial::monomial(1), IndexMap::identity())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::DigitParityEven { base } if *base < 2 => Err(Error::param(format!(
                "digit-even base must be >= 2, got {base}"
            ))),
            SequenceSpec::Geometric { q } if *q < 2 => Err(Error::param(format!(
                "geometric ratio must be >= 2, got {q}"
            ))),
            SequenceSpec::Theorem5 { d } if *d < 1 => Err(Error::param("thm5 needs d >= 1")),
            _ => Ok(()),
        }
    }

    /// Reads `explicit:@file` contents: one integer per line, blank lines ignored.
    pub fn explicit_from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.parse::<BigInt>().map_err(|_| {
                    Error::param(format!("not an integer in {}: {l:?}", path.display()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SequenceSpec::Explicit(values))
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::param(format!("sequence spec without kind: {s:?}")))?;
        let spec = match head.trim() {
            "poly" => parse_poly(rest)?,
            "digit-even" => SequenceSpec::DigitParityEven {
                base: parse_num(rest, "digit-even base")?,
            },
            "geom" => SequenceSpec::Geometric {
                q: parse_num(rest, "geometric ratio")?,
            },
            "thm5" => {
                let d = rest.trim().strip_prefix("d=").unwrap_or(rest);
                SequenceSpec::Theorem5 {
                    d: parse_num(d, "thm5 d")?,
                }
            }
            "explicit" => {
                let path = rest.strip_prefix('@').ok_or_else(|| {
                    Error::param("explicit sequences are given as explicit:@file")
                })?;
                SequenceSpec::explicit_from_file(Path::new(path))?
            }
            other => return Err(Error::param(format!("unknown sequence kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::param(format!("bad {what}: {s:?}")))
}

/// Parses `p/q`, an integer, or an exact decimal such as `0.00390625`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::param(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => match s.split_once('.') {
            // exact decimal
            Some((int, frac)) => {
                let digits = frac.len() as u32;
                let sign = if int.starts_with('-') { -1 } else { 1 };
                let int: BigInt = if int.is_empty() || int == "-" {
                    BigInt::zero()
                } else {
                    int.parse().map_err(|_| bad())?
                };
                let frac: BigInt = if frac.is_empty() {
                    BigInt::zero()
                } else {
                    frac.parse().map_err(|_| bad())?
                };
                if frac.is_negative() {
                    return Err(bad());
                }
                let scale = BigInt::from(10).pow(digits);
                Ok(BigRational::new(int * &scale + sign * frac, scale))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        },
    }
}

fn parse_poly(rest: &str) -> Result<SequenceSpec> {
    let mut parts = rest.split(';');
    let coeffs = parts
        .next()
        .unwrap_or_default()
        .split(',')
        .map(|c| parse_num::<BigInt>(c, "polynomial coefficient"))
        .collect::<Result<Vec<_>>>()?;
    let mut map = IndexMap::identity();
    let mut t = None;
    for part in parts {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::param(format!("bad poly option {part:?}")))?;
        match key.trim() {
            "map" => {
                map = match value.trim() {
                    "identity" => IndexMap::identity(),
                    "primes" => IndexMap::primes(),
                    v => match v.strip_prefix("floorbeta:") {
                        Some(beta) => IndexMap::floor_beta(parse_rational(beta)?)?,
                        None => return Err(Error::param(format!("unknown index map {v:?}"))),
                    },
                }
            }
            "t" => t = Some(parse_num(value, "growth exponent t")?),
            other => return Err(Error::param(format!("unknown poly option {other:?}"))),
        }
    }
    if let Some(t) = t {
        map = map.with_exponent(t);
    }
    Ok(SequenceSpec::Poly(IntPolynomial::new(coeffs), map))
}

/// The first `count` terms `a_1 .. a_count` of `spec`.
pub fn generate(spec: &SequenceSpec, count: usize) -> Result<Vec<BigInt>> {
    if count == 0 {
        return Err(Error::pre("generate needs N >= 1"));
    }
    spec.validate()?;
    Ok(match spec {
        SequenceSpec::Poly(p, map) => map.generate(count)?.iter().map(|m| p.eval(m)).collect(),
        SequenceSpec::DigitParityEven { base } => digit_parity_even(*base as u64, count),
        SequenceSpec::Geometric { q } => {
            let q = BigInt::from(*q);
            std::iter::successors(Some(q.clone()), |prev| Some(prev * &q))
                .take(count)
                .collect()
        }
        SequenceSpec::Theorem5 { d } => theorem5(*d, count),
        SequenceSpec::Explicit(values) => {
            if values.len() < count {
                return Err(Error::param(format!(
                    "explicit sequence has {} terms, {count} requested",
                    values.len()
                )));
            }
            values[..count].to_vec()
        }
    })
}

fn digit_parity_even(base: u64, count: usize) -> Vec<BigInt> {
    let digit_sum = |mut m: u64| {
        let mut s = 0;
        while m > 0 {
            s += m % base;
            m /= base;
        }
        s
    };
    (1u64..)
        .filter(|&m| digit_sum(m) % 2 == 0)
        .take(count)
        .map(BigInt::from)
        .collect()
}

fn theorem5(d: u32, count: usize) -> Vec<BigInt> {
    let d = d as u64;
    let mut values = BTreeSet::new();
    for k in 1u64.. {
        let base = BigInt::one() << (d * k);
        let step = BigInt::one() << (d * k + d - k);
        let mut v = base;
        for _ in 0..(1u64 << k) {
            values.insert(v.clone());
            v += &step;
        }
        // block k+1 and later start at 2^{d(k+1)} or above
        let settled = BigInt::one() << (d * (k + 1));
        if values.range(..settled).count() >= count {
            break;
        }
    }
    values.into_iter().take(count).collect()
}

/// The first `count` primes, by a sieve of Eratosthenes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let n = count as f64;
    let limit = if count < 6 {
        15
    } else {
        (n * (n.ln() + n.ln().ln())).ceil() as usize + 1
    };
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(count);
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if primes.len() == count {
            break;
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Outcome of [`check_growth`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Pass,
    /// `index` is the 1-based position of `a_{n+1}` in the first failing pair.
    Fail {
        index: usize,
    },
}

/// Checks `a_{n+1} / a_n >= 1 + c / a_n^{1/d}` for every consecutive pair.
///
/// Decided exactly as `(a_{n+1} - a_n)^d >= c^d a_n^{d-1}`.
pub fn check_growth(terms: &[BigInt], d: u32, c: &BigRational) -> Result<Growth> {
    if d < 1 {
        return Err(Error::param("growth degree d must be >= 1"));
    }
    if !c.is_positive() {
        return Err(Error::param(format!(
            "growth constant must be positive, got {c}"
        )));
    }
    ensure_increasing_positive(terms)?;
    let num_d = c.numer().pow(d);
    let den_d = c.denom().pow(d);
    for (i, w) in terms.windows(2).enumerate() {
        let gap = &w[1] - &w[0];
        if gap.pow(d) * &den_d < &num_d * w[0].pow(d - 1) {
            return Ok(Growth::Fail { index: i + 2 });
        }
    }
    Ok(Growth::Pass)
}

/// Largest `c` for which [`check_growth`] passes: `min_n (a_{n+1} - a_n) / a_n^{1 - 1/d}`.
///
/// `None` for fewer than two terms.
pub fn max_growth_constant(terms: &[BigInt], d: u32) -> Result<Option<f64>> {
    ensure_increasing_positive(terms)?;
    let expo = 1.0 - 1.0 / d as f64;
    Ok(terms
        .windows(2)
        .map(|w| {
            let gap = (&w[1] - &w[0]).to_f64().unwrap_or(f64::INFINITY);
            let a = w[0].to_f64().unwrap_or(f64::INFINITY);
            gap / a.powf(expo)
        })
        .reduce(f64::min))
}

fn ensure_increasing_positive(terms: &[BigInt]) -> Result<()> {
    if terms.first().is_some_and(|a| !a.is_positive()) {
        return Err(Error::pre("growth check needs positive terms"));
    }
    if let Some(i) = terms.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::pre(format!(
            "growth check needs strictly increasing terms (a_{} >= a_{})",
            i + 1,
            i + 2
        )));
    }
    Ok(())
}

/// For `a_n = n^d`: the smallest `n0 <= scan_max` such that
/// `1 + d/a_n^{1/d} < a_{n+1}/a_n < 1 + (d+1)/a_n^{1/d}` holds for all `n0 <= n <= scan_max`.
///
/// Multiplying through by `n^d` makes this `n^d + d n^{d-1} < (n+1)^d < n^d + (d+1) n^{d-1}`.
pub fn power_ratio_bracket_start(d: u32, scan_max: u64) -> Option<u64> {
    if d < 1 {
        return None;
    }
    let holds = |n: u64| {
        let x = BigInt::from(n);
        let lead = x.pow(d);
        let sub = x.pow(d - 1);
        let next = (&x + 1u32).pow(d);
        &lead + &sub * d < next && next < lead + sub * (d + 1)
    };
    let mut start = None;
    for n in (1..=scan_max).rev() {
        if holds(n) {
            start = Some(n);
        } else {
            break;
        }
    }
    start
}
