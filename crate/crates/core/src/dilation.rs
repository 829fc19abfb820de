//! Unions of intervals on the circle, their Fourier coefficients, and the
//! orbit `{h alpha}` visiting them.
//!
//! The second half of the module quantises `|S|` to a step function on a
//! uniform grid and sorts its cells into geometric level sets.

use std::f64::consts::PI;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::discrepancy::AlphaValue;
use crate::error::{Error, Result};
use crate::expsum;
use crate::gcdsum::WeightVector;
use crate::util;

/// Disjoint, sorted, half-open intervals `[a_i, b_i) ⊆ [0, 1)` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    intervals: Vec<(BigRational, BigRational)>,
    measure: BigRational,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion {
            intervals: Vec::new(),
            measure: BigRational::zero(),
        }
    }

    pub fn full() -> Self {
        make_union(vec![(BigRational::zero(), BigRational::one())]).expect("unit interval")
    }

    /// `[a, b)` from integer ratios, for tests and examples.
    pub fn interval(a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        let r = |(n, d): (i64, i64)| {
            if d == 0 {
                Err(Error::param("zero denominator"))
            } else {
                Ok(BigRational::new(n.into(), d.into()))
            }
        };
        make_union(vec![(r(a)?, r(b)?)])
    }

    pub fn intervals(&self) -> &[(BigRational, BigRational)] {
        &self.intervals
    }

    pub fn component_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn measure_exact(&self) -> &BigRational {
        &self.measure
    }

    pub fn measure(&self) -> f64 {
        self.measure.to_f64().unwrap_or(f64::NAN)
    }

    /// Total variation bound `2 * components` of the centred indicator.
    pub fn variation_bound(&self) -> f64 {
        2.0 * self.intervals.len() as f64
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let i = self.intervals.partition_point(|(a, _)| a <= x);
        i > 0 && x < &self.intervals[i - 1].1
    }
}

/// Sorts the raw intervals and merges overlapping or touching ones.
pub fn make_union(mut raw: Vec<(BigRational, BigRational)>) -> Result<IntervalUnion> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    for (a, b) in &raw {
        if a < &zero || b > &one || a >= b {
            return Err(Error::param(format!(
                "interval [{a}, {b}) is not inside [0, 1) with a < b"
            )));
        }
    }
    raw.sort();
    let mut intervals: Vec<(BigRational, BigRational)> = Vec::with_capacity(raw.len());
    for (a, b) in raw {
        match intervals.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => intervals.push((a, b)),
        }
    }
    let measure = intervals.iter().map(|(a, b)| b - a).sum();
    Ok(IntervalUnion { intervals, measure })
}

/// Cosine and sine coefficients at frequency `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierPair {
    pub j: u64,
    pub u: f64,
    pub v: f64,
}

/// `(cos 2 pi {j x}, sin 2 pi {j x})` with the reduction done exactly.
fn circle_point(j: u64, x: &BigRational) -> (f64, f64) {
    let r = (x.numer() * BigInt::from(j)).mod_floor(x.denom());
    let z = expsum::unit_phase(&r, x.denom());
    (z.re, z.im)
}

/// Fourier coefficients of the centred indicator of `r` at frequency `j`:
/// `u_j = sum [sin 2 pi j b - sin 2 pi j a] / (pi j)` and
/// `v_j = sum [cos 2 pi j a - cos 2 pi j b] / (pi j)`.
pub fn indicator_fourier(r: &IntervalUnion, j: u64) -> Result<FourierPair> {
    if j == 0 {
        return Err(Error::pre("fourier frequency must be >= 1"));
    }
    let mut u = 0.0;
    let mut v = 0.0;
    for (a, b) in r.intervals() {
        let (ca, sa) = circle_point(j, a);
        let (cb, sb) = circle_point(j, b);
        u += sb - sa;
        v += ca - cb;
    }
    let scale = PI * j as f64;
    Ok(FourierPair {
        j,
        u: u / scale,
        v: v / scale,
    })
}

/// Sum of the first `g` Fourier terms of the centred indicator at `x`.
pub fn fourier_partial_sum(r: &IntervalUnion, g: u64, x: f64) -> Result<f64> {
    if g == 0 {
        return Err(Error::pre("partial sum needs G >= 1"));
    }
    let mut acc = util::CompensatedSum::default();
    for j in 1..=g {
        let c = indicator_fourier(r, j)?;
        let (s, co) = (2.0 * PI * j as f64 * x).sin_cos();
        acc.add(c.u * co + c.v * s);
    }
    Ok(acc.value())
}

/// Weights `|u_1| .. |u_G|` of the cosine part, as fed to a GCD sum.
pub fn cosine_weights(r: &IntervalUnion, g: u64) -> Result<WeightVector> {
    let u = (1..=g)
        .into_par_iter()
        .map(|j| indicator_fourier(r, j).map(|c| c.u.abs()))
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(u)
}

/// `||1_R - P(R)||_2^2 = P(R) (1 - P(R))`.
pub fn centered_l2(r: &IntervalUnion) -> f64 {
    let m = r.measure_exact();
    (m * (BigRational::one() - m)).to_f64().unwrap_or(f64::NAN)
}

/// Integer residues `[lo, hi)` with `lo/q ∈ [a, b)` for each component.
fn residue_ranges(r: &IntervalUnion, q: &BigInt) -> Vec<(BigInt, BigInt)> {
    let scale = |x: &BigRational| (x * q).ceil().to_integer();
    r.intervals()
        .iter()
        .map(|(a, b)| (scale(a), scale(b)))
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

/// `#{1 <= h <= H : {h alpha} ∈ R}`, exactly.
///
/// Per component, `[h p mod q >= lo]` equals `floor((h p + q - lo)/q) - floor(h p / q)`,
/// so each count is a difference of two floor sums.
pub fn dilated_hits(r: &IntervalUnion, alpha: &AlphaValue, h: u64) -> Result<u64> {
    if h == 0 {
        return Err(Error::pre("dilated hits need H >= 1"));
    }
    let (p, q) = (alpha.numer(), alpha.denom());
    let n = BigInt::from(h);
    let total: BigInt = residue_ranges(r, q)
        .iter()
        .map(|(lo, hi)| {
            let at = |cut: &BigInt| util::floor_sum(&n, q, p, &(p + q - cut));
            at(lo) - at(hi)
        })
        .sum();
    Ok(total.to_u64().expect("count is at most H"))
}

/// Least `x >= 0` with `l <= (a x mod m) <= r`, for `0 <= l <= r < m`.
///
/// When no multiple of `a` lies in `[l, r]` the problem reduces to the same
/// question with modulus `a` and multiplier `m mod a`, as in Euclid's algorithm.
fn least_multiplier(m: &BigInt, a: &BigInt, l: &BigInt, r: &BigInt) -> Option<BigInt> {
    if l.is_zero() {
        return Some(BigInt::zero());
    }
    let a = a.mod_floor(m);
    if a.is_zero() {
        return None;
    }
    let x = l.div_ceil(&a);
    if &a * &x <= *r {
        return Some(x);
    }
    let lr = &a - r.mod_floor(&a);
    let rr = &a - l.mod_floor(&a);
    let y = least_multiplier(&a, &m.mod_floor(&a), &lr, &rr)?;
    Some((l + m * y).div_ceil(&a))
}

/// Least `h` in `1..=h_max` with `{h alpha} ∈ R`.
pub fn first_hit(r: &IntervalUnion, alpha: &AlphaValue, h_max: u64) -> Result<Option<u64>> {
    if h_max == 0 {
        return Err(Error::pre("first hit needs h_max >= 1"));
    }
    let (p, q) = (alpha.numer(), alpha.denom());
    let mut best: Option<BigInt> = None;
    for (lo, hi) in residue_ranges(r, q) {
        let hi = hi - 1;
        // h = x + 1, so we need p x mod q in [lo - p, hi - p] taken mod q
        let (l, rr) = (&lo - p, &hi - p);
        let pieces = if l >= BigInt::zero() {
            vec![(l, rr)]
        } else if rr < BigInt::zero() {
            vec![(l + q, rr + q)]
        } else {
            vec![(l + q, q - 1), (BigInt::zero(), rr)]
        };
        for (l, rr) in pieces {
            if let Some(x) = least_multiplier(q, p, &l, &rr) {
                let h = x + 1;
                if best.as_ref().is_none_or(|b| &h < b) {
                    best = Some(h);
                }
            }
        }
    }
    Ok(best
        .filter(|h| h <= &BigInt::from(h_max))
        .map(|h| h.to_u64().expect("h <= h_max")))
}

/// `|S|` sampled at the left end of each cell `[j/J, (j+1)/J)`.
#[derive(Debug, Clone)]
pub struct StepFunction {
    pub values: Vec<f64>,
    /// `2 pi (sum |a_n|) / J`, bounding `sup |g - |S||`.
    pub sup_error_bound: f64,
}

impl StepFunction {
    pub fn cells(&self) -> usize {
        self.values.len()
    }
}

pub fn quantize_expsum(terms: &[BigInt], cells: usize) -> Result<StepFunction> {
    if cells < 1 {
        return Err(Error::pre("quantisation needs J >= 1"));
    }
    let values = expsum::grid_modulus_fft(terms, cells)?.moduli();
    let mass: BigInt = terms.iter().map(|a| a.abs()).sum();
    Ok(StepFunction {
        values,
        sup_error_bound: 2.0 * PI * mass.to_f64().unwrap_or(f64::INFINITY) / cells as f64,
    })
}

/// `ceil(B^{(1+t) L})`, the grid size for scale `L`.
pub fn quantization_cells(b: f64, t: u32, l: u32) -> u64 {
    b.powf(((1 + t) * l) as f64).ceil() as u64
}

/// Parameters of the level-set construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Params {
    pub tau: Ratio<i64>,
    pub eps: Ratio<i64>,
    pub t: u32,
    pub b_prime: f64,
    pub b: f64,
    /// `B_1, B_2, ...`
    pub b_seq: Vec<u64>,
}

impl Theorem3Params {
    pub fn new(
        tau: Ratio<i64>,
        eps: Ratio<i64>,
        t: u32,
        b_prime: f64,
        b: f64,
        b_seq: Vec<u64>,
    ) -> Result<Self> {
        let zero = Ratio::zero();
        if tau <= zero || tau >= Ratio::one() {
            return Err(Error::param(format!("tau must lie in (0, 1), got {tau}")));
        }
        if eps <= zero || eps >= tau / 2 {
            return Err(Error::param(format!(
                "eps must lie in (0, tau/2), got {eps}"
            )));
        }
        if t < 1 {
            return Err(Error::param("growth exponent t must be >= 1"));
        }
        if !(b_prime > 1.0 && b > b_prime) {
            return Err(Error::param(format!(
                "need 1 < B' < B, got B'={b_prime}, B={b}"
            )));
        }
        if b_seq.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::param("B_L must be strictly increasing"));
        }
        for (i, &bl) in b_seq.iter().enumerate() {
            let l = (i + 1) as f64;
            let (lo, hi) = (b_prime.powf(l), b.powf(l));
            if (bl as f64) < lo * (1.0 - 1e-12) || (bl as f64) > hi * (1.0 + 1e-12) {
                return Err(Error::param(format!(
                    "B_{} = {bl} outside [B'^L, B^L] = [{lo}, {hi}]",
                    i + 1
                )));
            }
        }
        Ok(Theorem3Params {
            tau,
            eps,
            t,
            b_prime,
            b,
            b_seq,
        })
    }

    /// `Q = floor((1 - tau + 2 eps) / (3 eps)) + 1`.
    pub fn level_count(&self) -> usize {
        let q = (Ratio::one() - self.tau + self.eps * 2) / (self.eps * 3);
        q.floor().to_integer() as usize + 1
    }

    /// Exponent of `Delta_i = B_L^{tau - 2 eps + 3 eps i}`.
    pub fn threshold_exponent(&self, i: usize) -> Ratio<i64> {
        self.tau - self.eps * 2 + self.eps * 3 * i as i64
    }

    pub fn b_l(&self, l: usize) -> Result<u64> {
        l.checked_sub(1)
            .and_then(|i| self.b_seq.get(i).copied())
            .ok_or_else(|| Error::param(format!("no B_L for L={l}")))
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Level sets `M^(i) = {Delta_i < g <= Delta_{i+1}}` of a step function.
#[derive(Debug, Clone)]
pub struct LevelSetLadder {
    pub q: usize,
    pub b_l: u64,
    /// `Delta_0 .. Delta_Q`.
    pub thresholds: Vec<f64>,
    /// `M^(0) .. M^(Q-1)`.
    pub levels: Vec<IntervalUnion>,
    /// Level maximising `Delta_{i+1} P(M^(i))`; `None` when all levels are empty.
    pub selected: Option<usize>,
    /// `Delta_{i+1} P(M^(i))` at the selected level.
    pub selected_mass: f64,
    /// `B_L^{tau - eps} / (4 Q)`.
    pub target: f64,
    pub meets_target: bool,
}

pub fn level_ladder(g: &[f64], params: &Theorem3Params, l: usize) -> Result<LevelSetLadder> {
    if g.is_empty() {
        return Err(Error::pre("level ladder needs at least one cell"));
    }
    let b_l = params.b_l(l)?;
    let q = params.level_count();
    let bf = b_l as f64;
    let thresholds: Vec<f64> = (0..=q)
        .map(|i| bf.powf(ratio_f64(params.threshold_exponent(i))))
        .collect();

    let level_of = |v: f64| (0..q).find(|&i| thresholds[i] < v && v <= thresholds[i + 1]);
    let cells = g.len() as i64;
    let cell_edge = |j: usize| BigRational::new(BigInt::from(j), BigInt::from(cells));
    let mut raw: Vec<Vec<(BigRational, BigRational)>> = vec![Vec::new(); q];
    let mut start = 0;
    while start < g.len() {
        let lvl = level_of(g[start]);
        let mut end = start + 1;
        while end < g.len() && level_of(g[end]) == lvl {
            end += 1;
        }
        if let Some(i) = lvl {
            raw[i].push((cell_edge(start), cell_edge(end)));
        }
        start = end;
    }
    let levels = raw
        .into_iter()
        .map(make_union)
        .collect::<Result<Vec<_>>>()?;

    let mut selected = None;
    let mut selected_mass = 0.0;
    for (i, m) in levels.iter().enumerate() {
        let mass = thresholds[i + 1] * m.measure();
        if m.component_count() > 0 && (selected.is_none() || mass > selected_mass) {
            selected = Some(i);
            selected_mass = mass;
        }
    }
    let target = bf.powf(ratio_f64(params.tau - params.eps)) / (4.0 * q as f64);
    Ok(LevelSetLadder {
        q,
        b_l,
        thresholds,
        levels,
        selected,
        selected_mass,
        target,
        meets_target: selected.is_some() && selected_mass >= target,
    })
}

/// `H_L = floor((1 + eta)^L / P(R_L))` and `G_L = (A B (1 + eta))^{2L}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilationBudget {
    pub eta: f64,
    pub l: u32,
    pub h_l: u64,
    pub g_l: f64,
}

impl DilationBudget {
    pub fn new(eta: f64, l: u32, measure: f64, a_base: f64, b_base: f64) -> Result<Self> {
        if eta.is_nan() || eta <= 0.0 {
            return Err(Error::param(format!("eta must be positive, got {eta}")));
        }
        if !(measure > 0.0 && measure <= 1.0) {
            return Err(Error::pre(format!(
                "budget needs 0 < P(R_L) <= 1, got {measure}"
            )));
        }
        let h = ((1.0 + eta).powi(l as i32) / measure).floor();
        let g = (a_base * b_base * (1.0 + eta)).powi(2 * l as i32);
        if h < 1.0 || g.is_nan() || g < 1.0 {
            return Err(Error::param(format!("degenerate budget H_L={h}, G_L={g}")));
        }
        Ok(DilationBudget {
            eta,
            l,
            h_l: h.min(u64::MAX as f64) as u64,
            g_l: g,
        })
    }
}

/// Families `L -> R_L` for the first-hit search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `R_L = [0, base^{-L})`.
    Shrink { base: u32 },
    /// `R_L = [0, 1)`.
    Full,
}

impl Family {
    pub fn member(&self, l: u32) -> Result<IntervalUnion> {
        match *self {
            Family::Full => Ok(IntervalUnion::full()),
            Family::Shrink { base } => {
                if base < 2 {
                    return Err(Error::param("shrink base must be >= 2"));
                }
                let width = BigRational::new(BigInt::one(), BigInt::from(base).pow(l));
                make_union(vec![(BigRational::zero(), width)])
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "full" {
            return Ok(Family::Full);
        }
        let base = s
            .strip_prefix("shrink:")
            .and_then(|b| b.parse().ok())
            .ok_or_else(|| Error::param(format!("family must be shrink:<b> or full, got {s:?}")))?;
        if base < 2 {
            return Err(Error::param("shrink base must be >= 2"));
        }
        Ok(Family::Shrink { base })
    }
}

/// Default multiple of `(1+eta)^L / P(R_L)` searched before recording a miss.
pub const DEFAULT_SAFETY_FACTOR: u64 = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct T4Record {
    #[serde(rename = "L")]
    pub l: u32,
    pub measure: f64,
    /// `floor((1+eta)^L / P(R_L))`.
    #[serde(rename = "H_L")]
    pub h_budget: u64,
    /// Search cap `ceil((1+eta)^L / P(R_L)) * safety`.
    pub h_max: u64,
    pub hit: Option<u64>,
    /// `h_L / H_L` on a hit.
    pub ratio: Option<f64>,
}

/// First hit of `{h alpha}` in `R_L` for `L = 1 ..= l_max`.
pub fn theorem4_search<F>(
    family: F,
    alpha: &AlphaValue,
    eta: f64,
    l_max: u32,
    safety: u64,
) -> Result<Vec<T4Record>>
where
    F: Fn(u32) -> Result<IntervalUnion> + Sync,
{
    if eta.is_nan() || eta <= 0.0 {
        return Err(Error::param(format!("eta must be positive, got {eta}")));
    }
    if safety == 0 {
        return Err(Error::param("safety factor must be >= 1"));
    }
    (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let r = family(l)?;
            let measure = r.measure();
            if measure.is_nan() || measure <= 0.0 {
                return Err(Error::pre(format!("R_{l} has zero measure")));
            }
            let scaled = (1.0 + eta).powi(l as i32) / measure;
            let h_budget = scaled.floor() as u64;
            let h_max = (scaled.ceil() as u64).saturating_mul(safety);
            let hit = first_hit(&r, alpha, h_max)?;
            Ok(T4Record {
                l,
                measure,
                h_budget,
                h_max,
                hit,
                ratio: hit.map(|h| h as f64 / h_budget.max(1) as f64),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn alpha(p: i64, q: i64) -> AlphaValue {
        AlphaValue::new(p, q).unwrap()
    }

    #[test]
    fn union_examples() {
        let u = make_union(vec![(rat(0, 1), rat(1, 2)), (rat(1, 4), rat(3, 4))]).unwrap();
        assert_eq!(u.component_count(), 1);
        assert_eq!(u.measure(), 0.75);
        let e = make_union(vec![]).unwrap();
        assert_eq!((e.measure(), e.component_count()), (0.0, 0));
        let two = make_union(vec![(rat(1, 2), rat(3, 4)), (rat(0, 1), rat(1, 4))]).unwrap();
        assert_eq!((two.component_count(), two.measure()), (2, 0.5));
        let touching = make_union(vec![(rat(0, 1), rat(1, 4)), (rat(1, 4), rat(1, 2))]).unwrap();
        assert_eq!(touching.component_count(), 1);
        assert!(make_union(vec![(rat(1, 2), rat(3, 2))]).is_err());
        assert!(make_union(vec![(rat(1, 2), rat(1, 2))]).is_err());
    }

    #[test]
    fn fourier_examples() {
        let half = IntervalUnion::interval((0, 1), (1, 2)).unwrap();
        let c = indicator_fourier(&half, 1).unwrap();
        assert!(c.u.abs() < 1e-15 && (c.v - 2.0 / PI).abs() < 1e-15);
        let c = indicator_fourier(&half, 2).unwrap();
        assert!(c.u.abs() < 1e-15 && c.v.abs() < 1e-15);
        for j in 1..20 {
            let c = indicator_fourier(&IntervalUnion::full(), j).unwrap();
            assert!(c.u.abs() < 1e-15 && c.v.abs() < 1e-15);
        }
        assert!(indicator_fourier(&half, 0).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        assert!(
            fourier_partial_sum(&IntervalUnion::full(), 7, 0.3)
                .unwrap()
                .abs()
                < 1e-14
        );
        let half = IntervalUnion::interval((0, 1), (1, 2)).unwrap();
        assert!((fourier_partial_sum(&half, 1, 0.25).unwrap() - 2.0 / PI).abs() < 1e-15);
        assert!((fourier_partial_sum(&half, 1001, 0.25).unwrap() - 0.5).abs() < 0.01);
    }

    #[test]
    fn centered_l2_examples() {
        assert_eq!(
            centered_l2(&IntervalUnion::interval((0, 1), (1, 2)).unwrap()),
            0.25
        );
        assert_eq!(centered_l2(&IntervalUnion::empty()), 0.0);
        assert_eq!(
            centered_l2(&IntervalUnion::interval((1, 8), (3, 8)).unwrap()),
            3.0 / 16.0
        );
    }

    #[test]
    fn hits_examples() {
        let half = IntervalUnion::interval((0, 1), (1, 2)).unwrap();
        assert_eq!(dilated_hits(&half, &alpha(1, 4), 4).unwrap(), 2);
        assert_eq!(
            dilated_hits(&IntervalUnion::full(), &alpha(3, 7), 50).unwrap(),
            50
        );
        assert_eq!(dilated_hits(&half, &AlphaValue::zero(), 9).unwrap(), 9);
        let away = IntervalUnion::interval((1, 4), (1, 2)).unwrap();
        assert_eq!(dilated_hits(&away, &AlphaValue::zero(), 9).unwrap(), 0);
    }

    #[test]
    fn first_hit_examples() {
        let r = IntervalUnion::interval((6, 10), (7, 10)).unwrap();
        assert_eq!(first_hit(&r, &alpha(1, 3), 10).unwrap(), Some(2));
        let r = IntervalUnion::interval((1, 4), (1, 2)).unwrap();
        assert_eq!(first_hit(&r, &alpha(1, 3), 10).unwrap(), Some(1));
        let r = IntervalUnion::interval((1, 10), (2, 10)).unwrap();
        assert_eq!(first_hit(&r, &alpha(1, 2), 10).unwrap(), None);
        let r = IntervalUnion::interval((0, 1), (1, 10)).unwrap();
        assert_eq!(first_hit(&r, &AlphaValue::zero(), 3).unwrap(), Some(1));
    }

    fn orbit_first_hit(r: &IntervalUnion, a: &AlphaValue, h_max: u64) -> Option<u64> {
        (1..=h_max).find(|&h| r.contains(&a.dilate(&BigInt::from(h)).to_ratio()))
    }

    #[test]
    fn first_hit_matches_orbit_walk() {
        let unions = [
            IntervalUnion::interval((0, 1), (1, 97)).unwrap(),
            IntervalUnion::interval((40, 97), (41, 97)).unwrap(),
            make_union(vec![(rat(1, 3), rat(17, 50)), (rat(9, 10), rat(91, 100))]).unwrap(),
            IntervalUnion::interval((5, 1000), (6, 1000)).unwrap(),
        ];
        for q in [2i64, 3, 7, 64, 97, 101, 1000, 1009] {
            for p in (0..q).step_by(((q / 13) as usize).max(1)) {
                let a = alpha(p, q);
                for r in &unions {
                    assert_eq!(
                        first_hit(r, &a, 3000).unwrap(),
                        orbit_first_hit(r, &a, 3000),
                        "{p}/{q}"
                    );
                }
            }
        }
    }

    #[test]
    fn quantize_examples() {
        let g = quantize_expsum(&[BigInt::zero()], 5).unwrap();
        assert!(g.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        let g = quantize_expsum(&[BigInt::one()], 4).unwrap();
        assert!(g.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        assert_eq!(quantization_cells(2.0, 1, 3), 64);
        assert_eq!(quantization_cells(1.5, 1, 2), 6);
    }

    fn params() -> Theorem3Params {
        Theorem3Params::new(
            Ratio::new(1, 2),
            Ratio::new(1, 10),
            2,
            5.0,
            101.0,
            vec![100],
        )
        .unwrap()
    }

    #[test]
    fn ladder_thresholds() {
        let p = params();
        assert_eq!(p.level_count(), 3);
        let ladder = level_ladder(&[2.0, 10.0, 70.0], &p, 1).unwrap();
        let want = [
            3.981_071_705_534_973,
            15.848_931_924_611_14,
            63.095_734_448_019_34,
            251.188_643_150_958,
        ];
        for (got, want) in ladder.thresholds.iter().zip(want) {
            assert!((got - want).abs() < 1e-9 * want);
        }
        assert_eq!(ladder.levels[0].intervals(), &[(rat(1, 3), rat(2, 3))]);
        assert_eq!(ladder.levels[1].component_count(), 0);
        assert_eq!(ladder.levels[2].intervals(), &[(rat(2, 3), rat(1, 1))]);
        assert_eq!(ladder.selected, Some(2));
    }

    #[test]
    fn ladder_with_empty_levels() {
        let ladder = level_ladder(&[1.0, 2.0], &params(), 1).unwrap();
        assert_eq!(ladder.selected, None);
        assert!(!ladder.meets_target);
        assert!(level_ladder(&[1.0], &params(), 2).is_err());
    }

    #[test]
    fn params_are_checked() {
        let r = |n, d| Ratio::new(n, d);
        assert!(Theorem3Params::new(r(1, 2), r(1, 4), 1, 2.0, 3.0, vec![2]).is_err());
        assert!(Theorem3Params::new(r(3, 2), r(1, 10), 1, 2.0, 3.0, vec![2]).is_err());
        assert!(Theorem3Params::new(r(1, 2), r(1, 10), 1, 3.0, 2.0, vec![2]).is_err());
        assert!(Theorem3Params::new(r(1, 2), r(1, 10), 1, 2.0, 3.0, vec![2, 2]).is_err());
        assert!(Theorem3Params::new(r(1, 2), r(1, 10), 1, 2.0, 3.0, vec![4]).is_err());
        assert!(Theorem3Params::new(r(1, 2), r(1, 10), 1, 2.0, 3.0, vec![2, 5, 20]).is_ok());
    }

    #[test]
    fn budget_examples() {
        let b = DilationBudget::new(0.5, 4, 1.0 / 16.0, 1.0, 2.0).unwrap();
        assert_eq!(b.h_l, 81);
        assert_eq!(b.g_l, 3f64.powi(8));
        assert!(DilationBudget::new(0.0, 4, 0.5, 1.0, 2.0).is_err());
        assert!(DilationBudget::new(0.5, 4, 0.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn theorem4_examples() {
        let full = theorem4_search(|l| Family::Full.member(l), &alpha(2, 7), 0.5, 6, 64).unwrap();
        assert!(full.iter().all(|r| r.hit == Some(1)));
        let fam = Family::Shrink { base: 2 };
        let recs = theorem4_search(|l| fam.member(l), &alpha(1, 3), 0.5, 10, 64).unwrap();
        assert_eq!(recs[0].hit, Some(1));
        assert!(recs[1..].iter().all(|r| r.hit == Some(3)));
        assert_eq!(recs[3].h_budget, 81);
    }

    #[test]
    fn family_parse() {
        assert_eq!(
            "shrink:2".parse::<Family>().unwrap(),
            Family::Shrink { base: 2 }
        );
        assert!("shrink:1".parse::<Family>().is_err());
        assert!("grow:2".parse::<Family>().is_err());
    }
}
