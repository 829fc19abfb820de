//! Exponential sums `S(x) = sum_n e^{2 pi i a_n x}` and their L1, L2 and L4 norms.
//!
//! L2 and L4 are exact integer counts: the number of pairs `a_m = a_n` and the
//! additive energy `#{a_k + a_l = a_m + a_n}`. L1 is a Riemann sum on an FFT grid
//! with an explicit Lipschitz error bar.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::discrepancy::AlphaValue;
use crate::error::{Error, Result};
use crate::util::{self, CompensatedSum};

/// `e^{2 pi i r/q}` for `0 <= r < q`, with the angle taken in `[-pi, pi)`.
pub(crate) fn unit_phase(r: &BigInt, q: &BigInt) -> Complex64 {
    let mut t = util::unit_ratio_to_f64(r, q);
    if t >= 0.5 {
        t -= 1.0;
    }
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

/// `S(x)` with every phase `a_n x mod 1` reduced exactly before evaluation.
pub fn eval_point(terms: &[BigInt], x: &AlphaValue) -> Complex64 {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for a in terms {
        let z = unit_phase(&x.residue(a), x.denom());
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value())
}

/// `S(k/K)` for `k = 0 .. K-1`.
#[derive(Debug, Clone)]
pub struct ExpSumGrid {
    pub k: usize,
    pub values: Vec<Complex64>,
}

impl ExpSumGrid {
    pub fn moduli(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm()).collect()
    }
}

/// Counts `c[m] = #{n : a_n ≡ m (mod K)}`.
pub fn folded_counts(terms: &[BigInt], k: usize) -> Vec<u64> {
    let modulus = BigInt::from(k);
    let mut counts = vec![0u64; k];
    for a in terms {
        let m = a.mod_floor(&modulus).to_usize().expect("residue below K");
        counts[m] += 1;
    }
    counts
}

/// `S(k/K)` for all `k` as the DFT of the folded counts, since `e(a k/K)` only
/// depends on `a mod K`.
pub fn grid_modulus_fft(terms: &[BigInt], k: usize) -> Result<ExpSumGrid> {
    if k < 1 {
        return Err(Error::pre("grid size K must be >= 1"));
    }
    let mut buf: Vec<Complex64> = folded_counts(terms, k)
        .into_iter()
        .map(|c| Complex64::new(c as f64, 0.0))
        .collect();
    // the inverse transform carries the e^{+2 pi i mk/K} sign
    FftPlanner::new().plan_fft_inverse(k).process(&mut buf);
    buf[0] = Complex64::new(terms.len() as f64, 0.0);
    Ok(ExpSumGrid { k, values: buf })
}

/// Riemann-sum estimate of `∫|S|` on `K` points, and a bound on its error.
///
/// `|S'| <= 2 pi sum |a_n|`, so each cell is off by at most half that over `K`,
/// giving the bound `pi sum |a_n| / K`.
pub fn l1_estimate(terms: &[BigInt], k: usize) -> Result<(f64, f64)> {
    if k < 2 {
        return Err(Error::pre("L1 estimate needs K >= 2"));
    }
    let grid = grid_modulus_fft(terms, k)?;
    let total: CompensatedSum = grid.values.iter().map(|z| z.norm()).collect();
    let mass: BigInt = terms.iter().map(|a| a.abs()).sum();
    let bound = PI * mass.to_f64().unwrap_or(f64::INFINITY) / k as f64;
    Ok((total.value() / k as f64, bound))
}

/// `#{(m, n) : a_m = a_n}`, which equals `∫|S|^2`.
pub fn collision_l2(terms: &[BigInt]) -> u128 {
    let mut sorted = terms.to_vec();
    sorted.sort_unstable();
    sorted
        .chunk_by(|a, b| a == b)
        .map(|run| (run.len() as u128).pow(2))
        .sum()
}

/// Memory limits for [`additive_energy_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnergyConfig {
    /// Upper bound on bytes held by the materialised pairwise sums.
    pub memory_budget_bytes: u64,
    /// Rows of the `N x N` sum table sorted per chunk.
    pub chunk_rows: usize,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        EnergyConfig {
            memory_budget_bytes: 2 << 30,
            chunk_rows: 64,
        }
    }
}

/// `sum_s r(s)^2` with `r(s) = #{(k, l) : a_k + a_l = s}`; equals `∫|S|^4`.
pub fn additive_energy(terms: &[BigInt]) -> Result<u128> {
    additive_energy_with(terms, &EnergyConfig::default())
}

pub fn additive_energy_with(terms: &[BigInt], config: &EnergyConfig) -> Result<u128> {
    let n = terms.len() as u64;
    let narrow = util::narrow_i128(terms, 125);
    let entry_bytes: u64 = match &narrow {
        Some(_) => 24,
        None => {
            24 + 8 * terms
                .iter()
                .map(|a| a.bits().div_ceil(64) + 1)
                .max()
                .unwrap_or(1)
        }
    };
    let need = n.saturating_mul(n).saturating_mul(entry_bytes);
    if need > config.memory_budget_bytes {
        return Err(Error::Resource(format!(
            "additive energy of N={n} needs about {need} bytes, budget is {}; lower N",
            config.memory_budget_bytes
        )));
    }
    let rows = config.chunk_rows.max(1);
    Ok(match narrow {
        Some(small) => chunked_energy(&small, rows, |a, b| a + b),
        None => chunked_energy(terms, rows, |a, b| a + b),
    })
}

/// Sorts the pairwise sums chunk by chunk into run-length form, then merges the
/// chunks in a fixed order and squares the merged multiplicities.
fn chunked_energy<T, F>(terms: &[T], chunk_rows: usize, add: F) -> u128
where
    T: Ord + Clone + Send + Sync,
    F: Fn(&T, &T) -> T + Sync,
{
    let starts: Vec<usize> = (0..terms.len()).step_by(chunk_rows).collect();
    let chunks: Vec<Vec<(T, u64)>> = starts
        .par_iter()
        .map(|&r0| {
            let r1 = (r0 + chunk_rows).min(terms.len());
            let mut sums: Vec<T> = terms[r0..r1]
                .iter()
                .flat_map(|a| terms.iter().map(|b| add(a, b)))
                .collect();
            sums.sort_unstable();
            sums.chunk_by(|a, b| a == b)
                .map(|run| (run[0].clone(), run.len() as u64))
                .collect()
        })
        .collect();

    let mut cursors = vec![0usize; chunks.len()];
    let mut heap: BinaryHeap<Reverse<(T, usize)>> = chunks
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, c)| Reverse((c[0].0.clone(), i)))
        .collect();
    let mut energy = 0u128;
    let mut current: Option<(T, u128)> = None;
    while let Some(Reverse((value, i))) = heap.pop() {
        let count = chunks[i][cursors[i]].1 as u128;
        cursors[i] += 1;
        if let Some(next) = chunks[i].get(cursors[i]) {
            heap.push(Reverse((next.0.clone(), i)));
        }
        match &mut current {
            Some((v, c)) if *v == value => *c += count,
            _ => {
                if let Some((_, c)) = current.take() {
                    energy += c * c;
                }
                current = Some((value, count));
            }
        }
    }
    if let Some((_, c)) = current {
        energy += c * c;
    }
    energy
}

/// `(∫|S|^2)^{3/2} / (∫|S|^4)^{1/2}`, a lower bound for `∫|S|` by Hölder's inequality.
pub fn holder_lower_bound(terms: &[BigInt]) -> Result<f64> {
    let l2 = collision_l2(terms);
    let l4 = additive_energy(terms)?;
    Ok(holder_ratio(l2, l4))
}

fn holder_ratio(l2: u128, l4: u128) -> f64 {
    if l4.is_zero() {
        return 0.0;
    }
    (l2 as f64).powf(1.5) / (l4 as f64).sqrt()
}

/// The L1/L2/L4 norms of `S` for one term list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBundle {
    #[serde(rename = "l1")]
    pub l1_estimate: f64,
    #[serde(rename = "l1_err")]
    pub l1_error_bound: f64,
    #[serde(rename = "l2")]
    pub l2_exact: u128,
    #[serde(rename = "l4")]
    pub l4_exact: u128,
    #[serde(rename = "holder")]
    pub holder_lower: f64,
}

pub fn norm_bundle(terms: &[BigInt], k: usize) -> Result<NormBundle> {
    let (l1_estimate, l1_error_bound) = l1_estimate(terms, k)?;
    let l2_exact = collision_l2(terms);
    let l4_exact = additive_energy(terms)?;
    Ok(NormBundle {
        l1_estimate,
        l1_error_bound,
        l2_exact,
        l4_exact,
        holder_lower: holder_ratio(l2_exact, l4_exact),
    })
}
