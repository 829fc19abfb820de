//! Independent, deliberately naive oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints<I: IntoIterator<Item = i64>>(v: I) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Sup of |count/N - length| over all intervals with endpoints among the
/// points and {0, 1}, taking both the closed and the open version of each.
pub fn brute_extreme(points: &[f64]) -> f64 {
    let n = points.len() as f64;
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    let mut ends = vec![0.0];
    ends.extend_from_slice(&xs);
    ends.push(1.0);
    let count = |lo: f64, hi: f64, closed: bool| {
        xs.iter()
            .filter(|&&x| {
                if closed {
                    lo <= x && x <= hi
                } else {
                    lo < x && x < hi
                }
            })
            .count() as f64
    };
    let mut best: f64 = 0.0;
    for (i, &u) in ends.iter().enumerate() {
        for &v in &ends[i..] {
            best = best.max(count(u, v, true) / n - (v - u));
            best = best.max((v - u) - count(u, v, false) / n);
        }
    }
    best
}

/// Sup over anchored intervals [0, b) and [0, b].
pub fn brute_star(points: &[f64]) -> f64 {
    let n = points.len() as f64;
    let mut cands: Vec<f64> = points.to_vec();
    cands.push(1.0);
    let mut best: f64 = 0.0;
    for &b in &cands {
        let open = points.iter().filter(|&&x| x < b).count() as f64;
        let closed = points.iter().filter(|&&x| x <= b).count() as f64;
        best = best.max((open / n - b).abs()).max((closed / n - b).abs());
    }
    best
}

/// `#{(k, l, m, n) : a_k + a_l = a_m + a_n}` by four nested loops.
pub fn brute_energy(terms: &[i64]) -> u64 {
    let mut e = 0;
    for a in terms {
        for b in terms {
            for c in terms {
                for d in terms {
                    if a + b == c + d {
                        e += 1;
                    }
                }
            }
        }
    }
    e
}

/// `{h p / q}` for `h = 1 ..= h_max`, as exact numerators over `q`.
pub fn orbit(p: i64, q: i64, h_max: u64) -> Vec<i64> {
    (1..=h_max as i64).map(|h| (h * p).rem_euclid(q)).collect()
}

/// Membership of `r / q` in a list of half-open rational intervals, by cross multiplication.
pub fn in_union(r: i64, q: i64, intervals: &[(BigRational, BigRational)]) -> bool {
    let x = rat(r, q);
    intervals.iter().any(|(a, b)| a <= &x && &x < b)
}

/// `sum e(a_n k / K)` with each phase reduced modulo `K` first.
pub fn direct_sum(terms: &[BigInt], k: u64, modulus: u64) -> (f64, f64) {
    let m = BigInt::from(modulus);
    let (mut re, mut im) = (0.0, 0.0);
    for a in terms {
        let r = (a * BigInt::from(k)).mod_floor(&m).to_f64().unwrap();
        let t = std::f64::consts::TAU * r / modulus as f64;
        re += t.cos();
        im += t.sin();
    }
    (re, im)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Continued fraction of `p / q` by the textbook loop.
pub fn euclid(mut p: BigInt, mut q: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    while !q.is_zero() {
        let (b, r) = p.div_mod_floor(&q);
        out.push(b);
        (p, q) = (q, r);
    }
    out
}

/// Random half-open sub-intervals of [0, 1) with endpoints `k / den`.
pub fn random_raw_intervals(
    rng: &mut impl Rng,
    max_parts: usize,
    den: i64,
) -> Vec<(BigRational, BigRational)> {
    let parts = rng.gen_range(1..=max_parts);
    (0..parts)
        .map(|_| {
            let a = rng.gen_range(0..den);
            let b = rng.gen_range(a + 1..=den);
            (rat(a, den), rat(b, den))
        })
        .collect()
}
