mod common;

use common::*;
use mdlab::arith::{self, ReprMode};
use mdlab::sequences::IntPolynomial;
use num_bigint::BigInt;
use rand::Rng;

fn values(p: &IntPolynomial, x: usize) -> Vec<BigInt> {
    (1..=x).map(|v| p.eval(&BigInt::from(v))).collect()
}

#[test]
fn difference_counts_obey_divisor_bound() {
    for (coeffs, d) in [
        (vec![0, 0, 1], 2u64),
        (vec![1, 2, 0, 1], 3),
        (vec![0, -3, 1], 2),
    ] {
        let p = IntPolynomial::from_i64(&coeffs);
        let hist = arith::repr_histogram(&values(&p, 1000), ReprMode::Diff).unwrap();
        for n in (-10_000i64..=10_000).filter(|&n| n != 0) {
            let count = hist.counts.get(&BigInt::from(n)).copied().unwrap_or(0);
            assert!(
                count <= 2 * (d - 1) * arith::divisor_count(n).unwrap(),
                "P = {p}, n = {n}"
            );
        }
    }
}

#[test]
fn counts_agree_with_double_loop() {
    let p = IntPolynomial::from_i64(&[3, -1, 2]);
    let f = values(&p, 40);
    for mode in [ReprMode::Sum, ReprMode::Diff] {
        let hist = arith::repr_histogram(&f, mode).unwrap();
        for n in -200i64..400 {
            let n = BigInt::from(n);
            let mut brute = 0;
            for a in &f {
                for b in &f {
                    let v = match mode {
                        ReprMode::Sum => a + b,
                        ReprMode::Diff => a - b,
                    };
                    if v == n {
                        brute += 1;
                    }
                }
            }
            assert_eq!(arith::count_repr(&f, &n, mode).unwrap().count, brute);
            assert_eq!(hist.counts.get(&n).copied().unwrap_or(0), brute);
        }
    }
}

#[test]
fn sum_histogram_totals_x_squared() {
    let f = values(&IntPolynomial::from_i64(&[0, 1, 1]), 300);
    let hist = arith::repr_histogram(&f, ReprMode::Sum).unwrap();
    assert_eq!(hist.counts.values().sum::<u64>(), 300 * 300);
}

#[test]
fn divide_difference_identity_at_random_points() {
    let mut rng = rng(3);
    for _ in 0..10 {
        let deg = rng.gen_range(1..7);
        let coeffs: Vec<i64> = (0..=deg)
            .map(|_| rng.gen_range(-50..50))
            .chain([1])
            .collect();
        let p = IntPolynomial::from_i64(&coeffs);
        let q = arith::divide_difference(&p).unwrap();
        for _ in 0..100 {
            let x = BigInt::from(rng.gen_range(-10_000i64..10_000));
            let y = BigInt::from(rng.gen_range(-10_000i64..10_000));
            assert_eq!(p.eval(&x) - p.eval(&y), (&x - &y) * q.eval(&x, &y));
        }
    }
}

#[test]
fn divisor_counts_against_trial_loop() {
    for n in 1i64..2000 {
        let brute = (1..=n).filter(|d| n % d == 0).count() as u64;
        assert_eq!(arith::divisor_count(n).unwrap(), brute);
        assert_eq!(arith::divisor_count(-n).unwrap(), brute);
    }
}
