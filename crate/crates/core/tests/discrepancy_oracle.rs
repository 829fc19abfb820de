mod common;

use common::*;
use mdlab::discrepancy::{self, AlphaValue, SamplePoints};
use mdlab::sequences::{self, SequenceSpec};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn matches_brute_force_on_random_sets() {
    let mut rng = rng(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=200);
        let pts: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let sp = SamplePoints::from_values(pts.clone()).unwrap();
        let d = discrepancy::extreme_discrepancy(&sp).unwrap();
        let ds = discrepancy::star_discrepancy(&sp).unwrap();
        assert!((d - brute_extreme(&pts)).abs() < 1e-12, "extreme, n = {n}");
        assert!((ds - brute_star(&pts)).abs() < 1e-12, "star, n = {n}");
    }
}

#[test]
fn matches_brute_force_with_ties_and_lattices() {
    let sets: Vec<Vec<f64>> = vec![
        vec![0.0; 5],
        vec![0.5, 0.5, 0.25],
        (0..16).map(|i| i as f64 / 16.0).collect(),
        (0..9).map(|i| (2 * i + 1) as f64 / 18.0).collect(),
        vec![0.0, 0.999_999],
    ];
    for pts in sets {
        let sp = SamplePoints::from_values(pts.clone()).unwrap();
        assert!(
            (discrepancy::extreme_discrepancy(&sp).unwrap() - brute_extreme(&pts)).abs() < 1e-12
        );
        assert!((discrepancy::star_discrepancy(&sp).unwrap() - brute_star(&pts)).abs() < 1e-12);
    }
}

#[test]
fn squares_profile_against_oracle() {
    let alpha = AlphaValue::seeded(7, 192);
    let terms = sequences::generate(&SequenceSpec::squares(), 1024).unwrap();
    let rows = discrepancy::profile_terms(&terms, &alpha, &[1, 10, 1024]).unwrap();
    assert_eq!(rows[0].d_n, 1.0);
    for row in &rows {
        let pts = discrepancy::fractional_parts(&terms[..row.n], &alpha);
        assert!((row.d_n - brute_extreme(pts.values())).abs() < 1e-12);
    }
}

#[test]
fn koksma_against_direct_sums() {
    let alpha = AlphaValue::golden(192);
    let terms = sequences::generate(&SequenceSpec::squares(), 100).unwrap();
    let got = discrepancy::koksma_lower_bound(&terms, &alpha, 50).unwrap();
    let want = (1..=50u64)
        .map(|h| {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for n in 1..=100u64 {
                // n^2 h alpha mod 1 via the exact residue of n^2 h p mod q
                let r = alpha.dilate(&num_bigint::BigInt::from(n * n * h)).to_f64();
                re += (std::f64::consts::TAU * r).cos();
                im += (std::f64::consts::TAU * r).sin();
            }
            re.hypot(im) / (4.0 * h as f64)
        })
        .fold(0.0, f64::max);
    assert!((got - want).abs() < 1e-9);
}

#[test]
fn profile_uses_exact_prefixes() {
    let alpha = AlphaValue::seeded(2, 192);
    let spec = SequenceSpec::Theorem5 { d: 2 };
    let long = discrepancy::discrepancy_profile(&spec, &alpha, &[50, 300]).unwrap();
    let short = discrepancy::discrepancy_profile(&spec, &alpha, &[50]).unwrap();
    assert_eq!(long[0], short[0]);
}

proptest! {
    #[test]
    fn star_and_extreme_are_comparable(pts in prop::collection::vec(0.0f64..1.0, 1..120)) {
        let sp = SamplePoints::from_values(pts).unwrap();
        let d = discrepancy::extreme_discrepancy(&sp).unwrap();
        let ds = discrepancy::star_discrepancy(&sp).unwrap();
        prop_assert!(ds <= d + 1e-15);
        prop_assert!(d <= 2.0 * ds + 1e-15);
        prop_assert!(d <= 1.0 && d >= 1.0 / (2.0 * sp.len() as f64) - 1e-15);
    }

    #[test]
    fn koksma_never_exceeds_nd(seed in 0u64..1000, n in 1usize..200, h in 1u64..32) {
        let alpha = AlphaValue::seeded(seed, 96);
        let terms = sequences::generate(&SequenceSpec::squares(), n).unwrap();
        let nd = n as f64 * discrepancy::extreme_discrepancy(&discrepancy::fractional_parts(&terms, &alpha)).unwrap();
        prop_assert!(discrepancy::koksma_lower_bound(&terms, &alpha, h).unwrap() <= nd + 1e-9);
    }
}
