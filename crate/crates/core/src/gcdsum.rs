//! GCD sums `sum u_i u_j gcd(i, j) / sqrt(i j)` and the lattice-point count
//! behind them.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::util::CompensatedSum;

/// Largest weight vector length evaluated by the quadratic-time sum.
pub const MAX_GCD_SUM_LEN: usize = 1 << 14;

/// Nonnegative weights `u_1 .. u_G`; index `j` of the sum is `position + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    u: Vec<f64>,
}

impl WeightVector {
    pub fn new(u: Vec<f64>) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::param("weight vector needs G >= 1"));
        }
        if let Some(bad) = u.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::param(format!(
                "weights must be finite and >= 0, got {bad}"
            )));
        }
        Ok(WeightVector { u })
    }

    /// `e_j` padded to length `g`.
    pub fn unit(j: usize, g: usize) -> Result<Self> {
        if j == 0 || j > g {
            return Err(Error::param(format!("unit index {j} outside 1..={g}")));
        }
        let mut u = vec![0.0; g];
        u[j - 1] = 1.0;
        Self::new(u)
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.u
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.u
            .iter()
            .map(|x| x * x)
            .collect::<CompensatedSum>()
            .value()
    }
}

/// `sum_{i,j <= G} u_i u_j gcd(i, j) / sqrt(i j)`.
///
/// Rows are summed in parallel and combined in index order, so the result does
/// not depend on the thread count.
pub fn gcd_sum(w: &WeightVector) -> Result<f64> {
    let g = w.len();
    if g > MAX_GCD_SUM_LEN {
        return Err(Error::Resource(format!(
            "gcd sum of length {g} exceeds the direct-evaluation limit {MAX_GCD_SUM_LEN}"
        )));
    }
    let u = w.weights();
    let rows: Vec<f64> = (1..=g as u64)
        .into_par_iter()
        .map(|i| {
            let ui = u[i as usize - 1];
            if ui == 0.0 {
                return 0.0;
            }
            let row: CompensatedSum = (1..=g as u64)
                .filter(|&j| u[j as usize - 1] != 0.0)
                .map(|j| u[j as usize - 1] * i.gcd(&j) as f64 / ((i * j) as f64).sqrt())
                .collect();
            ui * row.value()
        })
        .collect();
    Ok(rows.into_iter().collect::<CompensatedSum>().value())
}

/// `#{(h1, h2) ∈ [1, H]^2 : j1 h1 = j2 h2} = floor(H gcd(j1, j2) / max(j1, j2))`.
pub fn collision_count(j1: u64, j2: u64, h: u64) -> Result<u64> {
    if j1 == 0 || j2 == 0 || h == 0 {
        return Err(Error::pre("collision count needs j1, j2, H >= 1"));
    }
    let g = j1.gcd(&j2) as u128;
    Ok((h as u128 * g / j1.max(j2) as u128) as u64)
}

/// Default constant in the exponential factor of [`hilberdink_report`].
pub const DEFAULT_HILBERDINK_C: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HilberdinkReport {
    pub g: usize,
    pub c: f64,
    pub gcd_sum: f64,
    pub sum_of_squares: f64,
    /// `gcd_sum / sum_of_squares`.
    pub ratio: f64,
    /// `exp(c sqrt(log G / log log G)) * sum_of_squares`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Compares a GCD sum with `exp(c sqrt(log G / log log G)) sum u_j^2`.
pub fn hilberdink_report(w: &WeightVector, c: f64) -> Result<HilberdinkReport> {
    let g = w.len();
    if g < 3 {
        return Err(Error::pre(
            "hilberdink report needs G >= 3 so that log log G > 0",
        ));
    }
    let sum = gcd_sum(w)?;
    let diag = w.sum_of_squares();
    let lg = (g as f64).ln();
    let bound = (c * (lg / lg.ln()).sqrt()).exp() * diag;
    Ok(HilberdinkReport {
        g,
        c,
        gcd_sum: sum,
        sum_of_squares: diag,
        ratio: sum / diag,
        bound,
        within_bound: sum <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_sum_examples() {
        let w = WeightVector::new(vec![1.0]).unwrap();
        assert_eq!(gcd_sum(&w).unwrap(), 1.0);
        let w = WeightVector::new(vec![1.0, 1.0]).unwrap();
        assert!((gcd_sum(&w).unwrap() - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        let mut u = vec![0.0; 9];
        u[5] = 0.7;
        assert!((gcd_sum(&WeightVector::new(u).unwrap()).unwrap() - 0.49).abs() < 1e-15);
    }

    #[test]
    fn gcd_sum_by_definition() {
        let u: Vec<f64> = (1..=30).map(|i| 1.0 / i as f64).collect();
        let mut direct = 0.0;
        for i in 1..=30u64 {
            for j in 1..=30u64 {
                direct += u[i as usize - 1] * u[j as usize - 1] * i.gcd(&j) as f64
                    / ((i * j) as f64).sqrt();
            }
        }
        let fast = gcd_sum(&WeightVector::new(u).unwrap()).unwrap();
        assert!((fast - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn weights_are_validated() {
        assert!(WeightVector::new(vec![]).is_err());
        assert!(WeightVector::new(vec![1.0, -0.5]).is_err());
        assert!(WeightVector::new(vec![f64::NAN]).is_err());
        let big = WeightVector::new(vec![1.0; MAX_GCD_SUM_LEN + 1]).unwrap();
        assert!(matches!(gcd_sum(&big), Err(Error::Resource(_))));
    }

    #[test]
    fn collision_examples() {
        assert_eq!(collision_count(2, 3, 10).unwrap(), 3);
        assert_eq!(collision_count(5, 5, 17).unwrap(), 17);
        assert_eq!(collision_count(4, 6, 12).unwrap(), 4);
        assert!(collision_count(0, 1, 1).is_err());
    }

    #[test]
    fn hilberdink_examples() {
        let mut u = vec![0.0; 10];
        u[0] = 1.0;
        u[1] = 1.0;
        let r = hilberdink_report(&WeightVector::new(u).unwrap(), 10.0).unwrap();
        assert!((r.ratio - (2.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(r.within_bound);
        let r = hilberdink_report(&WeightVector::unit(1, 5).unwrap(), 0.0).unwrap();
        assert_eq!(r.ratio, 1.0);
        assert!(r.within_bound);
        assert!(hilberdink_report(&WeightVector::new(vec![1.0, 1.0]).unwrap(), 10.0).is_err());
    }
}
