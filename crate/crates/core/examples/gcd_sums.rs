//! GCD sums of Fourier weights and the collision counts they bound.
//!
//! ```bash
//! cargo run --release --example gcd_sums
//! ```

use mdlab::dilation::{self, IntervalUnion};
use mdlab::gcdsum::{self, WeightVector};

fn main() -> mdlab::error::Result<()> {
    println!(
        "gcd_sum(1, 1) = {:.12}",
        gcdsum::gcd_sum(&WeightVector::new(vec![1.0, 1.0])?)?
    );
    println!(
        "pairs j1 h1 = j2 h2 with (j1, j2, H) = (4, 6, 12): {}",
        gcdsum::collision_count(4, 6, 12)?
    );

    let r = IntervalUnion::interval((0, 1), (1, 256))?;
    for g in [64, 512, 4096] {
        let w = dilation::cosine_weights(&r, g)?;
        let report = gcdsum::hilberdink_report(&w, gcdsum::DEFAULT_HILBERDINK_C)?;
        println!(
            "G = {g:>4}: gcd sum {:.6}, sum u^2 {:.6}, ratio {:.3}, within bound: {}",
            report.gcd_sum, report.sum_of_squares, report.ratio, report.within_bound
        );
    }
    Ok(())
}
