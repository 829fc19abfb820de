//! N D_N of {n^2 alpha} against {n alpha} for one seeded alpha, with the
//! exponential-sum lower bound alongside.
//!
//! ```bash
//! cargo run --release --example discrepancy_profile
//! ```

use mdlab::discrepancy::{self, AlphaValue, DEFAULT_ALPHA_BITS};
use mdlab::harness::{self, XTransform};
use mdlab::sequences::{self, SequenceSpec};

fn main() -> mdlab::error::Result<()> {
    let alpha = AlphaValue::seeded(0, DEFAULT_ALPHA_BITS);
    let checkpoints = harness::default_checkpoints();
    println!("alpha ~ {:.12}", alpha.to_f64());

    for (name, spec) in [
        ("squares", SequenceSpec::squares()),
        ("kronecker", SequenceSpec::kronecker()),
    ] {
        let rows = discrepancy::discrepancy_profile(&spec, &alpha, &checkpoints)?;
        let records = harness::profile_records(&rows);
        println!("\n{name}");
        println!("{:>7} {:>12} {:>12}", "N", "N D_N", "running max");
        for r in &records {
            println!("{:>7} {:>12.3} {:>12.3}", r.n, r.nd_n, r.running_max_nd);
        }
        let fit = harness::fit_exponent(&records, XTransform::LogN)?;
        println!(
            "slope of log max N D_N against log N: {:.3} (r^2 {:.3})",
            fit.slope, fit.r2
        );
    }

    let terms = sequences::generate(&SequenceSpec::squares(), 1024)?;
    let nd =
        1024.0 * discrepancy::extreme_discrepancy(&discrepancy::fractional_parts(&terms, &alpha))?;
    let koksma = discrepancy::koksma_lower_bound(&terms, &alpha, 64)?;
    println!("\nN = 1024 squares: max_H |S(H alpha)|/(4H) = {koksma:.3} <= N D_N = {nd:.3}");
    Ok(())
}
