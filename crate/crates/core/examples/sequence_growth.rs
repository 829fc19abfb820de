//! Generators and the growth condition a_{n+1}/a_n >= 1 + c / a_n^{1/d}.
//!
//! ```bash
//! cargo run --release --example sequence_growth
//! ```

use mdlab::sequences::{self, Growth, SequenceSpec};
use num_rational::BigRational;

fn main() -> mdlab::error::Result<()> {
    for spec in [
        "thm5:d=2",
        "poly:0,0,1",
        "digit-even:2",
        "geom:3",
        "poly:1,0,1;map=primes",
    ] {
        let parsed: SequenceSpec = spec.parse()?;
        let terms = sequences::generate(&parsed, 12)?;
        let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        println!("{spec:<22} {}", shown.join(" "));
    }

    let terms = sequences::generate(&SequenceSpec::Theorem5 { d: 2 }, 4096)?;
    let one = BigRational::from_integer(1.into());
    let verdict = match sequences::check_growth(&terms, 2, &one)? {
        Growth::Pass => "holds".to_string(),
        Growth::Fail { index } => format!("fails at a_{index}"),
    };
    println!("\nd = 2 construction, 4096 terms, c = 1: {verdict}");
    if let Some(c) = sequences::max_growth_constant(&terms, 2)? {
        println!("largest admissible c: {c:.4}");
    }
    if let Some(n0) = sequences::power_ratio_bracket_start(3, 1000) {
        println!("n^3 stays inside its ratio bracket from n = {n0}");
    }
    Ok(())
}
