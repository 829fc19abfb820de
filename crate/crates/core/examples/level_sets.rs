//! Quantise |S| for squares on a grid and sort the cells into geometric level sets.
//!
//! ```bash
//! cargo run --release --example level_sets
//! ```

use mdlab::dilation::{self, Theorem3Params};
use mdlab::sequences::{self, SequenceSpec};
use num_rational::Ratio;

fn main() -> mdlab::error::Result<()> {
    let n = 64;
    let terms = sequences::generate(&SequenceSpec::squares(), n)?;
    let g = dilation::quantize_expsum(&terms, 1 << 14)?;
    println!("{} cells, sup error <= {:.4}", g.cells(), g.sup_error_bound);

    let params = Theorem3Params::new(
        Ratio::new(1, 2),
        Ratio::new(1, 10),
        2,
        8.0,
        64.0,
        vec![n as u64],
    )?;
    let ladder = dilation::level_ladder(&g.values, &params, 1)?;
    println!("Q = {}, B_L = {}", ladder.q, ladder.b_l);
    for (i, m) in ladder.levels.iter().enumerate() {
        println!(
            "  ({:>7.3}, {:>7.3}]: {:>5} runs, measure {:.5}",
            ladder.thresholds[i],
            ladder.thresholds[i + 1],
            m.component_count(),
            m.measure()
        );
    }
    println!(
        "selected level {:?}: Delta * measure = {:.4}, target {:.4}, met: {}",
        ladder.selected, ladder.selected_mass, ladder.target, ladder.meets_target
    );
    Ok(())
}
