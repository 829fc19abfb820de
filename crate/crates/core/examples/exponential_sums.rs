//! Norms of S(x) = sum e(a_n x): the FFT grid, the L1 estimate, and the exact
//! L2 and L4 norms from collisions and additive energy.
//!
//! ```bash
//! cargo run --release --example exponential_sums
//! ```

use mdlab::discrepancy::AlphaValue;
use mdlab::expsum;
use mdlab::sequences::{self, SequenceSpec};
use num_bigint::BigInt;

fn main() -> mdlab::error::Result<()> {
    let squares = sequences::generate(&SequenceSpec::squares(), 256)?;
    let norms = expsum::norm_bundle(&squares, 1 << 16)?;
    println!("squares, N = 256");
    println!(
        "  L1 ~ {:.3} (+- {:.3})",
        norms.l1_estimate, norms.l1_error_bound
    );
    println!("  L2^2 = {}, L4^4 = {}", norms.l2_exact, norms.l4_exact);
    println!("  Hölder lower bound for L1: {:.3}", norms.holder_lower);

    // Powers of two form a Sidon set, so only trivial quadruples survive
    let powers: Vec<BigInt> = (1..=16).map(|k| BigInt::from(1u64) << k).collect();
    println!(
        "\nenergy of 2^1..2^16: {}",
        expsum::additive_energy(&powers)?
    );
    let line: Vec<BigInt> = (1..=128).map(BigInt::from).collect();
    println!(
        "energy of 1..128: {} = (2N^3 + N)/3",
        expsum::additive_energy(&line)?
    );

    let grid = expsum::grid_modulus_fft(&squares, 64)?;
    let direct = expsum::eval_point(&squares, &AlphaValue::new(5, 64)?);
    println!(
        "\n|S(5/64)|: fft {:.9}, direct {:.9}",
        grid.values[5].norm(),
        direct.norm()
    );
    Ok(())
}
