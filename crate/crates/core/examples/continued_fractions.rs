//! Exact and certified continued fractions, and S_L along beta^k alpha.
//!
//! ```bash
//! cargo run --release --example continued_fractions
//! ```

use mdlab::cfrac::{self, Golden, RealSource, SeededReal};
use mdlab::discrepancy::AlphaValue;
use num_rational::BigRational;

fn main() -> mdlab::error::Result<()> {
    let x = BigRational::new(355.into(), 113.into());
    println!("355/113 = {}", cfrac::cf_expand(&x, 100)?);

    let (lo, hi) = Golden.enclose(256);
    let cf = cfrac::cf_expand_interval(&lo, &hi, 1000)?;
    println!(
        "golden ratio from a 256-bit enclosure: {} certified quotients",
        cf.certified_count
    );

    println!(
        "S_2(1/3) with beta = 2: {}",
        cfrac::s_l_statistic(&BigRational::new(1.into(), 3.into()), 2, 2)?
    );
    for l in [8, 16, 32, 64] {
        let s =
            cfrac::s_l_statistic_real(&SeededReal { seed: 0 }, 2, l, cfrac::DEFAULT_PRECISION_CAP)?;
        println!(
            "S_{l:<2} = {s:>8}   S_L / L^2 = {:.2}",
            s.to_string().parse::<f64>().unwrap_or(0.0) / (l * l) as f64
        );
    }

    let k = cfrac::kronecker_nd(&AlphaValue::golden(192), 1000)?;
    println!(
        "\n{{j phi}}, n = 1000: n D_n = {:.3}, sum (b_i + 1) up to q_M >= n: {}",
        k.nd, k.quotient_sum
    );
    Ok(())
}
