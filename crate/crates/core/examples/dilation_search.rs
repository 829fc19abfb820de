//! How soon does {h alpha} land in [0, 2^-L)? Exact first hits against the
//! budget (1 + eta)^L / P(R_L).
//!
//! ```bash
//! cargo run --release --example dilation_search
//! ```

use mdlab::dilation::{self, Family, IntervalUnion};
use mdlab::discrepancy::{AlphaValue, DEFAULT_ALPHA_BITS};

fn main() -> mdlab::error::Result<()> {
    let alpha = AlphaValue::seeded(1, DEFAULT_ALPHA_BITS);
    let family = Family::Shrink { base: 2 };
    let records = dilation::theorem4_search(|l| family.member(l), &alpha, 0.5, 18, 64)?;
    println!("{:>3} {:>12} {:>10} {:>8}", "L", "H_L", "h_L", "h_L/H_L");
    for r in &records {
        match (r.hit, r.ratio) {
            (Some(h), Some(q)) => println!("{:>3} {:>12} {:>10} {:>8.4}", r.l, r.h_budget, h, q),
            _ => println!("{:>3} {:>12} {:>10}", r.l, r.h_budget, "miss"),
        }
    }

    let r = IntervalUnion::interval((1, 3), (1, 2))?;
    println!(
        "\n#{{h <= 10^6 : {{h alpha}} in [1/3, 1/2)}} = {}",
        dilation::dilated_hits(&r, &alpha, 1_000_000)?
    );
    let c = dilation::indicator_fourier(&r, 3)?;
    println!(
        "u_3 = {:.6}, v_3 = {:.6}, centred L2^2 = {:.6}",
        c.u,
        c.v,
        dilation::centered_l2(&r)
    );
    Ok(())
}
