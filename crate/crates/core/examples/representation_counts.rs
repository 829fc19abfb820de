//! Counting f(x) ± f(y) = n and the divisor argument behind the difference count.
//!
//! ```bash
//! cargo run --release --example representation_counts
//! ```

use mdlab::arith::{self, ReprMode};
use mdlab::sequences::IntPolynomial;
use num_bigint::BigInt;

fn main() -> mdlab::error::Result<()> {
    let p = IntPolynomial::from_i64(&[0, 0, 0, 1]);
    let values: Vec<BigInt> = (1..=300).map(|x| p.eval(&BigInt::from(x))).collect();

    let hist = arith::repr_histogram(&values, ReprMode::Diff)?;
    let argmax = hist.argmax.clone().expect("some nonzero difference");
    println!(
        "f = {p}, X = 300: {} distinct differences",
        hist.counts.len()
    );
    println!("largest count {} at n = {argmax}", hist.max_count);

    // Every solution has x - y = t dividing n, and q(x, x - t) = n/t has at most d - 1 roots
    let n: i64 = argmax.try_into().expect("fits");
    println!("bound 2(d-1) tau(n) = {}", 4 * arith::divisor_count(n)?);

    let q = arith::divide_difference(&p)?;
    let (x, y) = (BigInt::from(17), BigInt::from(-5));
    println!(
        "\nP(x) - P(y) = (x - y) q(x, y) at (17, -5): {} = {}",
        p.eval(&x) - p.eval(&y),
        (&x - &y) * q.eval(&x, &y)
    );

    let sums = arith::count_repr(&values, &BigInt::from(1729), ReprMode::Sum)?;
    println!("1729 = x^3 + y^3 in {} ordered ways", sums.count);
    Ok(())
}
