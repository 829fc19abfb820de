//! Exact discrepancy of dilated integer sequences `{a_n alpha}` and the
//! number-theoretic quantities around it: exponential sums and their norms,
//! representation counts, GCD sums, orbit hitting times and continued fractions.
//!
//! `alpha` is always an exact rational (or, for continued fractions, a real given
//! by certified enclosures), so fractional parts are exact before a single final
//! rounding. See `examples/` for one runnable program per area.

pub mod arith;
pub mod cfrac;
pub mod dilation;
pub mod discrepancy;
pub mod error;
pub mod expsum;
pub mod gcdsum;
pub mod harness;
pub mod sequences;
mod util;
