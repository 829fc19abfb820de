//! Small exact-arithmetic helpers shared by several modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Largest double strictly below one.
pub(crate) const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// `r / q` as a double in `[0, 1)`, for `0 <= r < q`.
///
/// Truncates `r * 2^64 / q` and rounds once, so the error is below `2^-52`.
pub(crate) fn unit_ratio_to_f64(r: &BigInt, q: &BigInt) -> f64 {
    debug_assert!(!r.is_negative() && r < q);
    let scaled: BigInt = (r << 64u32) / q;
    let v = scaled.to_u64().unwrap_or(u64::MAX) as f64 * (-64f64).exp2();
    v.min(BELOW_ONE)
}

/// Narrows to `i128` when every value has magnitude below `2^limit_bits`.
pub(crate) fn narrow_i128(values: &[BigInt], limit_bits: u64) -> Option<Vec<i128>> {
    values
        .iter()
        .map(|v| {
            if v.bits() <= limit_bits {
                v.to_i128()
            } else {
                None
            }
        })
        .collect()
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `sum_{i=0}^{n-1} floor((a*i + b) / m)` for `n >= 0`, `m >= 1`, `a, b >= 0`.
pub(crate) fn floor_sum(n: &BigInt, m: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
    let mut n = n.clone();
    let mut m = m.clone();
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = BigInt::zero();
    loop {
        if a >= m {
            let (q, r) = a.div_rem(&m);
            acc += &n * (&n - 1) / 2 * q;
            a = r;
        }
        if b >= m {
            let (q, r) = b.div_rem(&m);
            acc += &n * q;
            b = r;
        }
        let y_max = &a * &n + &b;
        if y_max < m {
            return acc;
        }
        let (n2, b2) = y_max.div_rem(&m);
        n = n2;
        b = b2;
        std::mem::swap(&mut m, &mut a);
    }
}

/// First `bits` bits of the ChaCha20 stream for `seed`, read as a big-endian integer.
///
/// Longer requests extend shorter ones: the result for `bits` is a prefix of the
/// result for any larger bit count.
pub(crate) fn seeded_bits(seed: u64, bits: u64) -> BigUint {
    let bytes = bits.div_ceil(8) as usize;
    let mut buf = vec![0u8; bytes];
    ChaCha20Rng::seed_from_u64(seed).fill_bytes(&mut buf);
    let full = BigUint::from_bytes_be(&buf);
    full >> (bytes as u64 * 8 - bits)
}

/// `floor(sqrt(n))` for `n >= 0`.
pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    match n.to_biguint() {
        Some(u) => BigInt::from_biguint(Sign::Plus, u.sqrt()),
        None => BigInt::zero(),
    }
}

pub(crate) fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}
