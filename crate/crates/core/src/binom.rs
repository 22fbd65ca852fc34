//! Exact binomial coefficients with the conventions used throughout the crate.
//!
//! A lower index that is negative, larger than the upper index, or (for the
//! half-index variant) fractional evaluates to zero.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` as an arbitrary-precision integer; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, num/2)`, zero when `num` is odd or the index is out of range.
pub fn binomial_half(n: i64, num: i64) -> BigInt {
    if num % 2 != 0 {
        return BigInt::zero();
    }
    binomial(n, num / 2)
}

/// Floating-point `C(n, k)` for bound evaluation; zero outside range.
pub fn binomial_f64(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc *= (n - i) as f64;
        acc /= (i + 1) as f64;
    }
    acc
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}
