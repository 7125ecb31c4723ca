//! Exact integer helpers for the closed-form bounds. No floating point.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

/// Smallest `e` with `2^e >= n`; `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: u64) -> u32 {
    let mut e = 0;
    let mut p: u128 = 1;
    while p < n as u128 {
        p *= 2;
        e += 1;
    }
    e
}

/// Largest `e` with `2^e <= n`, for `n >= 1`.
pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1, "floor_log2 of zero");
    63 - n.leading_zeros()
}

/// Smallest `e` with `3^e >= n`.
pub fn ceil_log3(n: u64) -> u32 {
    let mut e = 0;
    let mut p: u128 = 1;
    while p < n as u128 {
        p *= 3;
        e += 1;
    }
    e
}

pub fn pow3(e: u32) -> u64 {
    3u64.pow(e)
}

/// `ceil(log2(n!))`, exact via big integers.
pub fn ceil_log2_factorial(n: u64) -> u64 {
    let mut f = BigUint::one();
    for k in 2..=n {
        f *= k;
    }
    ceil_log2_big(&f)
}

/// `ceil(log2(x))` for `x >= 1`.
pub fn ceil_log2_big(x: &BigUint) -> u64 {
    if x <= &BigUint::one() {
        return 0;
    }
    (x - 1u32).bits()
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Harmonic number `H(n)` as an exact fraction.
pub fn harmonic(n: u64) -> Ratio<i64> {
    let mut h = Ratio::from_integer(0);
    for k in 1..=n as i64 {
        h += Ratio::new(1, k);
    }
    h
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}
