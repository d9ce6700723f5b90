//! Conversions of exact ratios of big integers.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// `num / den` to double precision, without overflowing on huge operands.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio with zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    // scale so the integer quotient carries at least 64 significant bits
    let shift = (64 + den.bits() as i64 - num.bits() as i64).max(0);
    let q = (num << shift as usize) / den;
    let mut x = q.to_f64().expect("finite quotient");
    let mut s = shift;
    while s > 0 {
        let step = s.min(1000);
        x /= 2f64.powi(step as i32);
        s -= step;
    }
    x
}

/// `num / den` rounded half-up to `digits` decimal places.
pub fn ratio_decimal(num: &BigUint, den: &BigUint, digits: usize) -> String {
    assert!(!den.is_zero(), "ratio with zero denominator");
    let scale = BigUint::from(10u32).pow(digits as u32);
    let scaled: BigUint = (num * &scale * 2u32 + den) / (den * 2u32);
    let text = scaled.to_str_radix(10);
    if digits == 0 {
        return text;
    }
    let padded = format!("{text:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    format!("{int}.{frac}")
}
