use std::f64::consts::E;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::numeric::{ratio_decimal, ratio_to_f64};
use crate::partial_injections::CountCache;

/// An exact non-negative rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRatio {
    pub num: BigUint,
    pub den: BigUint,
}

impl ExactRatio {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        ExactRatio { num, den }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }

    pub fn decimal(&self, digits: usize) -> String {
        ratio_decimal(&self.num, &self.den, digits)
    }
}

/// `n!/(n−k)!` for `k = 0..=n`.
fn falling_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 1..=n {
        let next = &row[k - 1] * (n - k + 1) as u64;
        row.push(next);
    }
    row
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, x| acc * x)
}

/// Expected number of sequences of a uniform partial injection of size `n`:
/// a `k`-element sequence can be placed in `n!/(n−k)!·I_{n−k}` ways.
pub fn expected_sequences(n: usize, cache: &CountCache) -> ExactRatio {
    let falling = falling_row(n);
    let total: BigUint = (1..=n).map(|k| &falling[k] * cache.i(n - k)).sum();
    ExactRatio::new(total, cache.i(n).clone())
}

/// Probability that a uniform partial injection has cycles with coprime
/// lengths. Splitting off the union of the cycles, of size `k`, leaves a
/// fragmented permutation on the rest.
pub fn coprime_cycles(n: usize, cache: &CountCache, gcd_not_one: &[BigUint]) -> ExactRatio {
    let mut total = BigUint::default();
    let mut k_factorial = BigUint::one();
    let mut binom = BigUint::one();
    for k in 1..=n {
        k_factorial *= k as u64;
        binom = binom * (n - k + 1) as u64 / k as u64;
        total += &binom * (&k_factorial - &gcd_not_one[k]) * cache.j(n - k);
    }
    ExactRatio::new(total, cache.i(n).clone())
}

/// `|Q_n|/n!`.
pub fn perm_gcd(n: usize, gcd_not_one: &[BigUint]) -> ExactRatio {
    ExactRatio::new(gcd_not_one[n].clone(), factorial(n))
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub k_over_i: String,
    pub l_over_i: String,
    pub j_over_i: String,
    /// `K_n/I_n·√n/e`
    pub k_scaled: String,
    /// `L_n/I_n·e`
    pub l_scaled: String,
    /// `J_n/I_n·√n`
    pub j_scaled: String,
}

/// Exact ratios of the counting sequences for `n = 1..=max_n`, rendered to
/// 10 decimal places.
pub fn exact_ratio_table(max_n: usize) -> Vec<RatioRow> {
    let cache = CountCache::new(max_n);
    (1..=max_n)
        .map(|n| {
            let i = cache.i(n);
            let k = ExactRatio::new(cache.k(n).clone(), i.clone());
            let l = ExactRatio::new(cache.l(n).clone(), i.clone());
            let j = ExactRatio::new(cache.j(n).clone(), i.clone());
            let root = (n as f64).sqrt();
            RatioRow {
                n,
                k_over_i: k.decimal(10),
                l_over_i: l.decimal(10),
                j_over_i: j.decimal(10),
                k_scaled: format!("{:.10}", k.to_f64() * root / E),
                l_scaled: format!("{:.10}", l.to_f64() * E),
                j_scaled: format!("{:.10}", j.to_f64() * root),
            }
        })
        .collect()
}
