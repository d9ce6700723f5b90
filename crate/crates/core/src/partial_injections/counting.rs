use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The counted families of partial injections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// All partial injections.
    I,
    /// No cycle at all (fragmented permutations).
    J,
    /// Every cycle is a fixpoint.
    K,
    /// No fixpoint.
    L,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Family::I),
            "J" => Ok(Family::J),
            "K" => Ok(Family::K),
            "L" => Ok(Family::L),
            other => Err(Error::InvalidParameter(format!(
                "unknown sequence '{other}', expected I, J, K or L"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::I => "I",
            Family::J => "J",
            Family::K => "K",
            Family::L => "L",
        };
        f.write_str(s)
    }
}

/// `I_n` for `n = 0..=max_n`, computed by removing the component that
/// contains a marked element:
/// `I_n = Σ_{k=1..n} C(n-1, k-1)·(k! + (k-1)!)·I_{n-k}`.
///
/// The sum is evaluated as `Σ_{j<n} (n-1)!/j! · (n-j+1) · I_j` in Horner form,
/// so each step is a big-by-small product.
pub fn count_i(max_n: usize) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(max_n + 1);
    table.push(BigUint::one());
    for n in 1..=max_n {
        let mut acc = BigUint::zero();
        for (j, ij) in table.iter().enumerate() {
            acc *= j as u64;
            acc += ij * (n - j + 1) as u64;
        }
        table.push(acc);
    }
    table
}

/// Fragmented permutations: `J_{n+1} = (2n+1)·J_n − (n−1)·n·J_{n−1}`,
/// `J_0 = J_1 = 1`.
pub fn count_j(max_n: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::one(); (max_n + 1).min(2)];
    for n in 1..max_n {
        let next = &table[n] * (2 * n + 1) as u64 - &table[n - 1] * ((n - 1) * n) as u64;
        table.push(next);
    }
    table
}

/// `K_n = Σ_k C(n,k)·J_k`.
pub fn count_k(j: &[BigUint]) -> Vec<BigUint> {
    let mut binomials = vec![BigUint::one()];
    let mut table = Vec::with_capacity(j.len());
    for n in 0..j.len() {
        if n > 0 {
            next_binomial_row(&mut binomials);
        }
        table.push(binomials.iter().zip(j).map(|(c, jk)| c * jk).sum());
    }
    table
}

/// `L_n = Σ_k (−1)^k·C(n,k)·I_{n−k}`.
pub fn count_l(i: &[BigUint]) -> Vec<BigUint> {
    let mut binomials = vec![BigUint::one()];
    let mut table = Vec::with_capacity(i.len());
    for n in 0..i.len() {
        if n > 0 {
            next_binomial_row(&mut binomials);
        }
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for (k, c) in binomials.iter().enumerate() {
            let term = c * &i[n - k];
            if k % 2 == 0 {
                plus += term;
            } else {
                minus += term;
            }
        }
        table.push(plus - minus);
    }
    table
}

fn next_binomial_row(row: &mut Vec<BigUint>) {
    row.push(BigUint::one());
    for k in (1..row.len() - 1).rev() {
        let left = row[k - 1].clone();
        row[k] += left;
    }
}

/// Exact tables of `I_n`, `J_n`, `K_n`, `L_n` for `n <= max_n`, built once
/// and shared read-only.
#[derive(Debug, Clone)]
pub struct CountCache {
    i: Vec<BigUint>,
    j: Vec<BigUint>,
    k: Vec<BigUint>,
    l: Vec<BigUint>,
}

impl CountCache {
    pub fn new(max_n: usize) -> Self {
        let i = count_i(max_n);
        let j = count_j(max_n);
        let k = count_k(&j);
        let l = count_l(&i);
        CountCache { i, j, k, l }
    }

    pub fn max_n(&self) -> usize {
        self.i.len() - 1
    }

    pub fn ensure(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            Err(Error::CacheTooSmall {
                needed: n,
                available: self.max_n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn get(&self, family: Family, n: usize) -> &BigUint {
        match family {
            Family::I => &self.i[n],
            Family::J => &self.j[n],
            Family::K => &self.k[n],
            Family::L => &self.l[n],
        }
    }

    pub fn table(&self, family: Family) -> &[BigUint] {
        match family {
            Family::I => &self.i,
            Family::J => &self.j,
            Family::K => &self.k,
            Family::L => &self.l,
        }
    }

    pub fn i(&self, n: usize) -> &BigUint {
        &self.i[n]
    }

    pub fn j(&self, n: usize) -> &BigUint {
        &self.j[n]
    }

    pub fn k(&self, n: usize) -> &BigUint {
        &self.k[n]
    }

    pub fn l(&self, n: usize) -> &BigUint {
        &self.l[n]
    }
}

/// Falling factorial `top·(top−1)···(top−len+1)`.
fn falling(top: usize, len: usize) -> BigUint {
    let mut acc = BigUint::one();
    for t in (top + 1 - len)..=top {
        acc *= t as u64;
    }
    acc
}

/// Counts of permutations of size `m·d` all of whose orbit lengths are
/// multiples of `d`, for `m = 0..=max_m`.
///
/// Built from `|P_n| = (n−1)!·Σ_{j<m} |P_{jd}|/(jd)!` with the running sum
/// kept as an integer scaled by `((m−1)d)!`.
#[derive(Debug, Clone)]
pub struct OrbitMultipleTable {
    d: usize,
    values: Vec<BigUint>,
}

impl OrbitMultipleTable {
    pub fn new(d: usize, max_n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "orbit divisor must be at least 2, got {d}"
            )));
        }
        let max_m = max_n / d;
        let mut values = vec![BigUint::one()];
        // scaled = Σ_{j<m} P_{jd} · ((m−1)d)!/(jd)!
        let mut scaled = BigUint::one();
        for m in 1..=max_m {
            let p = falling(m * d - 1, d - 1) * &scaled;
            scaled = scaled * falling(m * d, d) + &p;
            values.push(p);
        }
        Ok(OrbitMultipleTable { d, values })
    }

    pub fn divisor(&self) -> usize {
        self.d
    }

    pub fn get(&self, n: usize) -> BigUint {
        if n % self.d != 0 {
            BigUint::zero()
        } else {
            self.values[n / self.d].clone()
        }
    }
}

/// `|P^(d)_n|`: permutations of size `n` whose orbit lengths are all
/// multiples of `d >= 2`.
pub fn count_orbit_multiple(n: usize, d: usize) -> Result<BigUint> {
    Ok(OrbitMultipleTable::new(d, n)?.get(n))
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

fn gcd_not_one_with<F>(n: usize, mut orbit_multiple: F) -> BigUint
where
    F: FnMut(usize) -> BigUint,
{
    let primes = distinct_prime_factors(n);
    let mut total = BigInt::zero();
    for mask in 1u32..(1 << primes.len()) {
        let d: usize = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let term = BigInt::from(orbit_multiple(d));
        if mask.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .expect("inclusion-exclusion count is non-negative")
}

/// `|Q_n|`: permutations of size `n >= 1` whose orbit lengths have gcd > 1,
/// by inclusion-exclusion over squarefree products of the primes dividing `n`.
pub fn count_gcd_not_one(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(gcd_not_one_with(n, |d| {
        OrbitMultipleTable::new(d, n).expect("d >= 2").get(n)
    }))
}

/// `|Q_n|` for every `n = 0..=max_n` (entry 0 is 0), sharing one orbit
/// table per squarefree divisor.
pub fn gcd_not_one_table(max_n: usize) -> Vec<BigUint> {
    let mut tables: HashMap<usize, OrbitMultipleTable> = HashMap::new();
    let mut out = vec![BigUint::zero()];
    for n in 1..=max_n {
        out.push(gcd_not_one_with(n, |d| {
            tables
                .entry(d)
                .or_insert_with(|| OrbitMultipleTable::new(d, max_n).expect("d >= 2"))
                .get(n)
        }));
    }
    out
}
