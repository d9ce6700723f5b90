use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Integer sums of trial outcomes; merging is exact and order-free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub count: u64,
    pub sum: i128,
    pub sum_sq: i128,
}

impl Tally {
    pub fn one(value: i64) -> Self {
        Tally {
            count: 1,
            sum: value as i128,
            sum_sq: (value as i128) * (value as i128),
        }
    }

    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            f64::NAN
        } else {
            self.sum as f64 / self.count as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub estimate: f64,
    pub stderr: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Proportion with `√(p̂(1−p̂)/N)` and the Wilson interval.
pub fn frequency(t: &Tally) -> Estimate {
    let n = t.count as f64;
    let p = t.mean();
    let stderr = (p * (1.0 - p) / n).sqrt();
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Estimate {
        estimate: p,
        stderr,
        // the interval touches the boundary exactly at p̂ ∈ {0, 1}
        ci_lo: if t.sum == 0 { 0.0 } else { (center - half).max(0.0) },
        ci_hi: if t.sum == t.count as i128 { 1.0 } else { (center + half).min(1.0) },
    }
}

/// Sample mean with a normal interval.
pub fn mean(t: &Tally) -> Estimate {
    let n = t.count as f64;
    let m = t.mean();
    let var = if t.count > 1 {
        // exact integer numerator before dividing
        let num = t.count as i128 * t.sum_sq - t.sum * t.sum;
        num as f64 / (n * (n - 1.0))
    } else {
        0.0
    };
    let stderr = (var / n).sqrt();
    Estimate {
        estimate: m,
        stderr,
        ci_lo: m - Z95 * stderr,
        ci_hi: m + Z95 * stderr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tally(values: &[i64]) -> Tally {
        values
            .iter()
            .map(|&v| Tally::one(v))
            .fold(Tally::default(), Tally::merge)
    }

    #[test]
    fn frequency_bounds() {
        let e = frequency(&tally(&[1, 0, 1, 1]));
        assert_eq!(e.estimate, 0.75);
        assert!((e.stderr - (0.75f64 * 0.25 / 4.0).sqrt()).abs() < 1e-15);
        assert!(e.ci_lo < 0.75 && 0.75 < e.ci_hi);
        let e = frequency(&tally(&[0; 50]));
        assert_eq!((e.estimate, e.stderr, e.ci_lo), (0.0, 0.0, 0.0));
        assert!(e.ci_hi > 0.0 && e.ci_hi < 0.1);
    }

    #[test]
    fn mean_interval() {
        let e = mean(&tally(&[2, 4, 6, 8]));
        assert_eq!(e.estimate, 5.0);
        // sample variance 20/3
        assert!((e.stderr - (20.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-12);
    }
}
