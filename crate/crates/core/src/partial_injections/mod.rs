//! Partial injections on `{0..n}` (printed 1-based), their orbit structure,
//! exact counting of the cycle/sequence families and uniform generation.

mod counting;
mod sampling;

pub use counting::{
    count_gcd_not_one, count_i, count_j, count_k, count_l, count_orbit_multiple,
    gcd_not_one_table, CountCache, Family, OrbitMultipleTable,
};
pub use sampling::{uniform_partial_injection, uniform_permutation};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Injective partial map on `{0..n}`, stored with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
}

impl PartialInjection {
    pub fn empty(n: usize) -> Self {
        PartialInjection {
            fwd: vec![None; n],
            bwd: vec![None; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let all: Vec<Option<usize>> = (0..n).map(Some).collect();
        PartialInjection {
            fwd: all.clone(),
            bwd: all,
        }
    }

    /// Builds from `(source, target)` pairs, rejecting non-injective input.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut f = PartialInjection::empty(n);
        for &(x, y) in pairs {
            f.insert(x, y)?;
        }
        Ok(f)
    }

    /// Builds from an image table; `map[x] = Some(y)` means `x ↦ y`.
    pub fn from_map(map: &[Option<usize>]) -> Result<Self> {
        let mut f = PartialInjection::empty(map.len());
        for (x, y) in map.iter().enumerate() {
            if let Some(y) = *y {
                f.insert(x, y)?;
            }
        }
        Ok(f)
    }

    pub fn insert(&mut self, x: usize, y: usize) -> Result<()> {
        let n = self.len();
        if x >= n || y >= n {
            return Err(Error::MalformedInput(format!(
                "pair ({}, {}) outside 1..={n}",
                x + 1,
                y + 1
            )));
        }
        if self.fwd[x].is_some_and(|old| old != y) {
            return Err(Error::MalformedInput(format!(
                "vertex {} already has an image",
                x + 1
            )));
        }
        if self.bwd[y].is_some_and(|old| old != x) {
            return Err(Error::MalformedInput(format!(
                "vertex {} already has a preimage",
                y + 1
            )));
        }
        self.fwd[x] = Some(y);
        self.bwd[y] = Some(x);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.fwd[x]
    }

    pub fn apply_inverse(&self, y: usize) -> Option<usize> {
        self.bwd[y]
    }

    /// Number of defined points.
    pub fn domain_size(&self) -> usize {
        self.fwd.iter().filter(|y| y.is_some()).count()
    }

    /// Defined `(x, f(x))` pairs in increasing `x`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.fwd
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn decompose(&self) -> OrbitDecomposition {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut sequences = Vec::new();
        for source in 0..n {
            if self.bwd[source].is_none() {
                let mut members = vec![source];
                seen[source] = true;
                let mut x = source;
                while let Some(y) = self.fwd[x] {
                    members.push(y);
                    seen[y] = true;
                    x = y;
                }
                sequences.push(members);
            }
        }
        let mut cycles = Vec::new();
        for start in 0..n {
            if !seen[start] {
                let mut members = vec![start];
                seen[start] = true;
                let mut x = self.fwd[start].expect("element outside sequences lies on a cycle");
                while x != start {
                    members.push(x);
                    seen[x] = true;
                    x = self.fwd[x].expect("cycle is closed");
                }
                cycles.push(members);
            }
        }
        OrbitDecomposition { cycles, sequences }
    }

    /// Gcd of all cycle lengths (fixpoints count as length 1), or `None`
    /// when there is no cycle.
    pub fn cycle_length_gcd(&self) -> Option<usize> {
        self.decompose()
            .cycles
            .iter()
            .map(|c| c.len())
            .reduce(|a, b| a.gcd(&b))
    }

    pub fn statistics(&self) -> OrbitStatistics {
        let d = self.decompose();
        OrbitStatistics {
            has_fixpoint: d.cycles.iter().any(|c| c.len() == 1),
            max_cycle_length: d.cycles.iter().map(Vec::len).max().unwrap_or(0),
            num_sequences: d.sequences.len(),
        }
    }
}

/// Orbits of a partial injection. Cycles start at their smallest member;
/// sequences run from source (not in the range) to sink (not in the domain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub sequences: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitStatistics {
    pub has_fixpoint: bool,
    /// 0 when there is no cycle.
    pub max_cycle_length: usize,
    pub num_sequences: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PartialInjection {
        // 1→2, 2→1, 3→4 on {1..4}
        PartialInjection::from_pairs(4, &[(0, 1), (1, 0), (2, 3)]).unwrap()
    }

    #[test]
    fn decomposition() {
        let id = PartialInjection::identity(3).decompose();
        assert_eq!(id.cycles, vec![vec![0], vec![1], vec![2]]);
        assert!(id.sequences.is_empty());

        let empty = PartialInjection::empty(2).decompose();
        assert!(empty.cycles.is_empty());
        assert_eq!(empty.sequences, vec![vec![0], vec![1]]);

        let d = sample().decompose();
        assert_eq!(d.cycles, vec![vec![0, 1]]);
        assert_eq!(d.sequences, vec![vec![2, 3]]);
    }

    #[test]
    fn rejects_non_injective() {
        assert!(PartialInjection::from_pairs(3, &[(0, 1), (2, 1)]).is_err());
        assert!(PartialInjection::from_pairs(3, &[(0, 1), (0, 2)]).is_err());
        assert!(PartialInjection::from_pairs(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn cycle_gcd() {
        assert_eq!(PartialInjection::identity(2).cycle_length_gcd(), Some(1));
        let mut pairs: Vec<(usize, usize)> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        pairs.extend((0..6).map(|i| (4 + i, 4 + (i + 1) % 6)));
        let f = PartialInjection::from_pairs(10, &pairs).unwrap();
        assert_eq!(f.cycle_length_gcd(), Some(2));
        assert_eq!(PartialInjection::empty(3).cycle_length_gcd(), None);
    }

    #[test]
    fn statistics() {
        let s = PartialInjection::identity(3).statistics();
        assert_eq!(
            (s.has_fixpoint, s.max_cycle_length, s.num_sequences),
            (true, 1, 0)
        );
        let s = PartialInjection::empty(3).statistics();
        assert_eq!(
            (s.has_fixpoint, s.max_cycle_length, s.num_sequences),
            (false, 0, 3)
        );
        let s = sample().statistics();
        assert_eq!(
            (s.has_fixpoint, s.max_cycle_length, s.num_sequences),
            (false, 2, 1)
        );
    }
}
