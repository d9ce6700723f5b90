use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::stallings::{LabeledGraph, StallingsGraph};
use crate::union_find::UnionFind;
use crate::words::{Letter, Word};

/// Largest tuple space searched for one period.
const MAX_TUPLES: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PurityVerdict {
    /// `witness` labels a path from `orbit[i]` to `orbit[(i + 1) % period]`
    /// for every `i`, so its `period`-th power loops where it does not.
    NonPure {
        witness: Word,
        orbit: Vec<usize>,
        period: usize,
    },
    /// No witness of period at most `d_max`. Not a proof of purity.
    PureUpTo { d_max: usize },
}

impl PurityVerdict {
    pub fn is_non_pure(&self) -> bool {
        matches!(self, PurityVerdict::NonPure { .. })
    }
}

/// Letter cycles of length at least 2 first, then a search of each
/// `d`-fold product for a path from a tuple of distinct vertices to its
/// cyclic shift.
pub fn purity_status(g: &StallingsGraph, d_max: usize) -> Result<PurityVerdict> {
    if d_max < 2 {
        return Err(Error::InvalidParameter(format!("d_max must be at least 2, got {d_max}")));
    }
    if let Some(v) = letter_cycle(g.graph()) {
        return Ok(v);
    }
    for d in 2..=d_max {
        if let Some(v) = shift_search(g.graph(), d)? {
            return Ok(v);
        }
    }
    Ok(PurityVerdict::PureUpTo { d_max })
}

/// A cycle of length `≥ 2` of some letter, if any.
pub fn letter_cycle(g: &LabeledGraph) -> Option<PurityVerdict> {
    g.injections().iter().enumerate().find_map(|(a, f)| {
        f.decompose()
            .cycles
            .into_iter()
            .find(|c| c.len() >= 2)
            .map(|orbit| PurityVerdict::NonPure {
                witness: Word::from_reduced(vec![Letter::positive(a)]).expect("one letter"),
                period: orbit.len(),
                orbit,
            })
    })
}

struct Tuples<'a> {
    g: &'a LabeledGraph,
    n: usize,
    d: usize,
}

impl Tuples<'_> {
    fn decode(&self, mut v: usize) -> Vec<usize> {
        (0..self.d)
            .map(|_| {
                let y = v % self.n;
                v /= self.n;
                y
            })
            .collect()
    }

    fn encode(&self, ys: impl DoubleEndedIterator<Item = usize>) -> usize {
        ys.rev().fold(0, |acc, y| acc * self.n + y)
    }

    fn distinct(&self, ys: &[usize]) -> bool {
        (0..ys.len()).all(|i| !ys[..i].contains(&ys[i]))
    }

    fn step(&self, ys: &[usize], l: Letter) -> Option<usize> {
        let moved: Option<Vec<usize>> = ys.iter().map(|&y| self.g.step(y, l)).collect();
        moved.map(|m| self.encode(m.into_iter()))
    }

    fn shift(&self, ys: &[usize]) -> usize {
        self.encode((1..=self.d).map(|i| ys[i % self.d]))
    }
}

fn shift_search(g: &LabeledGraph, d: usize) -> Result<Option<PurityVerdict>> {
    let n = g.vertex_count();
    if n < d {
        return Ok(None);
    }
    let total = n
        .checked_pow(d as u32)
        .filter(|&t| t <= MAX_TUPLES)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("period {d} search over {n} vertices is too large"))
        })?;
    let t = Tuples { g, n, d };
    let letters: Vec<Letter> = g.alphabet().letters().filter(|l| !l.is_inverse()).collect();
    let mut uf = UnionFind::new(total);
    for v in 0..total {
        let ys = t.decode(v);
        if !t.distinct(&ys) {
            continue;
        }
        for &l in &letters {
            if let Some(w) = t.step(&ys, l) {
                uf.union(v, w);
            }
        }
    }
    for v in 0..total {
        let ys = t.decode(v);
        // each orbit is found from its rotation starting at the minimum
        if !t.distinct(&ys) || ys.iter().min() != Some(&ys[0]) {
            continue;
        }
        let target = t.shift(&ys);
        if uf.find(v) == uf.find(target) {
            let witness = tuple_path(&t, v, target);
            return Ok(Some(PurityVerdict::NonPure {
                witness,
                orbit: ys,
                period: d,
            }));
        }
    }
    Ok(None)
}

/// Label of a shortest path between two tuples in the same component.
/// Shortest paths in a deterministic, co-deterministic graph never
/// backtrack, so the label is reduced.
fn tuple_path(t: &Tuples<'_>, from: usize, to: usize) -> Word {
    let mut prev: std::collections::HashMap<usize, (usize, Letter)> = Default::default();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, (from, Letter::positive(0)));
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        let ys = t.decode(v);
        for l in t.g.alphabet().letters() {
            if let Some(w) = t.step(&ys, l) {
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(w) {
                    e.insert((v, l));
                    queue.push_back(w);
                }
            }
        }
    }
    let mut letters = Vec::new();
    let mut v = to;
    while v != from {
        let (u, l) = prev[&v];
        letters.push(l);
        v = u;
    }
    letters.reverse();
    Word::from_reduced(letters).expect("shortest path labels are reduced")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn a2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn fold(gens: &[&str]) -> StallingsGraph {
        let words: Vec<Word> = gens.iter().map(|g| Word::parse(g, a2()).unwrap()).collect();
        StallingsGraph::fold(&words, a2()).unwrap()
    }

    fn check_witness(g: &StallingsGraph, v: &PurityVerdict) {
        let PurityVerdict::NonPure { witness, orbit, period } = v else {
            panic!("expected a witness");
        };
        assert_eq!(orbit.len(), *period);
        for i in 0..*period {
            assert_eq!(g.graph().read(orbit[i], witness), Some(orbit[(i + 1) % period]));
        }
    }

    #[test]
    fn letter_cycles() {
        let g = fold(&["aa"]);
        let v = purity_status(&g, 2).unwrap();
        assert!(matches!(&v, PurityVerdict::NonPure { period: 2, witness, .. } if witness.to_string() == "a"));
        check_witness(&g, &v);
    }

    #[test]
    fn pure_examples() {
        assert_eq!(
            purity_status(&fold(&["a"]), 3).unwrap(),
            PurityVerdict::PureUpTo { d_max: 3 }
        );
        assert_eq!(
            purity_status(&fold(&["a", "baB"]), 2).unwrap(),
            PurityVerdict::PureUpTo { d_max: 2 }
        );
        assert!(purity_status(&fold(&["a"]), 1).is_err());
    }

    #[test]
    fn product_search_finds_non_letter_roots() {
        // ⟨(ab)²⟩ misses ab
        let g = fold(&["abab"]);
        assert!(letter_cycle(g.graph()).is_none());
        let v = purity_status(&g, 2).unwrap();
        assert!(matches!(v, PurityVerdict::NonPure { period: 2, .. }));
        check_witness(&g, &v);

        // ⟨(ab)³⟩ needs period 3
        let g = fold(&["ababab"]);
        assert_eq!(
            purity_status(&g, 2).unwrap(),
            PurityVerdict::PureUpTo { d_max: 2 }
        );
        let v = purity_status(&g, 3).unwrap();
        assert!(matches!(v, PurityVerdict::NonPure { period: 3, .. }));
        check_witness(&g, &v);
    }
}
