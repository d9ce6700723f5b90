//! Stallings graphs: labeled graphs whose letters act as partial injections,
//! folding, and the decision procedures that read them.
//!
//! Vertices are `0..n` internally with the base at 0; the file format and
//! the CLI print them 1-based.

mod fold;
mod io;
mod iso;

pub use fold::PreGraph;
pub use iso::isomorphic;

use std::collections::VecDeque;

use crate::error::{Error, Invariant, Result};
use crate::partial_injections::PartialInjection;
use crate::words::{Alphabet, Letter, Word};

/// A deterministic, co-deterministic labeled graph: one partial injection per
/// generator. Vertex count may be 0 (an empty cyclic core).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    n: usize,
    letters: Vec<PartialInjection>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        LabeledGraph {
            alphabet,
            n,
            letters: vec![PartialInjection::empty(n); alphabet.rank()],
        }
    }

    /// One partial injection per generator, all on the same vertex set.
    pub fn from_injections(alphabet: Alphabet, letters: Vec<PartialInjection>) -> Result<Self> {
        if letters.len() != alphabet.rank() {
            return Err(Error::MalformedInput(format!(
                "expected {} partial injections, got {}",
                alphabet.rank(),
                letters.len()
            )));
        }
        let n = letters.first().map_or(0, PartialInjection::len);
        if letters.iter().any(|f| f.len() != n) {
            return Err(Error::MalformedInput(
                "partial injections act on different vertex sets".into(),
            ));
        }
        Ok(LabeledGraph {
            alphabet,
            n,
            letters,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.letters.iter().map(PartialInjection::domain_size).sum()
    }

    /// `|E| − |V|`.
    pub fn euler_defect(&self) -> i64 {
        self.edge_count() as i64 - self.n as i64
    }

    pub fn injection(&self, index: usize) -> &PartialInjection {
        &self.letters[index]
    }

    pub fn injections(&self) -> &[PartialInjection] {
        &self.letters
    }

    pub(crate) fn add_edge(&mut self, src: usize, index: usize, dst: usize) -> Result<()> {
        self.letters[index].insert(src, dst)
    }

    /// Follows one signed letter from `v`.
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        let f = &self.letters[letter.index()];
        if letter.is_inverse() {
            f.apply_inverse(v)
        } else {
            f.apply(v)
        }
    }

    /// End vertex of the path labeled `word` from `start`, if it is readable.
    pub fn read(&self, start: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(start, |v, &l| self.step(v, l))
    }

    /// Edges as `(src, generator index, dst)` in letter-major, source order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.letters
            .iter()
            .enumerate()
            .flat_map(|(a, f)| f.pairs().map(move |(x, y)| (x, a, y)))
    }

    /// Neighbours of `v` in canonical order: for each generator, the
    /// outgoing edge then the incoming one.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.letters.iter().enumerate().flat_map(move |(a, f)| {
            f.apply(v)
                .map(|w| (Letter::positive(a), w))
                .into_iter()
                .chain(f.apply_inverse(v).map(|w| (Letter::negative(a), w)))
        })
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.letters
            .iter()
            .map(|f| f.apply(v).is_some() as usize + f.apply_inverse(v).is_some() as usize)
            .sum()
    }

    /// Connected component label of every vertex, numbered in order of
    /// their lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for (_, w) in self.neighbors(v) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// First admissibility violation with `base` as the distinguished vertex.
    pub fn admissibility_violation(&self, base: usize) -> Option<(Invariant, String)> {
        if base >= self.n {
            return Some((Invariant::BaseVertex, format!("no vertex {}", base + 1)));
        }
        if !self.is_connected() {
            return Some((Invariant::Connectivity, "graph is disconnected".into()));
        }
        (0..self.n)
            .find(|&v| v != base && self.degree(v) <= 1)
            .map(|v| (Invariant::Trim, format!("vertex {} is a leaf", v + 1)))
    }

    /// Connected, and no vertex other than `base` is a leaf.
    pub fn is_admissible(&self, base: usize) -> bool {
        self.admissibility_violation(base).is_none()
    }

    /// Restriction to the vertices flagged in `keep`, renumbered in
    /// increasing order. Returns the old-to-new map.
    pub fn induced(&self, keep: &[bool]) -> (LabeledGraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut count = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(count);
                count += 1;
            }
        }
        let mut out = LabeledGraph::new(self.alphabet, count);
        for (x, a, y) in self.edges() {
            if let (Some(nx), Some(ny)) = (map[x], map[y]) {
                out.add_edge(nx, a, ny).expect("restriction stays injective");
            }
        }
        (out, map)
    }

    /// Repeatedly deletes vertices of degree at most 1, except `keep`.
    /// Returns the surviving vertex mask.
    pub fn trim_mask(&self, keep: Option<usize>, alive: &[bool]) -> Vec<bool> {
        let mut alive = alive.to_vec();
        let mut degree: Vec<usize> = vec![0; self.n];
        for (x, _, y) in self.edges() {
            if alive[x] && alive[y] {
                degree[x] += 1;
                degree[y] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..self.n)
            .filter(|&v| alive[v] && Some(v) != keep && degree[v] <= 1)
            .collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for (_, w) in self.neighbors(v) {
                if alive[w] {
                    degree[w] -= 1;
                    if Some(w) != keep && degree[w] == 1 {
                        queue.push(w);
                    }
                }
            }
        }
        alive
    }

    /// Renumbers the component of `base` breadth-first from it, visiting
    /// neighbours in canonical order. Vertices outside it are dropped.
    pub fn renumbered_from(&self, base: usize) -> LabeledGraph {
        let mut order = vec![None; self.n];
        let mut queue = VecDeque::from([base]);
        order[base] = Some(0);
        let mut next = 1;
        while let Some(v) = queue.pop_front() {
            for (_, w) in self.neighbors(v) {
                if order[w].is_none() {
                    order[w] = Some(next);
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        let mut out = LabeledGraph::new(self.alphabet, next);
        for (x, a, y) in self.edges() {
            if let (Some(nx), Some(ny)) = (order[x], order[y]) {
                out.add_edge(nx, a, ny).expect("renumbering is a bijection");
            }
        }
        out
    }
}

/// The Stallings graph of a finitely generated subgroup: an admissible
/// labeled graph based at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StallingsGraph {
    graph: LabeledGraph,
}

impl StallingsGraph {
    /// Checks admissibility with base 0.
    pub fn from_graph(graph: LabeledGraph) -> Result<Self> {
        match graph.admissibility_violation(0) {
            Some((invariant, detail)) => Err(Error::Inadmissible { invariant, detail }),
            None => Ok(StallingsGraph { graph }),
        }
    }

    pub(crate) fn from_graph_unchecked(graph: LabeledGraph) -> Self {
        debug_assert!(graph.is_admissible(0));
        StallingsGraph { graph }
    }

    /// Stallings graph of the subgroup generated by `generators`.
    pub fn fold(generators: &[Word], alphabet: Alphabet) -> Result<Self> {
        PreGraph::wedge(generators, alphabet)?.fold(0)
    }

    /// The trivial subgroup: one vertex, no edges.
    pub fn trivial(alphabet: Alphabet) -> Self {
        StallingsGraph {
            graph: LabeledGraph::new(alphabet, 1),
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn alphabet(&self) -> Alphabet {
        self.graph.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Whether `word` labels a loop at the base.
    pub fn contains(&self, word: &Word) -> bool {
        self.graph.read(0, word) == Some(0)
    }

    /// `|E| − |V| + 1`.
    pub fn rank(&self) -> usize {
        self.graph.edge_count() + 1 - self.graph.n
    }

    pub fn reduced_rank(&self) -> usize {
        self.rank().saturating_sub(1)
    }

    /// Deletes leaves, including the base, until none remains.
    pub fn cyclic_core(&self) -> LabeledCore {
        let mask = self.graph.trim_mask(None, &vec![true; self.graph.n]);
        LabeledCore(self.graph.induced(&mask).0)
    }

    /// Whether the two subgroups are conjugate (isomorphic cyclic cores).
    pub fn conjugate(&self, other: &StallingsGraph) -> Result<bool> {
        check_same_alphabet(self.alphabet(), other.alphabet())?;
        Ok(isomorphic(
            self.cyclic_core().graph(),
            other.cyclic_core().graph(),
            false,
        ))
    }
}

pub(crate) fn check_same_alphabet(left: Alphabet, right: Alphabet) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: left.rank(),
            right: right.rank(),
        })
    }
}

/// An unbased labeled graph without leaves, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCore(LabeledGraph);

impl LabeledCore {
    pub fn graph(&self) -> &LabeledGraph {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.n == 0
    }
}
