use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::stallings::{check_same_alphabet, LabeledGraph};
use crate::union_find::UnionFind;
use crate::words::{Alphabet, Letter, Word};

const NONE: u32 = u32::MAX;

/// Product of two labeled graphs on pairs `(x, y)`, stored as index
/// `x·n2 + y`. With the diagonal excluded (a graph with itself), pairs
/// `(x, x)` are absent.
#[derive(Debug, Clone)]
pub struct PairGraph {
    alphabet: Alphabet,
    n1: usize,
    n2: usize,
    diagonal_excluded: bool,
    fwd: Vec<Vec<u32>>,
    bwd: Vec<Vec<u32>>,
}

impl PairGraph {
    pub fn product(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<Self> {
        check_same_alphabet(g1.alphabet(), g2.alphabet())?;
        Self::build(g1, g2, false)
    }

    /// Pairs of distinct vertices of `g`.
    pub fn off_diagonal(g: &LabeledGraph) -> Self {
        Self::build(g, g, true).expect("a graph fits its own square")
    }

    fn build(g1: &LabeledGraph, g2: &LabeledGraph, diagonal_excluded: bool) -> Result<Self> {
        let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
        let total = n1
            .checked_mul(n2)
            .filter(|&t| t < NONE as usize)
            .ok_or_else(|| Error::InvalidParameter(format!("product of {n1} and {n2} vertices is too large")))?;
        let r = g1.alphabet().rank();
        let mut fwd = vec![vec![NONE; total]; r];
        let mut bwd = vec![vec![NONE; total]; r];
        for a in 0..r {
            let (f1, f2) = (g1.injection(a), g2.injection(a));
            for (x, x2) in f1.pairs() {
                for (y, y2) in f2.pairs() {
                    if diagonal_excluded && x == y {
                        continue;
                    }
                    assert!(
                        !diagonal_excluded || x2 != y2,
                        "transition from ({x}, {y}) lands on the diagonal"
                    );
                    let (src, dst) = (x * n2 + y, x2 * n2 + y2);
                    fwd[a][src] = dst as u32;
                    bwd[a][dst] = src as u32;
                }
            }
        }
        Ok(PairGraph {
            alphabet: g1.alphabet(),
            n1,
            n2,
            diagonal_excluded,
            fwd,
            bwd,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn diagonal_excluded(&self) -> bool {
        self.diagonal_excluded
    }

    /// Size of the index space, including absent diagonal pairs.
    pub fn index_len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.n2 + y
    }

    pub fn pair(&self, v: usize) -> (usize, usize) {
        (v / self.n2, v % self.n2)
    }

    pub fn is_present(&self, v: usize) -> bool {
        let (x, y) = self.pair(v);
        !(self.diagonal_excluded && x == y)
    }

    pub fn vertex_count(&self) -> usize {
        if self.diagonal_excluded {
            self.index_len() - self.n1
        } else {
            self.index_len()
        }
    }

    pub fn edge_count(&self) -> usize {
        self.fwd
            .iter()
            .map(|f| f.iter().filter(|&&t| t != NONE).count())
            .sum()
    }

    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        let table = if letter.is_inverse() {
            &self.bwd
        } else {
            &self.fwd
        };
        let t = table[letter.index()][v];
        (t != NONE).then_some(t as usize)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.alphabet
            .letters()
            .filter_map(move |l| self.step(v, l).map(|w| (l, w)))
    }

    /// Edges as `(src, generator index, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.fwd.iter().enumerate().flat_map(|(a, f)| {
            f.iter()
                .enumerate()
                .filter(|(_, &t)| t != NONE)
                .map(move |(v, &t)| (v, a, t as usize))
        })
    }

    /// Vertex and edge count of every component, keyed by a representative
    /// index; absent pairs map to `None`.
    pub fn component_sizes(&self) -> (Vec<Option<usize>>, Vec<(usize, usize)>) {
        let len = self.index_len();
        let mut uf = UnionFind::new(len);
        for (v, _, w) in self.edges() {
            uf.union(v, w);
        }
        let mut slot = vec![usize::MAX; len];
        let mut sizes: Vec<(usize, usize)> = Vec::new();
        let mut label = vec![None; len];
        for v in (0..len).filter(|&v| self.is_present(v)) {
            let root = uf.find(v);
            if slot[root] == usize::MAX {
                slot[root] = sizes.len();
                sizes.push((0, 0));
            }
            label[v] = Some(slot[root]);
            sizes[slot[root]].0 += 1;
        }
        for (v, _, _) in self.edges() {
            sizes[label[v].expect("edge ends are present")].1 += 1;
        }
        (label, sizes)
    }

    /// Shortest path from `from` to `to`, optionally forbidding one
    /// `(vertex, signed letter)` step. Returns the visited vertices and the
    /// path label.
    pub fn shortest_path(
        &self,
        from: usize,
        to: usize,
        forbidden: Option<(usize, Letter)>,
    ) -> Option<(Vec<usize>, Word)> {
        let mut prev: Vec<Option<(usize, Letter)>> = vec![None; self.index_len()];
        let mut seen = vec![false; self.index_len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for (l, w) in self.neighbors(v) {
                if forbidden == Some((v, l)) || seen[w] {
                    continue;
                }
                seen[w] = true;
                prev[w] = Some((v, l));
                queue.push_back(w);
            }
        }
        if !seen[to] {
            return None;
        }
        let mut vertices = vec![to];
        let mut letters = Vec::new();
        let mut v = to;
        while let Some((u, l)) = prev[v] {
            letters.push(l);
            vertices.push(u);
            v = u;
        }
        vertices.reverse();
        letters.reverse();
        let word = Word::from_reduced(letters).expect("shortest paths in a folded graph are reduced");
        Some((vertices, word))
    }
}
