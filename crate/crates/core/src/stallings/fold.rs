use std::collections::HashMap;

use super::{LabeledGraph, StallingsGraph};
use crate::error::{Error, Invariant, Result};
use crate::words::{Alphabet, Letter, Word};

/// Labeled graph with no determinism requirement; edges are
/// `(src, generator index, dst)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreGraph {
    alphabet: Alphabet,
    n: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl PreGraph {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        PreGraph {
            alphabet,
            n,
            edges: Vec::new(),
        }
    }

    /// Bouquet of one loop per non-empty generator, all through vertex 0.
    pub fn wedge(generators: &[Word], alphabet: Alphabet) -> Result<Self> {
        let mut g = PreGraph::new(alphabet, 1);
        for w in generators {
            if w.min_rank() > alphabet.rank() {
                return Err(Error::AlphabetMismatch {
                    left: alphabet.rank(),
                    right: w.min_rank(),
                });
            }
            let len = w.len();
            let mut prev = 0;
            for (i, &l) in w.letters().iter().enumerate() {
                let next = if i + 1 == len {
                    0
                } else {
                    g.n += 1;
                    g.n - 1
                };
                g.push_letter(prev, l, next);
                prev = next;
            }
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, src: usize, index: usize, dst: usize) -> Result<()> {
        if src >= self.n || dst >= self.n || index >= self.alphabet.rank() {
            return Err(Error::MalformedInput(format!(
                "edge ({}, {index}, {}) out of range",
                src + 1,
                dst + 1
            )));
        }
        self.edges.push((src, index, dst));
        Ok(())
    }

    fn push_letter(&mut self, from: usize, letter: Letter, to: usize) {
        if letter.is_inverse() {
            self.edges.push((to, letter.index(), from));
        } else {
            self.edges.push((from, letter.index(), to));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// The graph as partial injections, or the first determinism or
    /// co-determinism violation.
    fn to_labeled(&self) -> std::result::Result<LabeledGraph, (Invariant, String)> {
        let mut g = LabeledGraph::new(self.alphabet, self.n);
        for &(x, a, y) in &self.edges {
            let f = &g.letters[a];
            if f.apply(x).is_some_and(|z| z != y) {
                return Err((
                    Invariant::Determinism,
                    format!("two {}-edges leave vertex {}", Letter::positive(a).to_char(), x + 1),
                ));
            }
            if f.apply_inverse(y).is_some_and(|z| z != x) {
                return Err((
                    Invariant::CoDeterminism,
                    format!("two {}-edges enter vertex {}", Letter::positive(a).to_char(), y + 1),
                ));
            }
            g.add_edge(x, a, y).expect("checked above");
        }
        Ok(g)
    }

    pub fn admissibility_violation(&self, base: usize) -> Option<(Invariant, String)> {
        if self.edges.iter().enumerate().any(|(i, e)| self.edges[..i].contains(e)) {
            return Some((Invariant::Determinism, "repeated edge".into()));
        }
        match self.to_labeled() {
            Err(v) => Some(v),
            Ok(g) => g.admissibility_violation(base),
        }
    }

    /// Deterministic, co-deterministic, connected, no leaf except `base`.
    pub fn is_admissible(&self, base: usize) -> bool {
        self.admissibility_violation(base).is_none()
    }

    /// Folds to determinism and co-determinism, trims leaves other than
    /// `base`, and renumbers breadth-first from `base`. Vertices outside the
    /// component of `base` are discarded.
    pub fn fold(&self, base: usize) -> Result<StallingsGraph> {
        if base >= self.n {
            return Err(Error::Inadmissible {
                invariant: Invariant::BaseVertex,
                detail: format!("no vertex {}", base + 1),
            });
        }
        let mut uf = Folder::new(self.n);
        for &(x, a, y) in &self.edges {
            uf.adj[x].push((Letter::positive(a), y));
            uf.adj[y].push((Letter::negative(a), x));
        }
        for v in 0..self.n {
            uf.normalize(v);
        }
        uf.run();

        let mut index = vec![usize::MAX; self.n];
        let mut count = 0;
        for v in 0..self.n {
            if uf.find(v) == v {
                index[v] = count;
                count += 1;
            }
        }
        let mut g = LabeledGraph::new(self.alphabet, count);
        for v in 0..self.n {
            if uf.find(v) != v {
                continue;
            }
            for (l, w) in uf.adj[v].clone() {
                if !l.is_inverse() {
                    let w = uf.find(w);
                    g.add_edge(index[v], l.index(), index[w])
                        .expect("folded graph is deterministic");
                }
            }
        }
        let base = index[uf.find(base)];
        let alive = g.trim_mask(Some(base), &vec![true; count]);
        let (trimmed, map) = g.induced(&alive);
        let base = map[base].expect("base survives trimming");
        Ok(StallingsGraph::from_graph_unchecked(
            trimmed.renumbered_from(base),
        ))
    }
}

struct Folder {
    parent: Vec<usize>,
    size: Vec<usize>,
    /// Signed letter and far endpoint, kept on class representatives.
    adj: Vec<Vec<(Letter, usize)>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(n: usize) -> Self {
        Folder {
            parent: (0..n).collect(),
            size: vec![1; n],
            adj: vec![Vec::new(); n],
            pending: Vec::new(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Keeps one entry per signed letter at representative `r`, queueing
    /// merges for the far endpoints of the others.
    fn normalize(&mut self, r: usize) {
        let entries = std::mem::take(&mut self.adj[r]);
        let mut first: HashMap<Letter, usize> = HashMap::new();
        let mut kept = Vec::with_capacity(entries.len());
        for (l, w) in entries {
            let w = self.find(w);
            match first.get(&l) {
                Some(&t) => {
                    if t != w {
                        self.pending.push((t, w));
                    }
                }
                None => {
                    first.insert(l, w);
                    kept.push((l, w));
                }
            }
        }
        self.adj[r] = kept;
    }

    fn run(&mut self) {
        while let Some((x, y)) = self.pending.pop() {
            let (mut x, mut y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            if self.size[x] < self.size[y] {
                std::mem::swap(&mut x, &mut y);
            }
            self.parent[y] = x;
            self.size[x] += self.size[y];
            let moved = std::mem::take(&mut self.adj[y]);
            self.adj[x].extend(moved);
            self.normalize(x);
        }
    }
}
