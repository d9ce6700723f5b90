//! The two random subgroup models: spans of uniform word tuples, and
//! uniform Stallings graphs on a fixed vertex count.

use std::collections::{HashSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::partial_injections::{uniform_partial_injection, CountCache};
use crate::stallings::{LabeledGraph, StallingsGraph};
use crate::words::{Alphabet, LengthMode, Letter, Word, WordSampler};

pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

/// `k` reduced words of length at most `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTuple {
    pub alphabet: Alphabet,
    pub n: usize,
    pub words: Vec<Word>,
}

impl WordTuple {
    pub fn new(alphabet: Alphabet, n: usize, words: Vec<Word>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.len() > n || w.min_rank() > alphabet.rank()) {
            return Err(Error::InvalidParameter(format!(
                "word {w} is not a reduced word of length at most {n} over r = {}",
                alphabet.rank()
            )));
        }
        Ok(WordTuple { alphabet, n, words })
    }

    pub fn k(&self) -> usize {
        self.words.len()
    }

    pub fn fold(&self) -> StallingsGraph {
        StallingsGraph::fold(&self.words, self.alphabet).expect("tuple words lie in the alphabet")
    }
}

/// `α`, `λ`, `β` with `0 < 2λ < α < 1` and `0 < β < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericityParams {
    pub alpha: f64,
    pub lambda: f64,
    pub beta: f64,
}

impl Default for GenericityParams {
    fn default() -> Self {
        GenericityParams {
            alpha: 0.75,
            lambda: 0.125,
            beta: 0.25,
        }
    }
}

impl GenericityParams {
    pub fn new(alpha: f64, lambda: f64, beta: f64) -> Result<Self> {
        if !(0.0 < 2.0 * lambda && 2.0 * lambda < alpha && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < 2λ < α < 1, got α = {alpha}, λ = {lambda}"
            )));
        }
        if !(0.0 < beta && beta < 1.0) {
            return Err(Error::InvalidParameter(format!("need 0 < β < 1, got β = {beta}")));
        }
        Ok(GenericityParams { alpha, lambda, beta })
    }

    /// `⌈λn⌉`.
    pub fn prefix_len(&self, n: usize) -> usize {
        (self.lambda * n as f64).ceil() as usize
    }
}

/// Tuples of `k` independent uniform words from `R_n`.
#[derive(Debug, Clone)]
pub struct WordTupleSampler {
    sampler: WordSampler,
    alphabet: Alphabet,
    k: usize,
    n: usize,
}

impl WordTupleSampler {
    pub fn new(alphabet: Alphabet, k: usize, n: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(WordTupleSampler {
            sampler: WordSampler::new(alphabet, n, LengthMode::AtMost)?,
            alphabet,
            k,
            n,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> WordTuple {
        WordTuple {
            alphabet: self.alphabet,
            n: self.n,
            words: (0..self.k).map(|_| self.sampler.sample(rng)).collect(),
        }
    }
}

pub fn sample_word_tuple<R: Rng + ?Sized>(
    alphabet: Alphabet,
    k: usize,
    n: usize,
    rng: &mut R,
) -> Result<WordTuple> {
    Ok(WordTupleSampler::new(alphabet, k, n)?.sample(rng))
}

/// Every word longer than `αn`, and the `2k` prefixes of length `⌈λn⌉` of
/// the words and their inverses pairwise distinct.
pub fn in_y(t: &WordTuple, p: &GenericityParams) -> bool {
    let bound = p.alpha * t.n as f64;
    if t.words.iter().any(|w| w.len() as f64 <= bound) {
        return false;
    }
    let len = p.prefix_len(t.n);
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    t.words.iter().all(|w| {
        seen.insert(w.prefix(len).to_vec()) && seen.insert(w.invert().prefix(len).to_vec())
    })
}

/// Whether a factor of length `⌈βn⌉` occurs twice among the words, counting
/// an occurrence of its inverse as an occurrence.
pub fn has_repeated_long_factor(t: &WordTuple, beta: f64, n: usize) -> bool {
    let len = ((beta * n as f64).ceil() as usize).max(1);
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    for w in &t.words {
        for factor in w.letters().windows(len) {
            let inverse: Vec<Letter> = factor.iter().rev().map(|l| l.inverse()).collect();
            // a reduced non-empty word differs from its inverse
            let key = if factor <= &inverse[..] {
                factor.to_vec()
            } else {
                inverse
            };
            if !seen.insert(key) {
                return true;
            }
        }
    }
    false
}

/// Shape of the folded graph of a tuple in `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralOuterStructure {
    /// Vertices within distance `⌈λn⌉` of the base.
    pub tree_vertices: usize,
    pub tree_is_tree: bool,
    /// `|h_i| − 2⌈λn⌉` for each word.
    pub outer_loop_lengths: Vec<i64>,
    /// Central vertices other than the base with at most one central
    /// neighbour.
    pub leaves: usize,
    /// Each middle segment reads a path whose interior avoids the central
    /// part and the other segments.
    pub outer_loops_verified: bool,
}

pub fn central_outer_structure(
    t: &WordTuple,
    p: &GenericityParams,
) -> Result<CentralOuterStructure> {
    if !in_y(t, p) {
        return Err(Error::Precondition("tuple is not in Y".into()));
    }
    let g = t.fold();
    let graph = g.graph();
    let radius = p.prefix_len(t.n);
    let dist = distances(graph, 0);
    let central: Vec<bool> = dist.iter().map(|d| d.is_some_and(|d| d <= radius)).collect();
    let tree_vertices = central.iter().filter(|&&c| c).count();
    let (sub, map) = graph.induced(&central);
    let tree_is_tree = sub.is_connected() && sub.edge_count() + 1 == tree_vertices;
    let base = map[0].expect("base is central");
    let leaves = (0..sub.vertex_count())
        .filter(|&v| v != base && sub.degree(v) <= 1)
        .count();

    let outer_loop_lengths: Vec<i64> = t
        .words
        .iter()
        .map(|w| w.len() as i64 - 2 * radius as i64)
        .collect();
    let mut outer_loops_verified = outer_loop_lengths.iter().all(|&m| m >= 1);
    let mut interior_seen = vec![false; graph.vertex_count()];
    if outer_loops_verified {
        for w in &t.words {
            let mut v = 0;
            for (i, &l) in w.letters().iter().enumerate() {
                v = graph.step(v, l).expect("generators label loops");
                let pos = i + 1;
                if pos > radius && pos < w.len() - radius {
                    if central[v] || interior_seen[v] {
                        outer_loops_verified = false;
                    }
                    interior_seen[v] = true;
                }
            }
        }
    }
    if outer_loops_verified {
        let interior: i64 = outer_loop_lengths.iter().map(|m| m - 1).sum();
        outer_loops_verified = graph.vertex_count() as i64 == tree_vertices as i64 + interior;
    }
    Ok(CentralOuterStructure {
        tree_vertices,
        tree_is_tree,
        outer_loop_lengths,
        leaves,
        outer_loops_verified,
    })
}

fn distances(g: &LabeledGraph, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued");
        for (_, w) in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// One rejection round: `r` uniform partial injections, kept if they form
/// an admissible graph based at vertex 0.
pub fn try_graph_subgroup<R: Rng + ?Sized>(
    alphabet: Alphabet,
    n: usize,
    cache: &CountCache,
    rng: &mut R,
) -> Result<Option<StallingsGraph>> {
    let letters = (0..alphabet.rank())
        .map(|_| uniform_partial_injection(n, cache, rng))
        .collect::<Result<Vec<_>>>()?;
    let graph = LabeledGraph::from_injections(alphabet, letters)?;
    Ok(StallingsGraph::from_graph(graph).ok())
}

/// Uniform Stallings graph with vertex set `{0..n}` and base 0, by
/// rejection.
pub fn sample_graph_subgroup<R: Rng + ?Sized>(
    alphabet: Alphabet,
    n: usize,
    cache: &CountCache,
    rng: &mut R,
    max_attempts: usize,
) -> Result<StallingsGraph> {
    alphabet.require_sampling()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    cache.ensure(n)?;
    for _ in 0..max_attempts {
        if let Some(g) = try_graph_subgroup(alphabet, n, cache, rng)? {
            return Ok(g);
        }
    }
    Err(Error::SamplingFailed {
        attempts: max_attempts,
    })
}
