//! Brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use stallings_core::partial_injections::PartialInjection;
use stallings_core::words::{free_reduce, Alphabet, Letter, Word};
use stallings_core::{LabeledGraph, StallingsGraph};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Every partial injection on `{0..n}`, by choosing an image or nothing for
/// each point in turn.
pub fn all_partial_injections(n: usize) -> Vec<PartialInjection> {
    fn rec(x: usize, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, out: &mut Vec<PartialInjection>) {
        if x == map.len() {
            out.push(PartialInjection::from_map(map).unwrap());
            return;
        }
        map[x] = None;
        rec(x + 1, map, used, out);
        for y in 0..map.len() {
            if !used[y] {
                used[y] = true;
                map[x] = Some(y);
                rec(x + 1, map, used, out);
                used[y] = false;
            }
        }
        map[x] = None;
    }
    let mut out = Vec::new();
    rec(0, &mut vec![None; n], &mut vec![false; n], &mut out);
    out
}

/// Cycle lengths found by walking the map directly.
pub fn cycle_lengths(f: &PartialInjection) -> Vec<usize> {
    let n = f.len();
    let mut on_cycle = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if on_cycle[start] {
            continue;
        }
        let mut x = start;
        for len in 1..=n {
            match f.apply(x) {
                Some(y) if y == start => {
                    lengths.push(len);
                    let mut z = start;
                    for _ in 0..len {
                        on_cycle[z] = true;
                        z = f.apply(z).unwrap();
                    }
                    break;
                }
                Some(y) => x = y,
                None => break,
            }
        }
    }
    lengths
}

/// `(I_n, J_n, K_n, L_n)` by enumeration.
pub fn brute_counts(n: usize) -> [u64; 4] {
    let mut counts = [0u64; 4];
    for f in all_partial_injections(n) {
        let cycles = cycle_lengths(&f);
        counts[0] += 1;
        counts[1] += cycles.is_empty() as u64;
        counts[2] += cycles.iter().all(|&c| c == 1) as u64;
        counts[3] += cycles.iter().all(|&c| c != 1) as u64;
    }
    counts
}

/// Every admissible graph on `{0..n}` based at 0, for the given alphabet.
pub fn admissible_graphs(n: usize, alphabet: Alphabet) -> Vec<StallingsGraph> {
    let maps = all_partial_injections(n);
    let mut out = Vec::new();
    let mut idx = vec![0usize; alphabet.rank()];
    'outer: loop {
        let letters = idx.iter().map(|&i| maps[i].clone()).collect();
        let g = LabeledGraph::from_injections(alphabet, letters).unwrap();
        if let Ok(s) = StallingsGraph::from_graph(g) {
            out.push(s);
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < maps.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    out
}

/// Edges as `(src, letter, dst)` with both orientations listed.
fn signed_edges(g: &LabeledGraph) -> Vec<(usize, Letter, usize)> {
    let mut out = Vec::new();
    for (x, a, y) in g.edges() {
        out.push((x, Letter::positive(a), y));
        out.push((y, Letter::negative(a), x));
    }
    out
}

/// Labels of non-backtracking closed paths at `start` of length at most
/// `max_len`, found by depth-first search over edge sequences.
pub fn loop_labels(g: &LabeledGraph, start: usize, max_len: usize) -> BTreeSet<Word> {
    let edges = signed_edges(g);
    let mut out = BTreeSet::new();
    out.insert(Word::empty());
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, Vec::new())];
    while let Some((v, path)) = stack.pop() {
        if path.len() == max_len {
            continue;
        }
        for (e, &(x, l, y)) in edges.iter().enumerate() {
            if x != v {
                continue;
            }
            if let Some(&last) = path.last() {
                let (px, pl, py) = edges[last];
                if px == y && py == x && pl == l.inverse() {
                    continue;
                }
            }
            let mut next = path.clone();
            next.push(e);
            if y == start {
                let letters: Vec<Letter> = next.iter().map(|&i| edges[i].1).collect();
                out.insert(Word::from_reduced(letters).expect("non-backtracking label"));
            }
            stack.push((y, next));
        }
    }
    out
}

/// Some non-empty reduced word of length at most `max_len` labels loops at
/// two distinct vertices.
pub fn has_double_loop(g: &LabeledGraph, max_len: usize) -> bool {
    let n = g.vertex_count();
    (0..n).any(|x| {
        loop_labels(g, x, max_len)
            .iter()
            .filter(|w| !w.is_empty())
            .any(|w| (0..n).any(|y| y != x && g.read(y, w) == Some(y)))
    })
}

/// Free basis read off a breadth-first spanning tree.
pub fn spanning_basis(g: &StallingsGraph) -> Vec<Word> {
    let graph = g.graph();
    let n = graph.vertex_count();
    let mut to_base: Vec<Option<Word>> = vec![None; n];
    let mut tree = BTreeSet::new();
    to_base[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for (l, w) in graph.neighbors(v) {
            if to_base[w].is_none() {
                let path = to_base[v].clone().unwrap();
                to_base[w] = Some(path.concat(&Word::from_reduced(vec![l]).unwrap()));
                let key = if l.is_inverse() { (w, l.index(), v) } else { (v, l.index(), w) };
                tree.insert(key);
                queue.push_back(w);
            }
        }
    }
    graph
        .edges()
        .filter(|e| !tree.contains(e))
        .map(|(x, a, y)| {
            let px = to_base[x].clone().unwrap();
            let py = to_base[y].clone().unwrap();
            px.concat(&Word::from_reduced(vec![Letter::positive(a)]).unwrap())
                .concat(&py.invert())
        })
        .collect()
}

/// Reduced product of up to `max_factors` random basis elements and inverses.
pub fn random_element<R: Rng>(basis: &[Word], max_factors: usize, rng: &mut R) -> Word {
    if basis.is_empty() {
        return Word::empty();
    }
    let count = rng.gen_range(1..=max_factors);
    (0..count).fold(Word::empty(), |acc, _| {
        let b = basis.choose(rng).unwrap();
        let b = if rng.gen() { b.clone() } else { b.invert() };
        acc.concat(&b)
    })
}

/// Random letters, reduced afterwards.
pub fn random_reduced<R: Rng>(alphabet: Alphabet, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.gen_range(0..alphabet.rank()), rng.gen()))
        .collect();
    free_reduce(&letters, alphabet).unwrap()
}

/// Pearson statistic against equal expected counts, and whether it stays
/// below the `1 − alpha` quantile.
pub fn chi_square_uniform(counts: &[u64], alpha: f64) -> (f64, f64, bool) {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).unwrap();
    let critical = dist.inverse_cdf(1.0 - alpha);
    (stat, critical, stat <= critical)
}

/// Some non-empty reduced word labels loops at two distinct vertices,
/// decided by reachability over states `(u, v, last letter)` from every
/// pair `(x, y)`.
pub fn double_loop_reachable(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    let letters: Vec<Letter> = g.alphabet().letters().collect();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let mut seen = BTreeSet::new();
            let mut queue = VecDeque::from([(x, y, None::<Letter>)]);
            while let Some((u, v, last)) = queue.pop_front() {
                for &l in &letters {
                    if last == Some(l.inverse()) {
                        continue;
                    }
                    let (Some(u2), Some(v2)) = (g.step(u, l), g.step(v, l)) else {
                        continue;
                    };
                    if (u2, v2) == (x, y) {
                        return true;
                    }
                    if seen.insert((u2, v2, l)) {
                        queue.push_back((u2, v2, Some(l)));
                    }
                }
            }
        }
    }
    false
}
