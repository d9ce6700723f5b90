//! Decision procedures on Stallings graphs: malnormality, bounded purity,
//! conjugates of generators, a sufficient test for a trivial quotient, and
//! intersections.

mod intersection;
mod pair_graph;
mod purity;

pub use intersection::{hnc_report, intersection, product_graph, HncReport};
pub use pair_graph::PairGraph;
pub use purity::{letter_cycle, purity_status, PurityVerdict};

use serde::Serialize;

use crate::stallings::StallingsGraph;
use crate::union_find::UnionFind;
use crate::words::Word;

pub const DEFAULT_D_MAX: usize = 2;

/// A non-empty reduced word labeling loops at two distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalnormalityWitness {
    pub vertices: (usize, usize),
    /// Closed walk of vertex pairs, first = last = `vertices`.
    pub cycle: Vec<(usize, usize)>,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Malnormality {
    pub malnormal: bool,
    pub witness: Option<MalnormalityWitness>,
}

/// Malnormal iff every component of the off-diagonal square is a tree.
pub fn is_malnormal(g: &StallingsGraph) -> Malnormality {
    let p = PairGraph::off_diagonal(g.graph());
    let mut uf = UnionFind::new(p.index_len());
    let closing = p.edges().find(|&(v, _, w)| !uf.union(v, w));
    let Some((v, a, w)) = closing else {
        return Malnormality {
            malnormal: true,
            witness: None,
        };
    };
    let letter = crate::words::Letter::positive(a);
    let (mut path, rest) = if v == w {
        (vec![v], Word::empty())
    } else {
        // the cycle closes through an earlier path from w back to v
        p.shortest_path(w, v, Some((w, letter.inverse())))
            .expect("endpoints already joined")
    };
    path.insert(0, v);
    let head = Word::from_reduced(vec![letter]).expect("one letter");
    let word = head.concat(&rest);
    debug_assert_eq!(word.len(), rest.len() + 1);
    Malnormality {
        malnormal: false,
        witness: Some(MalnormalityWitness {
            vertices: p.pair(v),
            cycle: path.into_iter().map(|u| p.pair(u)).collect(),
            word,
        }),
    }
}

/// No letter labels a loop anywhere.
pub fn avoids_generator_conjugates(g: &StallingsGraph) -> bool {
    g.graph()
        .injections()
        .iter()
        .all(|f| f.pairs().all(|(x, y)| x != y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosureVerdict {
    ProvablyTrivial,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalClosureReport {
    pub verdict: ClosureVerdict,
    /// Gcd of the cycle lengths of each letter; `None` without cycles.
    pub per_letter_gcd: Vec<Option<usize>>,
}

/// Trivial when every letter has coprime cycle lengths. Never claims
/// non-triviality.
pub fn normal_closure_trivial_sufficient(g: &StallingsGraph) -> NormalClosureReport {
    let per_letter_gcd: Vec<Option<usize>> = g
        .graph()
        .injections()
        .iter()
        .map(|f| f.cycle_length_gcd())
        .collect();
    let verdict = if per_letter_gcd.iter().all(|d| *d == Some(1)) {
        ClosureVerdict::ProvablyTrivial
    } else {
        ClosureVerdict::Unknown
    };
    NormalClosureReport {
        verdict,
        per_letter_gcd,
    }
}
