use std::collections::VecDeque;

use super::LabeledGraph;

/// Labeled-graph isomorphism for deterministic, co-deterministic graphs.
///
/// Rooted: vertex 0 must map to vertex 0. Unrooted: each component of `g1`
/// is anchored at its lowest vertex against every unused vertex of `g2`.
/// Since a labeled map is forced once one vertex is placed, every attempt
/// is a single propagation.
pub fn isomorphic(g1: &LabeledGraph, g2: &LabeledGraph, rooted: bool) -> bool {
    if g1.alphabet != g2.alphabet
        || g1.n != g2.n
        || g1.edge_count() != g2.edge_count()
    {
        return false;
    }
    let n = g1.n;
    if n == 0 {
        return true;
    }
    let mut m = Matching {
        fwd: vec![None; n],
        bwd: vec![None; n],
    };
    if rooted {
        return m.propagate(g1, g2, 0, 0).is_some() && m.fwd.iter().all(Option::is_some);
    }
    for anchor in 0..n {
        if m.fwd[anchor].is_some() {
            continue;
        }
        let placed = (0..n)
            .any(|b| m.bwd[b].is_none() && m.propagate(g1, g2, anchor, b).is_some());
        if !placed {
            return false;
        }
    }
    true
}

struct Matching {
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
}

impl Matching {
    /// Extends the matching from `a ↦ b` over the component of `a`; on
    /// failure every assignment made here is undone.
    fn propagate(&mut self, g1: &LabeledGraph, g2: &LabeledGraph, a: usize, b: usize) -> Option<()> {
        let mut assigned = Vec::new();
        let ok = self.try_propagate(g1, g2, a, b, &mut assigned);
        if !ok {
            for x in assigned {
                let y = self.fwd[x].take().expect("assigned");
                self.bwd[y] = None;
            }
            return None;
        }
        Some(())
    }

    fn try_propagate(
        &mut self,
        g1: &LabeledGraph,
        g2: &LabeledGraph,
        a: usize,
        b: usize,
        assigned: &mut Vec<usize>,
    ) -> bool {
        if !self.assign(a, b, assigned) {
            return false;
        }
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            let y = self.fwd[x].expect("queued vertices are assigned");
            if g1.degree(x) != g2.degree(y) {
                return false;
            }
            for (l, x2) in g1.neighbors(x) {
                let Some(y2) = g2.step(y, l) else {
                    return false;
                };
                match self.fwd[x2] {
                    Some(z) if z != y2 => return false,
                    Some(_) => {}
                    None => {
                        if !self.assign(x2, y2, assigned) {
                            return false;
                        }
                        queue.push_back(x2);
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, x: usize, y: usize, assigned: &mut Vec<usize>) -> bool {
        if self.bwd[y].is_some() {
            return false;
        }
        self.fwd[x] = Some(y);
        self.bwd[y] = Some(x);
        assigned.push(x);
        true
    }
}
