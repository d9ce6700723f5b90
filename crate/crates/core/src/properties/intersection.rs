use serde::Serialize;

use super::PairGraph;
use crate::error::Result;
use crate::stallings::{LabeledGraph, StallingsGraph};

pub fn product_graph(g1: &StallingsGraph, g2: &StallingsGraph) -> Result<PairGraph> {
    PairGraph::product(g1.graph(), g2.graph())
}

/// Stallings graph of `H ∩ K`: the component of the base pair, trimmed.
pub fn intersection(g1: &StallingsGraph, g2: &StallingsGraph) -> Result<StallingsGraph> {
    let p = product_graph(g1, g2)?;
    Ok(intersection_of(&p))
}

fn intersection_of(p: &PairGraph) -> StallingsGraph {
    let len = p.index_len();
    let mut g = LabeledGraph::new(p.alphabet(), len);
    for (v, a, w) in p.edges() {
        g.add_edge(v, a, w).expect("product transitions are injective");
    }
    // renumbering from the base drops the other components
    let component = g.renumbered_from(0);
    let alive = component.trim_mask(Some(0), &vec![true; component.vertex_count()]);
    let (trimmed, _) = component.induced(&alive);
    StallingsGraph::from_graph_unchecked(trimmed.renumbered_from(0))
}

/// Quantities entering the Hanna Neumann inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HncReport {
    /// `|E| − |V|` of the component of the base pair.
    pub chi_delta1: i64,
    /// `|E| − |V|` summed over the components that are not trees.
    pub chi_delta2: i64,
    pub rr_h: i64,
    pub rr_k: i64,
    pub rank_intersection: i64,
    pub hnc_ok: bool,
    pub shnc_ok: bool,
}

pub fn hnc_report(g1: &StallingsGraph, g2: &StallingsGraph) -> Result<HncReport> {
    let p = product_graph(g1, g2)?;
    let (label, sizes) = p.component_sizes();
    let chi = |(v, e): (usize, usize)| e as i64 - v as i64;
    let base = label[0].expect("base pair is present");
    let chi_delta1 = chi(sizes[base]);
    let chi_delta2: i64 = sizes.iter().map(|&s| chi(s)).filter(|&c| c >= 0).sum();
    let rr_h = g1.reduced_rank() as i64;
    let rr_k = g2.reduced_rank() as i64;
    let rank_intersection = intersection_of(&p).rank() as i64;
    Ok(HncReport {
        chi_delta1,
        chi_delta2,
        rr_h,
        rr_k,
        rank_intersection,
        hnc_ok: chi_delta1 <= rr_h * rr_k,
        shnc_ok: chi_delta2 <= rr_h * rr_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::isomorphic;
    use crate::words::{Alphabet, Word};

    fn fold(gens: &[&str]) -> StallingsGraph {
        let a = Alphabet::new(2).unwrap();
        let words: Vec<Word> = gens.iter().map(|g| Word::parse(g, a).unwrap()).collect();
        StallingsGraph::fold(&words, a).unwrap()
    }

    #[test]
    fn intersections() {
        let g = fold(&["ab", "ba", "aaB"]);
        assert!(isomorphic(intersection(&g, &g).unwrap().graph(), g.graph(), true));
        let t = intersection(&fold(&["a"]), &fold(&["b"])).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (1, 0));
        assert_eq!(intersection(&fold(&["a"]), &fold(&["aa"])).unwrap(), fold(&["aa"]));
        // ⟨a², b⟩ ∩ ⟨a³, b⟩ contains a⁶ and b
        let i = intersection(&fold(&["aa", "b"]), &fold(&["aaa", "b"])).unwrap();
        let a2 = Alphabet::new(2).unwrap();
        assert!(i.contains(&Word::parse("aaaaaa", a2).unwrap()));
        assert!(i.contains(&Word::parse("b", a2).unwrap()));
        assert!(!i.contains(&Word::parse("aa", a2).unwrap()));
    }

    #[test]
    fn reports() {
        let r = hnc_report(&fold(&["a"]), &fold(&["a"])).unwrap();
        assert_eq!((r.chi_delta1, r.rr_h, r.rr_k), (0, 0, 0));
        assert!(r.hnc_ok && r.shnc_ok);
        assert_eq!(r.rank_intersection, 1);

        let r = hnc_report(&fold(&["a"]), &fold(&["b"])).unwrap();
        assert_eq!((r.chi_delta1, r.chi_delta2), (-1, 0));
        assert!(r.hnc_ok && r.shnc_ok);
        assert_eq!(r.rank_intersection, 0);

        let g = fold(&["ab", "ba", "aaB"]);
        let h = fold(&["aab", "bA"]);
        let r = hnc_report(&g, &h).unwrap();
        assert_eq!(r.chi_delta1, r.rank_intersection - 1);
        assert!(r.hnc_ok && r.shnc_ok);
    }
}
