mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stallings_core::partial_injections::CountCache;
use stallings_core::properties::{
    hnc_report, intersection, is_malnormal, letter_cycle, PairGraph,
};
use stallings_core::samplers::{sample_graph_subgroup, DEFAULT_MAX_ATTEMPTS};
use stallings_core::stallings::isomorphic;
use stallings_core::{Alphabet, StallingsGraph, Word};

use common::*;

fn a2() -> Alphabet {
    Alphabet::new(2).unwrap()
}

fn words(rng: &mut ChaCha8Rng, count: usize, max_len: usize) -> Vec<Word> {
    (0..count).map(|_| random_reduced(a2(), max_len, rng)).collect()
}

fn graph(rng: &mut ChaCha8Rng, n: usize) -> StallingsGraph {
    let cache = CountCache::new(n);
    sample_graph_subgroup(a2(), n, &cache, rng, DEFAULT_MAX_ATTEMPTS).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fold_ignores_generator_order(seed: u64, count in 1usize..6, max_len in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = words(&mut rng, count, max_len);
        let g = StallingsGraph::fold(&gens, a2()).unwrap();
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let h = StallingsGraph::fold(&shuffled, a2()).unwrap();
        prop_assert!(isomorphic(g.graph(), h.graph(), true));
        prop_assert_eq!(g.to_json(), h.to_json());
    }

    #[test]
    fn fold_output_contains_generated_subgroup(seed: u64, count in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = words(&mut rng, count, 8);
        let g = StallingsGraph::fold(&gens, a2()).unwrap();
        prop_assert!(g.graph().is_admissible(0));
        for w in &gens {
            prop_assert!(g.contains(w));
        }
        for _ in 0..20 {
            prop_assert!(g.contains(&random_element(&gens, 6, &mut rng)));
        }
    }

    #[test]
    fn json_round_trip(seed: u64, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = graph(&mut rng, n);
        prop_assert_eq!(StallingsGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn conjugacy_is_an_equivalence(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = words(&mut rng, 2, 6);
        let u = random_reduced(a2(), 4, &mut rng);
        let v = random_reduced(a2(), 4, &mut rng);
        let conj = |c: &Word| -> StallingsGraph {
            let moved: Vec<Word> = gens.iter().map(|w| c.concat(w).concat(&c.invert())).collect();
            StallingsGraph::fold(&moved, a2()).unwrap()
        };
        let g = StallingsGraph::fold(&gens, a2()).unwrap();
        let gu = conj(&u);
        let guv = conj(&v.concat(&u));
        prop_assert!(g.conjugate(&g).unwrap());
        prop_assert!(g.conjugate(&gu).unwrap());
        prop_assert!(gu.conjugate(&g).unwrap());
        prop_assert!(gu.conjugate(&guv).unwrap());
        prop_assert!(g.conjugate(&guv).unwrap());
    }

    #[test]
    fn intersection_is_closed(seed: u64, n1 in 1usize..8, n2 in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = graph(&mut rng, n1);
        let g2 = graph(&mut rng, n2);
        let meet = intersection(&g1, &g2).unwrap();
        prop_assert!(meet.graph().is_admissible(0));
        for _ in 0..30 {
            let w = random_reduced(a2(), 8, &mut rng);
            prop_assert_eq!(meet.contains(&w), g1.contains(&w) && g2.contains(&w), "{}", w);
        }
        let basis = spanning_basis(&meet);
        for _ in 0..30 {
            let w = random_element(&basis, 4, &mut rng);
            prop_assert!(meet.contains(&w) && g1.contains(&w) && g2.contains(&w));
        }
    }

    #[test]
    fn intersection_rank_and_neumann_bounds(seed: u64, n1 in 1usize..10, n2 in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = graph(&mut rng, n1);
        let g2 = graph(&mut rng, n2);
        let r = hnc_report(&g1, &g2).unwrap();
        prop_assert_eq!(r.rank_intersection, r.chi_delta1 + 1);
        prop_assert!(r.hnc_ok && r.shnc_ok);
        prop_assert!(r.chi_delta1 <= r.chi_delta2.max(-1));
    }

    #[test]
    fn letter_cycles_break_malnormality(seed: u64, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = graph(&mut rng, n);
        let m = is_malnormal(&g);
        if letter_cycle(g.graph()).is_some() {
            prop_assert!(!m.malnormal);
        }
        if m.malnormal {
            prop_assert!(letter_cycle(g.graph()).is_none());
        }
    }

    #[test]
    fn off_diagonal_square_avoids_diagonal(seed: u64, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = graph(&mut rng, n);
        let p = PairGraph::off_diagonal(g.graph());
        for (v, _, w) in p.edges() {
            let (x, y) = p.pair(v);
            let (x2, y2) = p.pair(w);
            prop_assert!(x != y && x2 != y2);
        }
        prop_assert_eq!(p.vertex_count(), n * (n - 1));
    }
}

#[test]
fn conjugate_subgroups_share_a_core() {
    let g = StallingsGraph::fold(&[Word::parse("ab", a2()).unwrap()], a2()).unwrap();
    let h = StallingsGraph::fold(&[Word::parse("aabA", a2()).unwrap()], a2()).unwrap();
    assert!(g.conjugate(&h).unwrap());
    assert!(isomorphic(g.cyclic_core().graph(), h.cyclic_core().graph(), false));
    assert!(!isomorphic(g.graph(), h.graph(), true));
}
