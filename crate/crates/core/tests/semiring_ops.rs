mod common;

use graph_semiring::checks::random_corpus;
use graph_semiring::hom::{exists_hom, SearchConfig};
use graph_semiring::ops::{self, blowup, closure, disjunctive, fractionalize, join, lexicographic, perp, rank};
use graph_semiring::{Graph, VertexSet};
use proptest::prelude::*;

use common::{brute_force_chi, brute_force_hom, is_isomorphic};

fn k(n: usize) -> Graph {
    Graph::complete(n).unwrap()
}

fn set(n: usize, xs: &[usize]) -> VertexSet {
    VertexSet::from_elements(n, xs.iter().copied())
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

#[test]
fn product_examples() {
    assert_eq!(join(&k(1), &k(1)).unwrap(), k(2));
    assert_eq!(join(&k(2), &k(3)).unwrap(), k(5));
    for n in 1..=3 {
        for m in 1..=3 {
            let p = disjunctive(&k(n), &k(m)).unwrap();
            if n * m <= 8 {
                assert!(is_isomorphic(&p, &k(n * m)));
            }
            assert_eq!(p, k(n * m));
        }
    }
    let c5 = Graph::cycle(5).unwrap();
    assert_eq!(disjunctive(&c5, &k(1)).unwrap(), c5);
    assert_eq!(lexicographic(&c5, &k(1)).unwrap(), c5);
    assert_eq!(lexicographic(&k(2), &k(2)).unwrap(), k(4));
    assert_eq!(brute_force_chi(&lexicographic(&c5, &k(2)).unwrap()), 5);
    assert_eq!(blowup(&c5, 1).unwrap(), c5);
    assert_eq!(blowup(&k(3), 2).unwrap(), k(6));
    assert!(blowup(&c5, 0).is_err());
}

#[test]
fn join_places_first_graph_first() {
    let g = join(&Graph::cycle(5).unwrap(), &Graph::edgeless(2).unwrap()).unwrap();
    assert!(!g.has_edge(5, 6));
    assert!(g.has_edge(0, 1) && !g.has_edge(0, 2));
    assert!((0..5).all(|v| g.has_edge(v, 5) && g.has_edge(v, 6)));
}

#[test]
fn fractionalization_examples() {
    assert_eq!(fractionalize(&k(6), 2).unwrap(), Graph::kneser(6, 2).unwrap());
    let f = fractionalize(&Graph::cycle(5).unwrap(), 2).unwrap();
    assert_eq!((f.vertex_count(), f.edge_count()), (5, 0));
    assert!(fractionalize(&k(1), 2).unwrap().is_empty());
    assert!(fractionalize(&k(3), 0).is_err());
}

#[test]
fn power_graph_examples() {
    let p1 = ops::power_graph(&k(1)).unwrap();
    assert_eq!((p1.vertex_count(), p1.edge_count()), (2, 0));
    let p2 = ops::power_graph(&k(2)).unwrap();
    assert_eq!(p2.vertex_count(), 4);
    assert_eq!(p2.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    assert!(ops::power_graph(&Graph::edgeless(13).unwrap()).is_err());
}

/// The d-clique vertices of the power graph, indexed by bitmask, induce G / d.
#[test]
fn power_graph_contains_fractionalizations() {
    for g in random_corpus(5, 20, 1, 7) {
        let n = g.vertex_count();
        let p = ops::power_graph(&g).unwrap();
        for d in 1..=3 {
            let cliques = ops::cliques_of_size(&g, d, usize::MAX).unwrap();
            let masks: Vec<usize> = cliques.iter().map(|c| c.iter().map(|v| 1 << v).sum()).collect();
            let sub = p.induced_subgraph(&VertexSet::from_elements(1 << n, masks.iter().copied())).unwrap();
            let mut order: Vec<usize> = (0..masks.len()).collect();
            order.sort_by_key(|&i| masks[i]);
            // induced_subgraph orders by mask; map back to lexicographic clique order
            let f = fractionalize(&g, d).unwrap();
            for (a, &i) in order.iter().enumerate() {
                for (b, &j) in order.iter().enumerate() {
                    assert_eq!(sub.has_edge(a, b), f.has_edge(i, j));
                }
            }
        }
    }
}

#[test]
fn perp_and_closure_examples() {
    assert_eq!(perp(&k(3), &set(3, &[0])), set(3, &[1, 2]));
    let c5 = Graph::cycle(5).unwrap();
    assert_eq!(perp(&c5, &set(5, &[0])), set(5, &[1, 4]));
    assert!(perp(&c5, &c5.vertices()).is_empty());
    assert_eq!(perp(&c5, &VertexSet::empty(5)), c5.vertices());
    assert!(closure(&c5, &VertexSet::empty(5)).is_empty());
}

#[test]
fn rank_anomaly() {
    let (g, s) = graph_semiring::checks::cut_vertex_example();
    assert_eq!(s.len(), 2);
    assert_eq!(rank(&g, &s), 3);
}

/// In K_n the closure of a vertex is the vertex itself, so its rank is 1.
#[test]
fn singleton_rank_in_complete_graphs() {
    for n in 1..=6 {
        let kn = k(n);
        for v in 0..n {
            let s = set(n, &[v]);
            assert_eq!(perp(&kn, &s).len(), n - 1);
            assert_eq!(closure(&kn, &s), s);
            assert_eq!(rank(&kn, &s), 1);
        }
        assert_eq!(rank(&kn, &kn.vertices()), n);
    }
}

#[test]
fn flat_enumeration() {
    let flats = ops::enumerate_flats(&k(3), 100).unwrap();
    assert_eq!(flats.len(), 8);
    for n in 0..6 {
        let e = Graph::edgeless(n).unwrap();
        let f = ops::enumerate_flats(&e, 100).unwrap();
        let want: Vec<VertexSet> = if n == 0 {
            vec![VertexSet::empty(0)]
        } else {
            vec![VertexSet::empty(n), e.vertices()]
        };
        assert_eq!(f, want);
    }
    for g in random_corpus(9, 30, 1, 9) {
        let flats = ops::enumerate_flats(&g, 10_000).unwrap();
        assert!(flats.iter().all(|s| closure(&g, s) == *s));
        // every perp of a subset is among the flats
        let n = g.vertex_count();
        for m in 0usize..1 << n {
            let s = VertexSet::from_elements(n, (0..n).filter(|v| m >> v & 1 == 1));
            assert!(flats.contains(&perp(&g, &s)));
        }
    }
    assert!(ops::enumerate_flats(&k(8), 10).is_err());
}

#[test]
fn join_fraction_converse_fails() {
    let lhs = fractionalize(&join(&k(1), &k(1)).unwrap(), 2).unwrap();
    assert_eq!(lhs, k(1));
    let f = fractionalize(&k(1), 2).unwrap();
    let rhs = join(&f, &f).unwrap();
    assert!(rhs.is_empty());
    assert!(!exists_hom(&lhs, &rhs, &SearchConfig::default()).is_yes());
}

#[test]
fn blowup_of_product_is_not_an_equivalence() {
    let c5 = Graph::cycle(5).unwrap();
    let lhs = disjunctive(&blowup(&k(2), 2).unwrap(), &c5).unwrap();
    let rhs = blowup(&disjunctive(&k(2), &c5).unwrap(), 2).unwrap();
    let cfg = SearchConfig::default();
    assert_eq!(graph_semiring::hom::chi(&lhs, &cfg).unwrap(), 12);
    assert_eq!(graph_semiring::hom::chi(&rhs, &cfg).unwrap(), 10);
    assert!(!exists_hom(&lhs, &rhs, &cfg).is_yes());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blowups_compose(g in arb_graph(6), d in 1usize..=3, d2 in 1usize..=3) {
        let lhs = blowup(&blowup(&g, d).unwrap(), d2).unwrap();
        prop_assert_eq!(lhs, blowup(&g, d * d2).unwrap());
    }

    #[test]
    fn blowup_distributes_over_join(g in arb_graph(5), h in arb_graph(5), d in 1usize..=3) {
        let lhs = join(&blowup(&g, d).unwrap(), &blowup(&h, d).unwrap()).unwrap();
        prop_assert_eq!(lhs, blowup(&join(&g, &h).unwrap(), d).unwrap());
    }

    #[test]
    fn fractions_map_into_join(g in arb_graph(5), h in arb_graph(5), d in 1usize..=3) {
        let lhs = join(&fractionalize(&g, d).unwrap(), &fractionalize(&h, d).unwrap()).unwrap();
        let rhs = fractionalize(&join(&g, &h).unwrap(), d).unwrap();
        let r = exists_hom(&lhs, &rhs, &SearchConfig::default());
        prop_assert!(r.witness().unwrap().verify(&lhs, &rhs));
    }

    #[test]
    fn blowup_of_product(g in arb_graph(4), h in arb_graph(4), d in 1usize..=2) {
        let lhs = blowup(&disjunctive(&g, &h).unwrap(), d).unwrap();
        let rhs = disjunctive(&blowup(&g, d).unwrap(), &h).unwrap();
        prop_assert!(exists_hom(&lhs, &rhs, &SearchConfig::default()).is_yes());
    }

    #[test]
    fn blowup_of_fraction(g in arb_graph(5), d in 1usize..=2, d2 in 1usize..=3) {
        let lhs = blowup(&fractionalize(&g, d2).unwrap(), d).unwrap();
        let rhs = fractionalize(&blowup(&g, d).unwrap(), d2).unwrap();
        prop_assert!(exists_hom(&lhs, &rhs, &SearchConfig::default()).is_yes());
    }

    #[test]
    fn lexicographic_maps_into_disjunctive(g in arb_graph(4), h in arb_graph(4)) {
        let lex = lexicographic(&g, &h).unwrap();
        let disj = disjunctive(&g, &h).unwrap();
        prop_assert!(lex.edges().all(|(u, v)| disj.has_edge(u, v)));
    }

    #[test]
    fn closure_is_a_closure_operator(g in arb_graph(10), a in any::<u16>(), b in any::<u16>()) {
        let n = g.vertex_count();
        let s = VertexSet::from_elements(n, (0..n).filter(|v| a >> v & 1 == 1));
        let t = s.union(&VertexSet::from_elements(n, (0..n).filter(|v| b >> v & 1 == 1)));
        let cs = closure(&g, &s);
        prop_assert!(s.is_subset(&cs));
        prop_assert!(cs.is_subset(&closure(&g, &t)));
        prop_assert_eq!(closure(&g, &cs), cs.clone());
        prop_assert!(perp(&g, &t).is_subset(&perp(&g, &s)));
    }

    #[test]
    fn closures_of_adjacent_sets_are_adjacent(g in arb_graph(8), a in any::<u8>(), b in any::<u8>()) {
        let n = g.vertex_count();
        let s = VertexSet::from_elements(n, (0..n).filter(|v| a >> v & 1 == 1));
        let t = VertexSet::from_elements(n, (0..n).filter(|v| b >> v & 1 == 1));
        let adjacent = |x: &VertexSet, y: &VertexSet| {
            !x.is_empty() && !y.is_empty() && x.iter().all(|u| y.iter().all(|v| g.has_edge(u, v)))
        };
        if adjacent(&s, &t) {
            prop_assert!(adjacent(&closure(&g, &s), &closure(&g, &t)));
        }
    }

    #[test]
    fn rank_bounds(g in arb_graph(9), a in any::<u16>()) {
        let n = g.vertex_count();
        let s = VertexSet::from_elements(n, (0..n).filter(|v| a >> v & 1 == 1));
        let r = rank(&g, &s);
        prop_assert!(r <= graph_semiring::clique::omega(&g));
        if graph_semiring::clique::is_clique(&g, &s) {
            prop_assert!(r >= s.len());
        }
    }
}

/// Homomorphisms from G ⋉ d to G ⋉ d' exist exactly when d <= d' for K_n, by
/// the brute-force oracle.
#[test]
fn blowup_of_complete_graphs() {
    for n in 1..=2 {
        for d in 1..=3 {
            for d2 in 1..=3 {
                let a = blowup(&k(n), d).unwrap();
                let b = blowup(&k(n), d2).unwrap();
                assert_eq!(brute_force_hom(&a, &b), d <= d2);
            }
        }
    }
}
