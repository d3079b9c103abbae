mod common;

use bihamilton::hamilton::{
    bipartite_closure, bipartite_closure_logged, find_good_linear_forest, find_hamilton_cycle,
    find_hamilton_cycle_with, find_two_factor, forest_to_hamilton, lift_cycle, recognize_gnn, Certificate,
    HamiltonError, HamiltonOptions, Strategy as SearchStrategy,
};
use bihamilton::BipartiteGraph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn balanced(max: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<u64>(), n)
            .prop_map(move |rows| BipartiteGraph::from_rows(n, rows).unwrap())
    })
}

/// Dense graphs, where Hamilton cycles are common.
fn dense(max: usize) -> impl Strategy<Value = BipartiteGraph> {
    (2..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::bool::weighted(0.7), n), n).prop_map(
            move |m| {
                let edges = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
                let edges: Vec<_> = edges.filter(|&(x, y)| m[x][y]).collect();
                BipartiteGraph::from_edges(n, n, edges).unwrap()
            },
        )
    })
}

#[test]
fn extremal_has_no_cycle_or_factor() {
    for n in 5..=24 {
        let g = BipartiteGraph::extremal(n).unwrap();
        assert_eq!(find_hamilton_cycle(&g).unwrap(), None, "n={n}");
        assert_eq!(find_two_factor(&g).unwrap(), None, "n={n}");
        assert!(recognize_gnn(&g).unwrap());
    }
}

#[test]
fn extremal_plus_edge_is_hamiltonian() {
    let g = BipartiteGraph::extremal(8).unwrap().with_edge(4, 0).unwrap();
    assert!(!recognize_gnn(&g).unwrap());
    let c = find_hamilton_cycle(&g).unwrap().unwrap();
    c.verify(&g).unwrap();
    assert!(common::held_karp(&g));
}

#[test]
fn recognition_is_label_free() {
    let g = BipartiteGraph::extremal(9).unwrap();
    let px: Vec<usize> = (0..9).rev().collect();
    let py: Vec<usize> = (0..9).map(|i| (i + 4) % 9).collect();
    let h = g.permute(&px, &py);
    assert!(recognize_gnn(&h).unwrap());
    assert!(common::isomorphic(&g, &h));
    assert!(recognize_gnn(&h.transpose()).unwrap());
}

#[test]
fn tiny_graphs() {
    let k11 = BipartiteGraph::complete(1, 1).unwrap();
    assert_eq!(find_hamilton_cycle(&k11).unwrap(), None);
    let k22 = BipartiteGraph::complete(2, 2).unwrap();
    find_hamilton_cycle(&k22).unwrap().unwrap().verify(&k22).unwrap();
    assert!(find_hamilton_cycle(&BipartiteGraph::complete(2, 3).unwrap()).is_err());
}

#[test]
fn budget_exhaustion_is_an_error() {
    let g = BipartiteGraph::complete(20, 20).unwrap();
    let opts = HamiltonOptions {
        strategy: SearchStrategy::Direct,
        step_budget: Some(1),
    };
    assert!(matches!(
        find_hamilton_cycle_with(&g, opts),
        Err(HamiltonError::BudgetExhausted(_))
    ));
}

#[test]
fn forest_search_on_extremal_is_empty() {
    for n in 5..=24 {
        let g = BipartiteGraph::extremal(n).unwrap();
        assert_eq!(find_good_linear_forest(&g, &[0, 1, 2]).unwrap(), None);
    }
}

#[test]
fn forest_found_when_neighbourhoods_overlap() {
    // v1 ~ u1,u2 ; v2 ~ u2,u3 ; v3 ~ u3,u4: one path u1 v1 u2 v2 u3 v3 u4.
    let n = 8;
    let mut edges: Vec<_> = (0..n).flat_map(|x| (3..n).map(move |y| (x, y))).collect();
    edges.extend([(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)]);
    let g = BipartiteGraph::from_edges(n, n, edges).unwrap();
    let forest = find_good_linear_forest(&g, &[0, 1, 2]).unwrap().unwrap();
    forest.verify(&g).unwrap();
    forest_to_hamilton(&g, &forest).unwrap().verify(&g).unwrap();
}

#[test]
fn forest_arguments_checked() {
    let g = BipartiteGraph::complete(6, 6).unwrap();
    assert!(matches!(
        find_good_linear_forest(&g, &[0, 1]),
        Err(HamiltonError::SpecialSetSize(2))
    ));
    assert!(find_good_linear_forest(&g, &[0, 0, 1]).is_err());
    assert!(find_good_linear_forest(&g, &[0, 1, 9]).is_err());
}

#[test]
fn closure_examples() {
    let g = BipartiteGraph::extremal(16).unwrap();
    assert_eq!(bipartite_closure(&g).unwrap(), g);
    let plus = g.with_edge(5, 2).unwrap();
    assert!(bipartite_closure(&plus).unwrap().is_complete());
}

#[test]
fn certificates_round_trip() {
    let g = BipartiteGraph::complete(5, 5).unwrap();
    let c = find_hamilton_cycle(&g).unwrap().unwrap();
    let cert = Certificate::Cycle(c);
    let doc = cert.to_document(&g);
    let json = serde_json::to_string(&doc).unwrap();
    let back = Certificate::from_document(&serde_json::from_str(&json).unwrap()).unwrap();
    back.verify(&g).unwrap();
    let f = find_two_factor(&g).unwrap().unwrap();
    Certificate::TwoFactor(f).verify(&g).unwrap();
}

#[test]
fn closure_is_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let g = common::random_graph(4 + i % 5, 0.55, &mut rng);
        let h = bipartite_closure(&g).unwrap();
        for _ in 0..10 {
            assert_eq!(common::random_order_closure(&g, &mut rng), h);
        }
    }
}

proptest! {
    #[test]
    fn search_matches_held_karp(g in balanced(6)) {
        let found = find_hamilton_cycle(&g).unwrap();
        prop_assert_eq!(found.is_some(), common::held_karp(&g));
        if let Some(c) = found {
            prop_assert!(c.verify(&g).is_ok());
        }
    }

    #[test]
    fn dense_search_matches_held_karp(g in dense(9)) {
        let found = find_hamilton_cycle(&g).unwrap();
        prop_assert_eq!(found.is_some(), common::held_karp(&g));
    }

    #[test]
    fn two_factor_matches_brute_force(g in balanced(5)) {
        let found = find_two_factor(&g).unwrap();
        prop_assert_eq!(found.is_some(), common::brute_two_factor(&g));
        if let Some(f) = found {
            prop_assert!(f.verify(&g).is_ok());
            let covered: usize = f.cycles().iter().map(|c| c.len()).sum();
            prop_assert_eq!(covered, 2 * g.nx());
        }
    }

    #[test]
    fn hamiltonian_implies_two_factor(g in dense(8)) {
        if find_hamilton_cycle(&g).unwrap().is_some() {
            prop_assert!(find_two_factor(&g).unwrap().is_some());
        }
    }

    #[test]
    fn closure_is_idempotent_and_extensive(g in balanced(8)) {
        let h = bipartite_closure(&g).unwrap();
        prop_assert_eq!(bipartite_closure(&h).unwrap(), h.clone());
        for (x, y) in g.edges() {
            prop_assert!(h.has_edge(x, y));
        }
    }

    #[test]
    fn closure_preserves_hamiltonicity(g in balanced(7)) {
        let (h, log) = bipartite_closure_logged(&g).unwrap();
        let direct = find_hamilton_cycle(&g).unwrap();
        let closed = find_hamilton_cycle(&h).unwrap();
        prop_assert_eq!(direct.is_some(), closed.is_some());
        if let Some(c) = closed {
            let lifted = lift_cycle(&g, &log, &c).unwrap();
            prop_assert!(lifted.verify(&g).is_ok());
        }
        let lifted = find_hamilton_cycle_with(&g, HamiltonOptions {
            strategy: SearchStrategy::ClosureLift,
            step_budget: None,
        }).unwrap();
        prop_assert_eq!(lifted.cycle.is_some(), direct.is_some());
    }

    #[test]
    fn recognition_matches_isomorphism(g in dense(7)) {
        prop_assume!(g.nx() >= 5);
        let gnn = BipartiteGraph::extremal(g.nx()).unwrap();
        let expected = common::isomorphic(&g, &gnn) || common::isomorphic(&g.transpose(), &gnn);
        prop_assert_eq!(recognize_gnn(&g).unwrap(), expected);
    }

    #[test]
    fn relabelled_extremal_recognized(n in 5usize..14, px in any::<u64>(), py in any::<u64>(), pick in any::<usize>()) {
        let shuffle = |mut seed: u64| {
            let mut p: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.swap(i, (seed >> 33) as usize % (i + 1));
            }
            p
        };
        let g = BipartiteGraph::extremal(n).unwrap().permute(&shuffle(px), &shuffle(py));
        prop_assert!(recognize_gnn(&g).unwrap());
        let edges: Vec<_> = g.edges().collect();
        let (x, y) = edges[pick % edges.len()];
        prop_assert!(!recognize_gnn(&g.without_edge(x, y).unwrap()).unwrap());
    }
}
