mod common;

use std::sync::Arc;

use common::{arb_graph, arb_graph_with_cliques};
use graphcoh::closed_forms::{b1_formula, b2_formula};
use graphcoh::graph::parse_named;
use graphcoh::{
    betti, betti_via_decomposition, essential_betti, ggi_betti_reduced, isomorphism_classes,
    kunneth, named, BettiTable, CliqueFamily, Engine, EssentialCache, Family, Graph,
};
use proptest::prelude::*;

fn none() -> CliqueFamily {
    CliqueFamily::empty()
}

fn classes(max_n: usize) -> Vec<Graph> {
    (0..=max_n)
        .flat_map(|n| isomorphism_classes(n).unwrap().into_iter().map(|(_, g)| g))
        .collect()
}

#[test]
fn essential_examples() {
    assert_eq!(essential_betti(&Graph::empty(1)).unwrap().dims, vec![0, 1]);
    for n in 1..=5 {
        let e = essential_betti(&Graph::empty(n)).unwrap();
        assert_eq!(
            e.dims,
            (0..=n).map(|i| u64::from(i == n)).collect::<Vec<_>>()
        );
    }
    assert_eq!(
        essential_betti(&named(Family::Star, 3).unwrap())
            .unwrap()
            .get(3),
        2
    );
    assert_eq!(
        essential_betti(&named(Family::Complete, 5).unwrap())
            .unwrap()
            .get(3),
        6
    );
}

#[test]
fn kunneth_on_essential_tables() {
    let k2 = essential_betti(&named(Family::Complete, 2).unwrap())
        .unwrap()
        .as_betti();
    let k1 = essential_betti(&Graph::empty(1)).unwrap().as_betti();
    assert_eq!(kunneth(&k2, &k1).get(3), 2);
    let k2k1 = essential_betti(&parse_named("K2+K1").unwrap())
        .unwrap()
        .as_betti();
    assert_eq!(kunneth(&k2, &k1), k2k1);
}

#[test]
fn decomposition_is_exact_up_to_five_vertices() {
    let engine = Engine::new();
    for g in classes(5) {
        let direct = engine.betti(&g, &none()).unwrap();
        for d in 0..direct.len() {
            assert_eq!(
                engine.betti_via_decomposition(&g, d).unwrap(),
                direct.get(d),
                "degree {d} of {:?}",
                g
            );
        }
    }
}

#[test]
fn first_and_second_degree_up_to_six_vertices() {
    let engine = Engine::new();
    let all = classes(6);
    assert_eq!(all.len(), 1 + 208);
    for g in all {
        let b = engine.betti_degrees(&g, &none(), 0..=2).unwrap();
        assert_eq!(b[0], 1);
        assert_eq!(b[1], b1_formula(&g), "{g:?}");
        assert_eq!(b[2], b2_formula(&g), "{g:?}");
    }
}

#[test]
fn duality_euler_and_bigraded_consistency() {
    let engine = Engine::new();
    for g in classes(5) {
        let b = engine.betti(&g, &none()).unwrap();
        assert!(b.is_palindromic(), "{g:?}: {:?}", b.dims());
        assert_eq!(b.len(), g.order() + g.size() + 1);
        if g.order() > 0 {
            assert_eq!(b.euler_characteristic(), 0);
        }
        let e = engine.essential(&g).unwrap();
        for (n, &beta) in e.dims.iter().enumerate() {
            let sum: u64 = e
                .bigraded
                .iter()
                .filter(|((m, _), _)| *m == n)
                .map(|(_, &v)| v)
                .sum();
            assert_eq!(sum, beta);
            // Only the empty graph carries essential classes with |V| > 2n - 1.
            if beta != 0 && g.order() > 0 {
                assert!(g.order() < 2 * n, "{g:?} degree {n}");
            }
        }
    }
}

#[test]
fn blockwise_equals_monolithic_on_ggi_examples() {
    let engine = Engine::new();
    let g = graphcoh::parse_edge_list("n 4\n1 2\n1 3\n2 3\n3 4").unwrap();
    for cliques in ["[]", "[[1,2],[1,2],[1,2,3]]", "[[3,4]]", "[[4]]"] {
        let sigma = CliqueFamily::from_json(cliques).unwrap();
        assert_eq!(
            engine.betti(&g, &sigma).unwrap(),
            engine.betti_monolithic(&g, &sigma).unwrap(),
            "{cliques}"
        );
    }
}

#[test]
fn on_disk_cache_is_transparent() {
    let dir = tempdir();
    let g = parse_named("C5").unwrap();
    let cold = Engine::new()
        .with_cache(None)
        .betti_via_decomposition(&g, 4)
        .unwrap();
    for _ in 0..2 {
        let cache = Arc::new(EssentialCache::open(&dir).unwrap());
        let engine = Engine::new().with_cache(Some(cache.clone()));
        assert_eq!(engine.betti_via_decomposition(&g, 4).unwrap(), cold);
        assert_eq!(engine.essential(&g).unwrap(), essential_betti(&g).unwrap());
    }
    let reopened = EssentialCache::open(&dir).unwrap();
    assert!(reopened.stats().entries > 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("graphcoh-engine-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn ggi_examples() {
    let nine_vertex = graphcoh::parse_edge_list(
        "n 9\n1 2\n2 3\n1 3\n2 4\n3 4\n4 5\n3 5\n5 6\n6 7\n7 8\n8 9\n7 9",
    )
    .unwrap();
    let sigma = CliqueFamily::from_json("[[1,2,3],[2,3,4],[3,4,5],[7,8,9]]").unwrap();
    assert_eq!(
        ggi_betti_reduced(&nine_vertex, &sigma).unwrap().dims(),
        &[1, 5, 10, 10, 5, 1]
    );
    let g = parse_named("C4").unwrap();
    assert_eq!(
        ggi_betti_reduced(&g, &none()).unwrap(),
        betti(&g, &none()).unwrap()
    );
}

fn same_table(a: &BettiTable, b: &BettiTable) -> bool {
    (0..a.len().max(b.len())).all(|d| a.get(d) == b.get(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ggi_reduction_matches_direct((g, sigma) in arb_graph_with_cliques(5, 3)) {
        let direct = betti(&g, &sigma).unwrap();
        let reduced = ggi_betti_reduced(&g, &sigma).unwrap();
        prop_assert!(same_table(&direct, &reduced), "{:?} vs {:?}", direct.dims(), reduced.dims());
        if g.order() + sigma.len() > 0 {
            prop_assert_eq!(direct.euler_characteristic(), 0);
        }
        prop_assert_eq!(direct.len(), g.order() + g.size() + sigma.len() + 1);
    }

    #[test]
    fn kunneth_for_disjoint_unions(a in arb_graph(3), b in arb_graph(3)) {
        let u = a.disjoint_union(&b).unwrap();
        let want = kunneth(&betti(&a, &none()).unwrap(), &betti(&b, &none()).unwrap());
        prop_assert_eq!(betti(&u, &none()).unwrap(), want);
        let ess = kunneth(&essential_betti(&a).unwrap().as_betti(), &essential_betti(&b).unwrap().as_betti());
        prop_assert!(same_table(&essential_betti(&u).unwrap().as_betti(), &ess));
    }

    #[test]
    fn blockwise_equals_monolithic((g, sigma) in arb_graph_with_cliques(4, 2)) {
        let engine = Engine::new();
        prop_assert_eq!(engine.betti(&g, &sigma).unwrap(), engine.betti_monolithic(&g, &sigma).unwrap());
    }

    #[test]
    fn decomposition_with_and_without_cache(g in arb_graph(6), d in 0usize..5) {
        let cached = betti_via_decomposition(&g, d).unwrap();
        let plain = Engine::new().with_cache(None).sequential().betti_via_decomposition(&g, d).unwrap();
        prop_assert_eq!(cached, plain);
    }
}
