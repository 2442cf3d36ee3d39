mod common;

use common::{arb_graph, arb_graph_with_cliques};
use graphcoh::closed_forms::binomial;
use graphcoh::complex::{differential_matrix, enumerate_basis, BasisFilter};
use graphcoh::{CliqueFamily, Generators, Graph, VertexSet};
use proptest::prelude::*;

fn subsets_of(g: &Graph) -> impl Iterator<Item = VertexSet> {
    (0..1u64 << g.order()).map(VertexSet::from_bits)
}

#[test]
fn matrix_dump_is_stable() {
    let g = graphcoh::parse_edge_list("n 3\n1 2\n2 3").unwrap();
    let layout = Generators::dani_mainkar(&g).unwrap();
    let m = differential_matrix(&layout, 1, BasisFilter::none());
    // Columns x1 x2 x3 x12 x23; rows in lexicographic order of pairs.
    // Q(x12) = x1 x2 is row 1; Q(x23) = x2 x3 is row 5.
    assert_eq!(m.dump(), "10 5 2\n1 4 1\n5 5 1\n");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_squared_vanishes((g, sigma) in arb_graph_with_cliques(4, 2)) {
        let layout = Generators::new(&g, &sigma).unwrap();
        for d in 0..layout.len().saturating_sub(1) {
            let q0 = differential_matrix(&layout, d, BasisFilter::none());
            let q1 = differential_matrix(&layout, d + 1, BasisFilter::none());
            prop_assert!(q1.mul(&q0).is_zero(), "degree {}", d);
        }
    }

    #[test]
    fn q_squared_vanishes_blockwise((g, sigma) in arb_graph_with_cliques(5, 3)) {
        let layout = Generators::new(&g, &sigma).unwrap();
        let s = g.vertices();
        for d in 0..layout.len().saturating_sub(1) {
            let q0 = differential_matrix(&layout, d, BasisFilter::support(s));
            let q1 = differential_matrix(&layout, d + 1, BasisFilter::support(s));
            prop_assert!(q1.mul(&q0).is_zero(), "degree {}", d);
        }
    }

    #[test]
    fn differential_preserves_support_and_weight((g, sigma) in arb_graph_with_cliques(4, 2)) {
        let layout = Generators::new(&g, &sigma).unwrap();
        for d in 0..layout.len() {
            let source = enumerate_basis(&layout, d, BasisFilter::none());
            for &m in &source {
                for (t, coef) in layout.differential(m) {
                    prop_assert!(coef != 0);
                    prop_assert_eq!(layout.support(t), layout.support(m));
                    prop_assert_eq!(layout.weight(t), layout.weight(m));
                    // A y_k term collects |support ∩ σ_k| from every factor.
                    let bound = if sigma.is_empty() { 1 } else { 2 * d as i64 };
                    prop_assert!(coef.abs() <= bound);
                }
            }
        }
    }

    #[test]
    fn bases_partition_by_support((g, sigma) in arb_graph_with_cliques(4, 2)) {
        let layout = Generators::new(&g, &sigma).unwrap();
        let total = layout.len();
        for d in 0..=total {
            let all = enumerate_basis(&layout, d, BasisFilter::none());
            prop_assert_eq!(all.len() as u128, binomial(total as i64, d as i64));
            prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
            let mut pieces: Vec<_> = subsets_of(&g).flat_map(|s| enumerate_basis(&layout, d, BasisFilter::support(s))).collect();
            pieces.sort();
            prop_assert_eq!(pieces, all);
        }
    }

    #[test]
    fn support_bounds_the_degree(g in arb_graph(5)) {
        let layout = Generators::dani_mainkar(&g).unwrap();
        for s in subsets_of(&g) {
            let inner = g.induced_subgraph(s).unwrap().size();
            for d in 0..=layout.len() {
                let basis = enumerate_basis(&layout, d, BasisFilter::support(s));
                if !basis.is_empty() {
                    prop_assert!(s.len() <= 2 * d && d <= s.len() + inner);
                }
            }
        }
    }
}

#[test]
fn dani_mainkar_entries_are_units_and_ggi_entries_grow_with_degree() {
    let g = graphcoh::parse_edge_list("n 4\n1 2\n1 3\n2 3\n3 4").unwrap();
    let plain = Generators::dani_mainkar(&g).unwrap();
    for d in 0..plain.len() {
        let m = differential_matrix(&plain, d, BasisFilter::none());
        assert!(m.entries().iter().all(|&(_, _, v)| v == 1 || v == -1));
    }
    let sigma = CliqueFamily::from_json("[[1,2,3]]").unwrap();
    let ggi = Generators::new(&g, &sigma).unwrap();
    let q1 = differential_matrix(&ggi, 1, BasisFilter::none());
    assert!(q1
        .entries()
        .iter()
        .all(|&(_, _, v)| [-2, -1, 1, 2].contains(&v)));
    use graphcoh::GeneratorIndex::{Clique, Edge, Vertex};
    let (_, m) = ggi.monomial(&[Vertex(1), Edge(1, 3)]).unwrap();
    let (_, t) = ggi.monomial(&[Vertex(1), Edge(1, 3), Clique(1)]).unwrap();
    let coef = ggi
        .differential(m)
        .into_iter()
        .find(|&(x, _)| x == t)
        .map(|(_, c)| c.abs());
    assert_eq!(coef, Some(3));
    let q2 = differential_matrix(&ggi, 2, BasisFilter::none());
    assert_eq!(q2.entries().iter().map(|&(_, _, v)| v.abs()).max(), Some(4));
}
