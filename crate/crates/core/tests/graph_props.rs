mod common;

use proptest::prelude::*;
use subtree_core::census::subtree_stats_kirchhoff;
use subtree_core::graph::{
    complete, complete_bipartite, contract, emit_graph6, empty, gnk_core, is_isomorphic, join,
    parse_graph6, Graph, VertexSet,
};
use subtree_core::Rational;

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (0..=max_order).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn graph6_round_trip(g in arb_graph(10)) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }
}

proptest! {
    #[test]
    fn graph6_round_trip_long_form(g in arb_graph(64).prop_filter("long form", |g| g.order() >= 60)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn split_graph_edges(m in 1usize..8, n in 1usize..8) {
        let split = join(&complete(m).unwrap(), &empty(n).unwrap()).unwrap();
        prop_assert_eq!(split.edge_count(), m * (m - 1) / 2 + m * n);
        let internal: Vec<_> = split.edges().into_iter().filter(|&(u, v)| u < m && v < m).collect();
        prop_assert_eq!(internal.len(), m * (m - 1) / 2);
        prop_assert_eq!(split.without_edges(&internal).unwrap(), complete_bipartite(m, n).unwrap());
    }

    #[test]
    fn mean_and_density_are_bounded(g in arb_graph(8).prop_filter("connected", Graph::is_connected)) {
        let stats = subtree_stats_kirchhoff(&g).unwrap();
        let mean = stats.mean().unwrap();
        let n = Rational::from_integer(g.order().into());
        prop_assert!(mean >= Rational::from_integer(1.into()) && mean <= n);
        let sigma = stats.density(&g.order().into()).unwrap();
        prop_assert!(sigma > Rational::from_integer(0.into()) && sigma <= Rational::from_integer(1.into()));
    }
}

#[test]
fn contracting_the_chord_ends_gives_a_single_chord_core() {
    for k in 1..=4usize {
        for length in k + 2..=10 {
            let core = gnk_core(length, k).unwrap();
            let merged = contract(&core.graph, VertexSet::range(k)).unwrap();
            let single = gnk_core(length - k + 1, 1).unwrap();
            assert!(
                is_isomorphic(&merged, &single.graph).unwrap(),
                "k = {k}, L = {length}"
            );
        }
    }
}
