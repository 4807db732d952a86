#![allow(dead_code)]

use rand::Rng;
use subtree_core::graph::Graph;
use subtree_core::prufer::decode;

pub fn graph_from_masks(adj: &[u64]) -> Graph {
    let mut edges = Vec::new();
    for (u, &nbrs) in adj.iter().enumerate() {
        for v in u + 1..adj.len() {
            if nbrs >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(adj.len(), edges).unwrap()
}

/// A uniform random labelled spanning tree plus each other pair with probability
/// drawn per graph.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let tree = if n >= 2 {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        decode(&seq).unwrap()
    } else {
        Vec::new()
    };
    let density: f64 = rng.gen_range(0.0..0.7);
    let mut g = Graph::from_edges(n, tree).unwrap();
    let extra: Vec<_> = g.non_edges().into_iter().filter(|_| rng.gen_bool(density)).collect();
    g = g.with_edges(&extra).unwrap();
    g
}
