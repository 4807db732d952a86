use crate::graph::{low_mask, Graph};

/// Calls `visit` once for every non-empty vertex set inducing a connected subgraph.
///
/// Sets are grown from their smallest vertex; after a candidate has been explored it
/// is banned for its later siblings, so no set is produced twice.
pub fn for_each_connected_set<F: FnMut(u64)>(g: &Graph, mut visit: F) {
    let all = low_mask(g.order());
    for root in 0..g.order() {
        let allowed = all & !low_mask(root + 1);
        grow(g, 1 << root, g.neighbors(root) & allowed, allowed, &mut visit);
    }
}

fn grow<F: FnMut(u64)>(g: &Graph, set: u64, mut cand: u64, mut allowed: u64, visit: &mut F) {
    visit(set);
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        cand &= !bit;
        allowed &= !bit;
        let next = set | bit;
        let next_cand = (cand | g.neighbors(v) & allowed) & !next;
        grow(g, next, next_cand, allowed, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};
    use std::collections::HashSet;

    fn collect(g: &Graph) -> Vec<u64> {
        let mut out = Vec::new();
        for_each_connected_set(g, |s| out.push(s));
        out
    }

    fn by_filter(g: &Graph) -> HashSet<u64> {
        (1..1u64 << g.order()).filter(|&s| g.is_connected_set(s)).collect()
    }

    #[test]
    fn known_counts() {
        assert_eq!(collect(&path(4).unwrap()).len(), 10);
        assert_eq!(collect(&complete(5).unwrap()).len(), 31);
        // cycle C_n: n (n - 1) proper arcs plus the whole cycle
        assert_eq!(collect(&cycle(6).unwrap()).len(), 31);
    }

    #[test]
    fn exactly_once_and_complete() {
        let g = Graph::from_edges(7, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 0), (5, 6), (6, 3), (4, 5)])
            .unwrap();
        let sets = collect(&g);
        let unique: HashSet<u64> = sets.iter().copied().collect();
        assert_eq!(unique.len(), sets.len());
        assert_eq!(unique, by_filter(&g));
    }
}
