use num_bigint::BigUint;

use super::SubtreeStats;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Subtree statistics of a tree in linear time.
///
/// Rooting the tree at vertex 0, let `f(v)` count the subtrees whose highest vertex
/// is `v` and `g(v)` their total order. Each child `c` is either left out or
/// contributes one of its own rooted subtrees, so folding in `c` maps
/// `(f, g)` to `(f (1 + f(c)), g (1 + f(c)) + f g(c))`.
pub fn tree_subtree_stats(t: &Graph) -> Result<SubtreeStats> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let adj: Vec<u64> = (0..t.order()).map(|v| t.neighbors(v)).collect();
    let (count, total) = tree_stats_raw(&adj);
    Ok(SubtreeStats::new(BigUint::from(count), BigUint::from(total)))
}

/// The same recurrence over raw adjacency masks of a tree on at most 64 vertices.
/// A tree of order `n` has at most `2^(n-1) + n - 1` subtrees, so `u128` suffices.
pub(crate) fn tree_stats_raw(adj: &[u64]) -> (u128, u128) {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut seen = 1u64;
    while let Some(v) = stack.pop() {
        order.push(v);
        for c in bits(adj[v] & !seen) {
            seen |= 1 << c;
            parent[c] = v;
            stack.push(c);
        }
    }
    let mut f = vec![1u128; n];
    let mut g = vec![1u128; n];
    let (mut count, mut total) = (0u128, 0u128);
    for &v in order.iter().rev() {
        count += f[v];
        total += g[v];
        let p = parent[v];
        if p != usize::MAX {
            let keep = 1 + f[v];
            g[p] = g[p] * keep + f[p] * g[v];
            f[p] *= keep;
        }
    }
    (count, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, star};
    use num_rational::BigRational;

    #[test]
    fn paths_match_closed_form() {
        for q in 1..=50usize {
            let s = tree_subtree_stats(&path(q).unwrap()).unwrap();
            let expected = BigRational::new((q as i64 + 2).into(), 3.into());
            assert_eq!(s.mean().unwrap(), expected, "q = {q}");
        }
    }

    #[test]
    fn stars() {
        for s in 0..=20usize {
            let stats = tree_subtree_stats(&star(s).unwrap()).unwrap();
            assert_eq!(stats.count, BigUint::from((1u64 << s) + s as u64));
        }
        let big = tree_subtree_stats(&star(63).unwrap()).unwrap();
        assert_eq!(big.count, (BigUint::from(1u32) << 63) + 63u32);
    }

    #[test]
    fn single_vertex_and_rejections() {
        let s = tree_subtree_stats(&path(1).unwrap()).unwrap();
        assert_eq!(s, SubtreeStats::new(1u32, 1u32));
        assert_eq!(tree_subtree_stats(&complete(3).unwrap()), Err(Error::NotATree));
        let forest = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(tree_subtree_stats(&forest), Err(Error::NotATree));
    }
}
