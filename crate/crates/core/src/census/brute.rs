use num_bigint::BigUint;

use super::SubtreeStats;
use crate::error::{Error, Result};
use crate::graph::{bits, low_mask, Edge, Graph};

/// Largest order accepted by the enumerating routines.
pub const MAX_BRUTE_ORDER: usize = 12;

/// Edge numbering for a graph on at most 12 vertices, so that edge sets fit a `u128`.
pub(crate) struct EdgeIndex {
    pub(crate) ends: Vec<Edge>,
    /// `id[u][v]` for adjacent `u, v`.
    id: Vec<[u8; MAX_BRUTE_ORDER]>,
}

impl EdgeIndex {
    pub(crate) fn new(g: &Graph) -> Self {
        let ends = g.edges();
        let mut id = vec![[u8::MAX; MAX_BRUTE_ORDER]; g.order()];
        for (i, &(u, v)) in ends.iter().enumerate() {
            id[u][v] = i as u8;
            id[v][u] = i as u8;
        }
        EdgeIndex { ends, id }
    }

    /// Bitmask of the edges from `u` into `targets`.
    fn edges_to(&self, g: &Graph, u: usize, targets: u64) -> u128 {
        bits(g.neighbors(u) & targets).fold(0, |m, v| m | 1u128 << self.id[u][v])
    }

    pub(crate) fn decode(&self, mut mask: u128) -> Vec<Edge> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        while mask != 0 {
            out.push(self.ends[mask.trailing_zeros() as usize]);
            mask &= mask - 1;
        }
        out
    }
}

fn check(g: &Graph) -> Result<()> {
    if g.order() > MAX_BRUTE_ORDER {
        return Err(Error::TooLarge {
            what: "subtree enumeration",
            order: g.order(),
            limit: MAX_BRUTE_ORDER,
        });
    }
    Ok(())
}

/// Walks every subtree exactly once as a `(vertex mask, edge mask)` pair.
///
/// Each tree is grown from its smallest vertex by adding one pendant edge at a time;
/// a candidate edge that has been explored is dropped for its later siblings.
pub(crate) fn walk_subtrees<F: FnMut(u64, u128)>(g: &Graph, index: &EdgeIndex, mut visit: F) {
    let all = low_mask(g.order());
    for root in 0..g.order() {
        let allowed = all & !low_mask(root + 1);
        visit(1 << root, 0);
        let cand = index.edges_to(g, root, allowed);
        grow(g, index, allowed, 1 << root, 0, cand, &mut visit);
    }
}

fn grow<F: FnMut(u64, u128)>(
    g: &Graph,
    index: &EdgeIndex,
    allowed: u64,
    verts: u64,
    tree: u128,
    mut cand: u128,
    visit: &mut F,
) {
    while cand != 0 {
        let e = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let (a, b) = index.ends[e];
        let u = if verts >> a & 1 == 1 { b } else { a };
        let next_verts = verts | 1 << u;
        let next_tree = tree | 1 << e;
        visit(next_verts, next_tree);
        let closing = index.edges_to(g, u, verts);
        let opening = index.edges_to(g, u, allowed & !next_verts);
        grow(
            g,
            index,
            allowed,
            next_verts,
            next_tree,
            cand & !closing | opening,
            visit,
        );
    }
}

/// Calls `visit(vertex_mask, edges)` once per subtree, including single vertices.
pub fn for_each_subtree<F: FnMut(u64, &[Edge])>(g: &Graph, mut visit: F) -> Result<()> {
    check(g)?;
    let index = EdgeIndex::new(g);
    walk_subtrees(g, &index, |verts, tree| visit(verts, &index.decode(tree)));
    Ok(())
}

/// Subtree statistics by listing every subtree.
pub fn subtree_stats_bruteforce(g: &Graph) -> Result<SubtreeStats> {
    check(g)?;
    let index = EdgeIndex::new(g);
    let mut count = 0u128;
    let mut total = 0u128;
    walk_subtrees(g, &index, |verts, _| {
        count += 1;
        total += u128::from(verts.count_ones());
    });
    Ok(SubtreeStats::new(BigUint::from(count), BigUint::from(total)))
}
