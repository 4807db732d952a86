//! Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks.

mod build;
mod graph6;
mod iso;

pub use build::{
    complete, complete_bipartite, complete_split, contract, cycle, empty, equal_span_chords, gn_core, gnk_core,
    hnk_core, join, path, star, Core, FamilyParams,
};
pub use graph6::{emit_graph6, parse_graph6};
pub use iso::{is_isomorphic, MAX_ISO_ORDER};

use crate::error::{Error, Result};

/// Largest order a [`Graph`] can hold.
pub const MAX_ORDER: usize = 64;

/// An unordered vertex pair, always stored with the smaller index first.
pub type Edge = (usize, usize);

/// Normalizes a vertex pair so that the smaller index comes first.
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A set of vertex indices below 64.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn range(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the indices of the set bits of `mask`, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// A finite simple undirected graph with vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `order` vertices with no edges.
    pub fn new(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::TooLarge {
                what: "materialized graph",
                order,
                limit: MAX_ORDER,
            });
        }
        Ok(Graph {
            adj: vec![0; order],
        })
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::new(order)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Wraps symmetric, loop-free adjacency masks.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Graph {
        debug_assert!(adj.len() <= MAX_ORDER);
        debug_assert!((0..adj.len()).all(|u| adj[u] >> u & 1 == 0
            && bits(adj[u]).all(|v| v < adj.len() && adj[v] >> u & 1 == 1)));
        Graph { adj }
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let order = self.order();
        for w in [u, v] {
            if w >= order {
                return Err(Error::VertexOutOfRange { vertex: w, order });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.order())
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// A copy with the given extra edges. Existing edges are rejected.
    pub fn with_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in extra {
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameters(format!(
                    "edge ({u}, {v}) is already present"
                )));
            }
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// A copy with the given edges removed. Missing edges are rejected.
    pub fn without_edges(&self, gone: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in gone {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidParameters(format!(
                    "edge ({u}, {v}) is not present"
                )));
            }
            g.adj[u] &= !(1 << v);
            g.adj[v] &= !(1 << u);
        }
        Ok(g)
    }

    /// The subgraph induced by `set`, relabelled to `0..|set|` preserving order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let members: Vec<usize> = set.iter().filter(|&v| v < self.order()).collect();
        let mut adj = vec![0u64; members.len()];
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1 << j;
                }
            }
        }
        Graph { adj }
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// True when the subgraph induced by `set` is connected (the empty set is not).
    pub fn is_connected_set(&self, set: u64) -> bool {
        set != 0 && self.component(set.trailing_zeros() as usize, set) == set
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.is_connected_set(self.vertices().0)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.order()
    }

    /// Sorted degree sequence, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}
