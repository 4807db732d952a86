//! Constructors for the standard graphs and for the path-with-pendant-stars families.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{edge, Edge, Graph, VertexSet, MAX_ORDER};
use crate::error::{Error, Result};

fn check_order(what: &'static str, order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::TooLarge {
            what,
            order,
            limit: MAX_ORDER,
        });
    }
    Ok(())
}

/// Edgeless graph `n K_1`.
pub fn empty(n: usize) -> Result<Graph> {
    Graph::new(n)
}

/// Path `0 - 1 - ... - (q-1)`.
pub fn path(q: usize) -> Result<Graph> {
    if q == 0 {
        return Err(Error::InvalidParameters("a path needs at least one vertex".into()));
    }
    check_order("path", q)?;
    Graph::from_edges(q, (1..q).map(|i| (i - 1, i)))
}

pub fn cycle(q: usize) -> Result<Graph> {
    if q < 3 {
        return Err(Error::InvalidParameters("a cycle needs at least three vertices".into()));
    }
    let mut g = path(q)?;
    g.insert_edge(0, q - 1)?;
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph> {
    check_order("complete graph", n)?;
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Star `K_{1,s}` with centre 0 and leaves `1..=s`.
pub fn star(s: usize) -> Result<Graph> {
    check_order("star", s + 1)?;
    Graph::from_edges(s + 1, (1..=s).map(|v| (0, v)))
}

/// `g1 + g2`: disjoint union plus every edge between the two parts.
/// Vertices of `g2` are shifted by `|g1|`.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.order(), g2.order());
    check_order("join", n1 + n2)?;
    let mut g = Graph::new(n1 + n2)?;
    for (u, v) in g1.edges() {
        g.insert_edge(u, v)?;
    }
    for (u, v) in g2.edges() {
        g.insert_edge(n1 + u, n1 + v)?;
    }
    for u in 0..n1 {
        for v in 0..n2 {
            g.insert_edge(u, n1 + v)?;
        }
    }
    Ok(g)
}

fn check_sides(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("both sides need at least one vertex".into()));
    }
    check_order("complete bipartite graph", m + n)
}

/// `K_{m,n}` with side A = `0..m` and side B = `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    check_sides(m, n)?;
    join(&empty(m)?, &empty(n)?)
}

/// The complete split graph `K_m + n K_1`, labelled like [`complete_bipartite`].
pub fn complete_split(m: usize, n: usize) -> Result<Graph> {
    check_sides(m, n)?;
    join(&complete(m)?, &empty(n)?)
}

/// Identifies every vertex of `set` with its smallest member, dropping loops and
/// parallel edges. The remaining vertices keep their relative order.
pub fn contract(g: &Graph, set: VertexSet) -> Result<Graph> {
    if set.is_empty() {
        return Err(Error::InvalidParameters("cannot contract an empty vertex set".into()));
    }
    if !set.is_subset(g.vertices()) {
        let vertex = set.iter().find(|&v| v >= g.order()).unwrap_or(0);
        return Err(Error::VertexOutOfRange {
            vertex,
            order: g.order(),
        });
    }
    let rep = set.0.trailing_zeros() as usize;
    let mut index = vec![0usize; g.order()];
    let mut next = 0;
    for (v, slot) in index.iter_mut().enumerate() {
        if set.contains(v) && v != rep {
            continue;
        }
        *slot = next;
        next += 1;
    }
    for v in set.iter() {
        index[v] = index[rep];
    }
    let mut h = Graph::new(next)?;
    for (u, v) in g.edges() {
        let (a, b) = (index[u], index[v]);
        if a != b {
            h.insert_edge(a, b)?;
        }
    }
    Ok(h)
}

/// A star-free core: the path `v_1 .. v_L` (indices `0..L`) plus chords, with the two
/// hub vertices `v_1 = 0` and `w = L - 1` where the pendant stars hang.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    pub graph: Graph,
    pub hubs: [usize; 2],
}

impl Core {
    pub fn hub_set(&self) -> VertexSet {
        VertexSet::from_iter(self.hubs)
    }
}

fn validate_chords(length: usize, chords: &[Edge]) -> Result<Vec<Edge>> {
    let mut seen = Vec::with_capacity(chords.len());
    for &(a, b) in chords {
        let c = edge(a, b);
        if c.1 >= length {
            return Err(Error::InvalidChord(c, "endpoint outside the core path"));
        }
        if c.0 == c.1 {
            return Err(Error::InvalidChord(c, "loop"));
        }
        if c.1 == c.0 + 1 {
            return Err(Error::InvalidChord(c, "coincides with a path edge"));
        }
        if seen.contains(&c) {
            return Err(Error::InvalidChord(c, "repeated"));
        }
        seen.push(c);
    }
    Ok(seen)
}

fn path_core(length: usize, chords: &[Edge]) -> Result<Core> {
    if length < 2 {
        return Err(Error::InvalidParameters(format!(
            "core length {length} is below 2"
        )));
    }
    let chords = validate_chords(length, chords)?;
    let graph = path(length)?.with_edges(&chords)?;
    Ok(Core {
        graph,
        hubs: [0, length - 1],
    })
}

/// Core of `G_n`: the bare path on `length` vertices.
pub fn gn_core(length: usize) -> Result<Core> {
    path_core(length, &[])
}

/// Core of `G_{n,k}`: the path plus `v_i w` for `i = 1..=k`.
///
/// Needs `length >= k + 2`; at `length = k + 1` the last chord would be the path
/// edge `v_k w` and the graph would gain only `k - 1` edges.
pub fn gnk_core(length: usize, k: usize) -> Result<Core> {
    if k >= length {
        return Err(Error::InvalidParameters(format!(
            "k = {k} needs a core longer than {length}"
        )));
    }
    path_core(length, &gnk_chords(length, k))
}

pub(crate) fn gnk_chords(length: usize, k: usize) -> Vec<Edge> {
    (0..k).map(|i| (i, length - 1)).collect()
}

/// Core of `H_{n,k}`: the path plus arbitrary chords.
pub fn hnk_core(length: usize, chords: &[Edge]) -> Result<Core> {
    path_core(length, chords)
}

/// Symbolic description of `G_n`, `G_{n,k}` or `H_{n,k}`: a core path of length `L`
/// carrying `s` pendant leaves at each end, so that `n = L + 2s` may be huge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub core_length: usize,
    pub star_size: BigUint,
    pub chords: Vec<Edge>,
}

impl FamilyParams {
    pub fn gn(core_length: usize, star_size: impl Into<BigUint>) -> Self {
        FamilyParams {
            core_length,
            star_size: star_size.into(),
            chords: Vec::new(),
        }
    }

    /// `G_{n,k}`; `k = 0` gives `G_n`.
    pub fn gnk(core_length: usize, star_size: impl Into<BigUint>, k: usize) -> Result<Self> {
        if k >= core_length {
            return Err(Error::InvalidParameters(format!(
                "k = {k} needs a core longer than {core_length}"
            )));
        }
        Ok(FamilyParams {
            core_length,
            star_size: star_size.into(),
            chords: gnk_chords(core_length, k),
        })
    }

    pub fn hnk(core_length: usize, star_size: impl Into<BigUint>, chords: Vec<Edge>) -> Self {
        FamilyParams {
            core_length,
            star_size: star_size.into(),
            chords,
        }
    }

    /// Number of added edges.
    pub fn k(&self) -> usize {
        self.chords.len()
    }

    /// `n = L + 2s`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.core_length) + &self.star_size * 2u32
    }

    pub fn core(&self) -> Result<Core> {
        path_core(self.core_length, &self.chords)
    }

    /// The base graph `G_n` these parameters extend.
    pub fn base(&self) -> FamilyParams {
        FamilyParams::gn(self.core_length, self.star_size.clone())
    }

    /// The full graph with the leaves of `v_1` numbered `L..L+s` and those of `w`
    /// numbered `L+s..L+2s`.
    pub fn materialize(&self) -> Result<Graph> {
        let core = self.core()?;
        let s = self
            .star_size
            .to_usize()
            .filter(|s| self.core_length + 2 * s <= MAX_ORDER)
            .ok_or_else(|| Error::TooLarge {
                what: "materialized family graph",
                order: self.core_length.saturating_add(
                    self.star_size.to_usize().unwrap_or(usize::MAX / 4).saturating_mul(2),
                ),
                limit: MAX_ORDER,
            })?;
        let length = self.core_length;
        let mut g = Graph::new(length + 2 * s)?;
        for (u, v) in core.graph.edges() {
            g.insert_edge(u, v)?;
        }
        for i in 0..s {
            g.insert_edge(core.hubs[0], length + i)?;
            g.insert_edge(core.hubs[1], length + s + i)?;
        }
        Ok(g)
    }

    /// Whether `s` is zero.
    pub fn starless(&self) -> bool {
        self.star_size.is_zero()
    }
}

/// `k` chords of common span `p` laid end to end from `v_1`:
/// `(0, p), (p, 2p), ..`. Needs `p >= 2` and `k p <= length - 1`.
pub fn equal_span_chords(length: usize, k: usize, span: usize) -> Result<Vec<Edge>> {
    if span < 2 || k * span + 1 > length {
        return Err(Error::InvalidParameters(format!(
            "{k} chords of span {span} do not fit a core of length {length}"
        )));
    }
    Ok((0..k).map(|i| (i * span, (i + 1) * span)).collect())
}
