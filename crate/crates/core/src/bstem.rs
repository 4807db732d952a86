//! Subtrees of complete split graphs `K_m + n K_1` and complete bipartite graphs
//! `K_{m,n}` grouped by their b-stems, giving exact mean subtree orders for `n` far
//! beyond what can be enumerated.
//!
//! Side A holds the `m` vertices `0..m`, side B the `n` vertices `m..m+n`. A b-stem
//! is a subtree in which every B-vertex has degree at least two.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{Pow, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::census::{spanning_tree_count, Rational, SubtreeStats, DEFAULT_EXPONENT_CAP_BITS};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite, complete_split, edge, Edge, Graph, VertexSet};
use crate::prufer::for_each_labeled_tree;

/// Largest `a + b` for which b-stems are enumerated one by one.
pub const MAX_ENUMERATED_STEM: usize = 10;
/// Largest `m` accepted by [`mu_graph`] and [`threshold_search`].
pub const MAX_STEM_SIDE: usize = 6;

/// Whether edges inside side A are present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `K_m + n K_1`: A is a clique.
    Split,
    /// `K_{m,n}`: only edges between the sides.
    Bipartite,
}

impl Variant {
    pub fn host(self, m: usize, n: usize) -> Result<Graph> {
        match self {
            Variant::Split => complete_split(m, n),
            Variant::Bipartite => complete_bipartite(m, n),
        }
    }
}

/// The two sides of a host graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub a: VertexSet,
    pub b: VertexSet,
    pub variant: Variant,
}

impl Bipartition {
    /// Checks that the sides are disjoint, cover `host`, and that its edges respect
    /// the variant.
    pub fn new(host: &Graph, a: VertexSet, b: VertexSet, variant: Variant) -> Result<Self> {
        if a.0 & b.0 != 0 || (a.0 | b.0) != host.vertices().0 {
            return Err(Error::InvalidParameters(
                "sides must be disjoint and cover the host graph".into(),
            ));
        }
        for (u, v) in host.edges() {
            let inside_b = b.contains(u) && b.contains(v);
            let inside_a = a.contains(u) && a.contains(v);
            if inside_b || (inside_a && variant == Variant::Bipartite) {
                return Err(Error::InvalidParameters(format!(
                    "edge ({u}, {v}) is not allowed in the {variant:?} variant"
                )));
            }
        }
        Ok(Bipartition { a, b, variant })
    }

    /// The standard labelling of the complete host graph.
    pub fn complete(variant: Variant, m: usize, n: usize) -> Result<(Graph, Self)> {
        let host = variant.host(m, n)?;
        let a = VertexSet::range(m);
        let b = VertexSet(host.vertices().0 & !a.0);
        Ok((host, Bipartition { a, b, variant }))
    }
}

/// A subtree given by its vertex set and edges, in host labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    pub vertices: VertexSet,
    pub edges: Vec<Edge>,
}

impl Tree {
    pub fn new(vertices: VertexSet, edges: &[Edge]) -> Self {
        let mut edges: Vec<Edge> = edges.iter().map(|&(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        Tree { vertices, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(x, y)| x == v || y == v).count()
    }
}

/// True when every B-vertex of `t` has degree at least two.
pub fn is_bstem(t: &Tree, part: &Bipartition) -> bool {
    t.vertices
        .iter()
        .filter(|&v| part.b.contains(v))
        .all(|v| t.degree(v) >= 2)
}

/// The subtree induced by the A-vertices and the B-vertices of degree at least two.
pub fn bstem_of(t: &Tree, part: &Bipartition) -> Result<Tree> {
    if t.vertices.len() == 1 && t.vertices.is_subset(part.b) {
        return Err(Error::NoBStem);
    }
    let keep: VertexSet = t
        .vertices
        .iter()
        .filter(|&v| part.a.contains(v) || t.degree(v) >= 2)
        .collect();
    let edges: Vec<Edge> = t
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
        .collect();
    Ok(Tree::new(keep, &edges))
}

/// Size data of a b-stem: `a = |A(T)|`, `b = |B(T)|`, `f` edges inside A and
/// `c = Σ_{v ∈ B(T)} (d(v) - 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BStemClass {
    pub a: usize,
    pub b: usize,
    pub f: Option<usize>,
    pub c: Option<usize>,
}

impl BStemClass {
    pub fn of(t: &Tree, part: &Bipartition) -> Result<Self> {
        if !is_bstem(t, part) {
            return Err(Error::InvalidParameters("not a b-stem".into()));
        }
        let a = t.vertices.iter().filter(|&v| part.a.contains(v)).count();
        let b = t.vertices.len() - a;
        let f = t
            .edges
            .iter()
            .filter(|&&(u, v)| part.a.contains(u) && part.a.contains(v))
            .count();
        let c = t
            .vertices
            .iter()
            .filter(|&v| part.b.contains(v))
            .map(|v| t.degree(v) - 2)
            .sum();
        Ok(BStemClass {
            a,
            b,
            f: Some(f),
            c: Some(c),
        })
    }

    pub fn order(&self) -> usize {
        self.a + self.b
    }
}

/// Calls `visit` with the adjacency masks of every b-stem spanning A = `0..a` and
/// B = `a..a+b` in the given variant.
pub fn for_each_bstem<F: FnMut(&[u64])>(
    variant: Variant,
    a: usize,
    b: usize,
    mut visit: F,
) -> Result<()> {
    if a == 0 || a + b > MAX_ENUMERATED_STEM {
        return Err(Error::InvalidParameters(format!(
            "b-stem enumeration needs a >= 1 and a + b <= {MAX_ENUMERATED_STEM}, got a = {a}, b = {b}"
        )));
    }
    let side_a = (1u64 << a) - 1;
    let side_b = ((1u64 << (a + b)) - 1) & !side_a;
    for_each_labeled_tree(a + b, |adj| {
        for (v, &nbrs) in adj.iter().enumerate() {
            let in_a = v < a;
            if !in_a && (nbrs & side_b != 0 || nbrs.count_ones() < 2) {
                return;
            }
            if in_a && variant == Variant::Bipartite && nbrs & side_a != 0 {
                return;
            }
        }
        visit(adj);
    })
}

type FCache = Mutex<HashMap<(Variant, usize, usize), BigUint>>;

fn f_cache() -> &'static FCache {
    static CACHE: OnceLock<FCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Number of b-stems spanning `a` fixed A-vertices and `b` fixed B-vertices, by
/// enumeration of labelled trees. Needs `a + b <= 10`.
pub fn f_count(variant: Variant, a: usize, b: usize) -> Result<BigUint> {
    if a == 0 {
        return Err(Error::InvalidParameters("a b-stem has at least one A-vertex".into()));
    }
    if b >= a {
        return Ok(BigUint::zero());
    }
    if let Some(hit) = f_cache().lock().expect("cache lock").get(&(variant, a, b)) {
        return Ok(hit.clone());
    }
    let mut count = 0u64;
    for_each_bstem(variant, a, b, |_| count += 1)?;
    let count = BigUint::from(count);
    f_cache()
        .lock()
        .expect("cache lock")
        .insert((variant, a, b), count.clone());
    Ok(count)
}

/// The same count by inclusion-exclusion over B-vertices forced to be leaves:
/// `f(a, b) = Σ_j (-1)^j C(b, j) a^j τ(host(a, b - j))`.
pub fn f_matrix_tree(variant: Variant, a: usize, b: usize) -> Result<BigUint> {
    if a == 0 {
        return Err(Error::InvalidParameters("a b-stem has at least one A-vertex".into()));
    }
    if b >= a {
        return Ok(BigUint::zero());
    }
    let mut acc = BigInt::zero();
    for j in 0..=b {
        let rest = b - j;
        let trees = if rest == 0 {
            spanning_tree_count(&match variant {
                Variant::Split => crate::graph::complete(a)?,
                Variant::Bipartite => crate::graph::empty(a)?,
            })?
        } else {
            spanning_tree_count(&variant.host(a, rest)?)?
        };
        let term = BigInt::from(binomial(BigUint::from(b), BigUint::from(j)))
            * BigInt::from(BigUint::from(a).pow(j as u32))
            * BigInt::from(trees);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc.to_biguint().expect("inclusion-exclusion count is non-negative"))
}

/// `f(a, b)` for every class of a side of size `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BStemTable {
    pub variant: Variant,
    pub m: usize,
    pub entries: BTreeMap<(usize, usize), BigUint>,
}

impl BStemTable {
    /// Classes with `1 <= a <= m`, `0 <= b <= a - 1`.
    pub fn new(variant: Variant, m: usize) -> Result<Self> {
        check_side(m)?;
        let mut entries = BTreeMap::new();
        for a in 1..=m {
            for b in 0..a {
                entries.insert((a, b), f_matrix_tree(variant, a, b)?);
            }
        }
        Ok(BStemTable {
            variant,
            m,
            entries,
        })
    }

    pub fn get(&self, a: usize, b: usize) -> BigUint {
        self.entries.get(&(a, b)).cloned().unwrap_or_default()
    }
}

fn check_side(m: usize) -> Result<()> {
    if m == 0 || m > MAX_STEM_SIDE {
        return Err(Error::InvalidParameters(format!(
            "side A must have 1..={MAX_STEM_SIDE} vertices, got {m}"
        )));
    }
    Ok(())
}

fn power(base: usize, exponent: u64) -> Result<BigUint> {
    let bits = (usize::BITS - base.leading_zeros()) as u64;
    if exponent.saturating_mul(bits) >= DEFAULT_EXPONENT_CAP_BITS {
        return Err(Error::ExponentTooLarge {
            exponent: format!("{base}^{exponent}"),
            cap_bits: DEFAULT_EXPONENT_CAP_BITS,
        });
    }
    Ok(BigUint::from(base).pow(exponent))
}

/// `(a + 1)^(n - b)` trees have a given b-stem with `a` A-vertices and `b` B-vertices.
pub fn extension_count(a: usize, b: usize, n: u64) -> Result<BigUint> {
    if b as u64 > n {
        return Err(Error::InvalidParameters(format!("b = {b} exceeds n = {n}")));
    }
    power(a + 1, n - b as u64)
}

fn check_class(m: usize, n: u64, a: usize, b: usize) -> Result<()> {
    if a == 0 || a > m || b >= a || b as u64 > n {
        return Err(Error::InvalidParameters(format!(
            "no class (a, b) = ({a}, {b}) for m = {m}, n = {n}"
        )));
    }
    Ok(())
}

fn class_stats(m: usize, n: u64, a: usize, b: usize, f: &BigUint) -> Result<SubtreeStats> {
    let choose = binomial(BigUint::from(m), BigUint::from(a)) * binomial(BigUint::from(n), BigUint::from(b));
    let base = &choose * f;
    if base.is_zero() {
        return Ok(SubtreeStats::zero());
    }
    let free = n - b as u64;
    if free == 0 {
        return Ok(SubtreeStats {
            total_order: &base * (a + b),
            count: base,
        });
    }
    let lower = power(a + 1, free - 1)?;
    let count = &base * &lower * (a + 1);
    // each free B-vertex joins with probability a / (a + 1)
    let weight = BigUint::from(free) * a + BigUint::from((a + b) * (a + 1));
    Ok(SubtreeStats {
        count,
        total_order: base * lower * weight,
    })
}

/// `|T(a, b)| = C(m, a) C(n, b) f(a, b) (a + 1)^(n - b)`.
pub fn family_size(variant: Variant, m: usize, n: u64, a: usize, b: usize) -> Result<BigUint> {
    check_class(m, n, a, b)?;
    let f = f_matrix_tree(variant, a, b)?;
    Ok(binomial(BigUint::from(m), BigUint::from(a))
        * binomial(BigUint::from(n), BigUint::from(b))
        * f
        * extension_count(a, b, n)?)
}

/// Mean order of the trees with a fixed b-stem: `(n - b) a / (a + 1) + a + b`.
pub fn mu_ab(n: u64, a: usize, b: usize) -> Result<Rational> {
    if a == 0 || b as u64 > n {
        return Err(Error::InvalidParameters(format!(
            "no class (a, b) = ({a}, {b}) for n = {n}"
        )));
    }
    let free = BigInt::from(n - b as u64);
    Ok(Rational::new(free * a, BigInt::from(a + 1)) + Rational::from_integer(BigInt::from(a + b)))
}

/// Subtree statistics of the host graph from its b-stem classes plus the `n`
/// one-vertex subtrees inside B.
pub fn bstem_stats_with(table: &BStemTable, n: u64) -> Result<SubtreeStats> {
    let m = table.m;
    let mut acc = SubtreeStats::new(n, n);
    for (&(a, b), f) in &table.entries {
        if b as u64 > n {
            continue;
        }
        acc += class_stats(m, n, a, b, f)?;
    }
    Ok(acc)
}

pub fn bstem_stats(variant: Variant, m: usize, n: u64) -> Result<SubtreeStats> {
    bstem_stats_with(&BStemTable::new(variant, m)?, n)
}

/// Exact mean subtree order of `K_m + n K_1` or `K_{m,n}`.
pub fn mu_graph(variant: Variant, m: usize, n: u64) -> Result<Rational> {
    bstem_stats(variant, m, n)?.mean()
}

/// One row of a threshold scan: how the split mean compares with the bipartite one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub n: u64,
    pub split: SubtreeStats,
    pub bipartite: SubtreeStats,
}

impl ThresholdRow {
    /// `mu(K_m + n K_1)` against `mu(K_{m,n})`.
    pub fn ordering(&self) -> Ordering {
        self.split.cmp_mean(&self.bipartite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub m: usize,
    pub n_max: u64,
    /// One entry per `n` in `1..=n_max`.
    pub orderings: Vec<Ordering>,
    /// Least `n` with a strictly smaller split mean.
    pub crossing: Option<ThresholdRow>,
    /// Whether the strict inequality holds at every `n` from the crossing to `n_max`.
    pub persists: bool,
}

/// Compares the two means at every `n` in `1..=n_max`. Ties never count as a
/// crossing.
pub fn threshold_search(m: usize, n_max: u64) -> Result<ThresholdReport> {
    let split = BStemTable::new(Variant::Split, m)?;
    let bipartite = BStemTable::new(Variant::Bipartite, m)?;
    let orderings = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let s = bstem_stats_with(&split, n)?;
            let b = bstem_stats_with(&bipartite, n)?;
            Ok(s.cmp_mean(&b))
        })
        .collect::<Result<Vec<Ordering>>>()?;
    let first = orderings.iter().position(|&o| o == Ordering::Less);
    let crossing = match first {
        Some(i) => {
            let n = i as u64 + 1;
            Some(ThresholdRow {
                n,
                split: bstem_stats_with(&split, n)?,
                bipartite: bstem_stats_with(&bipartite, n)?,
            })
        }
        None => None,
    };
    let persists = first.is_some_and(|i| orderings[i..].iter().all(|&o| o == Ordering::Less));
    Ok(ThresholdReport {
        m,
        n_max,
        orderings,
        crossing,
        persists,
    })
}

/// `n` as a `u64`, for callers holding arbitrary-precision sizes.
pub fn side_size(n: &BigUint) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::ExponentTooLarge {
        exponent: n.to_string(),
        cap_bits: DEFAULT_EXPONENT_CAP_BITS,
    })
}
