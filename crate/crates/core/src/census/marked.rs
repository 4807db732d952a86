//! Subtree statistics partitioned by which marked vertices and how many tracked edges
//! each subtree contains, and the closed-form extension by pendant stars.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{for_each_connected_set, spanning_tree_polynomial, SubtreeStats};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

pub const MAX_CENSUS_ORDER: usize = 22;
pub const MAX_MARKED: usize = 6;
/// Default limit on the bit length of `2^s` when extending by stars of size `s`.
pub const DEFAULT_EXPONENT_CAP_BITS: u64 = 1 << 20;

/// Which marked vertices a subtree contains (bit `i` for `marked[i]`) and how many
/// tracked edges it uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub marks: u8,
    pub tracked: u8,
}

impl Signature {
    pub fn has_mark(self, i: usize) -> bool {
        self.marks >> i & 1 == 1
    }

    pub fn has_all_marks(self, marked: usize) -> bool {
        u32::from(self.marks) == (1u32 << marked) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCensus {
    marked: Vec<usize>,
    tracked: Vec<Edge>,
    cells: BTreeMap<Signature, SubtreeStats>,
}

/// Builds the census of `g` for the given marked vertices and tracked edges.
pub fn marked_census(g: &Graph, marked: &[usize], tracked: &[Edge]) -> Result<MarkedCensus> {
    if g.order() > MAX_CENSUS_ORDER {
        return Err(Error::TooLarge {
            what: "marked census",
            order: g.order(),
            limit: MAX_CENSUS_ORDER,
        });
    }
    if marked.len() > MAX_MARKED {
        return Err(Error::InvalidParameters(format!(
            "{} marked vertices exceed the limit of {MAX_MARKED}",
            marked.len()
        )));
    }
    for (i, &v) in marked.iter().enumerate() {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
        if marked[..i].contains(&v) {
            return Err(Error::InvalidParameters(format!("vertex {v} marked twice")));
        }
    }
    let mut tracked_norm: Vec<Edge> = Vec::with_capacity(tracked.len());
    for &(u, v) in tracked {
        let e = edge(u, v);
        if !g.has_edge(u, v) {
            return Err(Error::InvalidParameters(format!(
                "tracked pair {e:?} is not an edge"
            )));
        }
        if tracked_norm.contains(&e) {
            return Err(Error::InvalidParameters(format!("edge {e:?} tracked twice")));
        }
        tracked_norm.push(e);
    }

    // every cell sum is bounded by Σ_S τ(G[S]) |S| < 2^128 at 22 vertices
    let mut raw: BTreeMap<Signature, (u128, u128)> = BTreeMap::new();
    for_each_connected_set(g, |set| {
        let marks = marked
            .iter()
            .enumerate()
            .fold(0u8, |m, (i, &v)| m | ((set >> v & 1) as u8) << i);
        let order = u128::from(set.count_ones());
        for (t, trees) in spanning_tree_polynomial(g, set, &tracked_norm).into_iter().enumerate() {
            let trees = trees.to_u128().expect("spanning tree count fits u128");
            if trees == 0 {
                continue;
            }
            let cell = raw
                .entry(Signature {
                    marks,
                    tracked: t as u8,
                })
                .or_default();
            cell.0 += trees;
            cell.1 += trees * order;
        }
    });
    let cells = raw
        .into_iter()
        .map(|(sig, (c, t))| (sig, SubtreeStats::new(BigUint::from(c), BigUint::from(t))))
        .collect();
    Ok(MarkedCensus {
        marked: marked.to_vec(),
        tracked: tracked_norm,
        cells,
    })
}

impl MarkedCensus {
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn tracked(&self) -> &[Edge] {
        &self.tracked
    }

    /// Non-empty cells in signature order.
    pub fn cells(&self) -> impl Iterator<Item = (Signature, &SubtreeStats)> {
        self.cells.iter().map(|(s, c)| (*s, c))
    }

    pub fn cell(&self, sig: Signature) -> SubtreeStats {
        self.cells.get(&sig).cloned().unwrap_or_default()
    }

    /// Signature bit for a marked vertex.
    pub fn mark_bit(&self, vertex: usize) -> Option<u8> {
        self.marked.iter().position(|&v| v == vertex).map(|i| 1 << i)
    }

    pub fn total(&self) -> SubtreeStats {
        self.select(|_| true)
    }

    /// Sum of the cells whose signature satisfies `keep`.
    pub fn select<P: Fn(Signature) -> bool>(&self, keep: P) -> SubtreeStats {
        let mut acc = SubtreeStats::zero();
        for (sig, cell) in self.cells() {
            if keep(sig) {
                acc += cell;
            }
        }
        acc
    }

    /// Statistics of the whole graph after hanging the pendant stars on their hubs:
    /// every cell is extended, and each leaf also counts as a one-vertex subtree.
    pub fn attach_pendant_stars(&self, stars: &PendantStars) -> Result<SubtreeStats> {
        let mut stats = self.extend_where(stars, |_| true)?;
        for (_, s) in &stars.stars {
            stats += SubtreeStats::new(s.clone(), s.clone());
        }
        Ok(stats)
    }

    /// Extends only the cells selected by `keep`. A core subtree that contains the
    /// hubs `U` extends to `Π_{u∈U} 2^{s_u}` subtrees; the leaves add `s_u / 2`
    /// vertices on average at each hub. Leaf-only subtrees are not included.
    pub fn extend_where<P: Fn(Signature) -> bool>(
        &self,
        stars: &PendantStars,
        keep: P,
    ) -> Result<SubtreeStats> {
        let hubs = stars.resolve(self)?;
        let mut factors: BTreeMap<u8, (BigUint, BigUint)> = BTreeMap::new();
        let mut acc = SubtreeStats::zero();
        for (sig, cell) in self.cells() {
            if !keep(sig) {
                continue;
            }
            let present: u8 = hubs
                .iter()
                .enumerate()
                .filter(|(_, h)| sig.marks & h.bit != 0)
                .fold(0, |m, (i, _)| m | 1 << i);
            let (product, weight) = factors
                .entry(present)
                .or_insert_with(|| hub_factors(&hubs, present));
            acc += SubtreeStats {
                count: &cell.count * &*product,
                total_order: &cell.total_order * &*product + &cell.count * &*weight,
            };
        }
        Ok(acc)
    }
}

struct ResolvedHub {
    bit: u8,
    power: BigUint,
    /// `s 2^(s-1)`: total leaf count over all `2^s` leaf subsets.
    half_weight: BigUint,
}

/// `Π 2^{s_u}` and `Σ_u s_u 2^{s_u - 1} Π_{u' ≠ u} 2^{s_u'}` over the hubs in `present`.
fn hub_factors(hubs: &[ResolvedHub], present: u8) -> (BigUint, BigUint) {
    let mut product = BigUint::one();
    let mut weight = BigUint::default();
    for (i, h) in hubs.iter().enumerate() {
        if present >> i & 1 == 1 {
            weight = weight * &h.power + &product * &h.half_weight;
            product *= &h.power;
        }
    }
    (product, weight)
}

/// Leaf counts for pendant stars hung on marked hub vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantStars {
    stars: Vec<(usize, BigUint)>,
    cap_bits: u64,
}

impl PendantStars {
    pub fn new<I: IntoIterator<Item = (usize, BigUint)>>(stars: I) -> Self {
        PendantStars {
            stars: stars.into_iter().collect(),
            cap_bits: DEFAULT_EXPONENT_CAP_BITS,
        }
    }

    /// Replaces the bit-length cap on `2^s`.
    pub fn with_cap(mut self, cap_bits: u64) -> Self {
        self.cap_bits = cap_bits;
        self
    }

    pub fn stars(&self) -> &[(usize, BigUint)] {
        &self.stars
    }

    fn resolve(&self, census: &MarkedCensus) -> Result<Vec<ResolvedHub>> {
        let mut out: Vec<ResolvedHub> = Vec::with_capacity(self.stars.len());
        for (i, (hub, s)) in self.stars.iter().enumerate() {
            let bit = census.mark_bit(*hub).ok_or_else(|| {
                Error::InvalidParameters(format!("hub {hub} is not a marked vertex"))
            })?;
            if self.stars[..i].iter().any(|(h, _)| h == hub) {
                return Err(Error::InvalidParameters(format!("hub {hub} listed twice")));
            }
            let exponent = s
                .to_u64()
                .filter(|&e| e < self.cap_bits)
                .ok_or_else(|| Error::ExponentTooLarge {
                    exponent: s.to_string(),
                    cap_bits: self.cap_bits,
                })?;
            let power = BigUint::one() << exponent;
            let half_weight = (s * &power) >> 1u32;
            out.push(ResolvedHub {
                bit,
                power,
                half_weight,
            });
        }
        Ok(out)
    }
}
