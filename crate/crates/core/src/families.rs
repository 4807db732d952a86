//! Paths with `s` pendant leaves at both ends (`G_n`), the same graphs with chords
//! added (`G_{n,k}`, `H_{n,k}`), and the subtree subfamilies that explain why the
//! chords lower the mean subtree order once `s` is large.
//!
//! Everything is computed from a marked census of the star-free core, so `s` only
//! enters through powers of two and `n = L + 2s` may be far beyond materializable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::census::{
    marked_census, ratio, subtree_stats_bruteforce, subtree_stats_kirchhoff, MarkedCensus,
    PendantStars, Rational, SubtreeStats, DEFAULT_EXPONENT_CAP_BITS, MAX_BRUTE_ORDER,
    MAX_CENSUS_ORDER, MAX_KIRCHHOFF_ORDER,
};
use crate::error::{Error, Result};
use crate::graph::{edge, gnk_core, hnk_core, path, Core, Edge, FamilyParams, Graph, VertexSet};

fn big(v: impl Into<BigUint>) -> BigUint {
    v.into()
}

fn both_hubs(core: &Core, s: &BigUint) -> PendantStars {
    PendantStars::new(core.hubs.iter().map(|&h| (h, s.clone())))
}

/// Census of a core marked at its two hubs, reusable for any star size.
#[derive(Clone, Debug)]
pub struct CoreCensus {
    core: Core,
    census: MarkedCensus,
}

impl CoreCensus {
    pub fn new(params: &FamilyParams) -> Result<Self> {
        let core = params.core()?;
        let census = marked_census(&core.graph, &core.hubs, &[])?;
        Ok(CoreCensus { core, census })
    }

    /// Statistics of the full graph with `s` leaves on each hub.
    pub fn with_stars(&self, s: &BigUint) -> Result<SubtreeStats> {
        self.census.attach_pendant_stars(&both_hubs(&self.core, s))
    }
}

/// Subtree statistics of the graph described by `params`.
pub fn family_stats(params: &FamilyParams) -> Result<SubtreeStats> {
    CoreCensus::new(params)?.with_stars(&params.star_size)
}

pub fn gn_stats(length: usize, s: impl Into<BigUint>) -> Result<SubtreeStats> {
    family_stats(&FamilyParams::gn(length, s))
}

/// `k = 0` gives `G_n`.
pub fn gnk_stats(length: usize, s: impl Into<BigUint>, k: usize) -> Result<SubtreeStats> {
    family_stats(&FamilyParams::gnk(length, s, k)?)
}

pub fn hnk_stats(length: usize, s: impl Into<BigUint>, chords: &[Edge]) -> Result<SubtreeStats> {
    family_stats(&FamilyParams::hnk(length, s, chords.to_vec()))
}

/// Statistics of the base graph `G_n` and of constructions built on it, keyed by tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyStats {
    pub params: FamilyParams,
    pub base: SubtreeStats,
    pub variants: BTreeMap<&'static str, SubtreeStats>,
}

impl FamilyStats {
    /// Tag of the graph with the chords of `params` added.
    pub const CHORDS: &'static str = "chords";

    pub fn compute(params: &FamilyParams) -> Result<Self> {
        let mut variants = BTreeMap::new();
        variants.insert(Self::CHORDS, family_stats(params)?);
        Ok(FamilyStats {
            params: params.clone(),
            base: family_stats(&params.base())?,
            variants,
        })
    }

    /// True when the added chords strictly lower the mean subtree order.
    pub fn decreases(&self) -> bool {
        self.variants
            .get(Self::CHORDS)
            .is_some_and(|c| c.cmp_mean(&self.base) == Ordering::Less)
    }
}

/// Mean subtree order of the path on `q` vertices, `(q + 2) / 3`.
pub fn mu_path(q: &BigUint) -> Result<Rational> {
    if q.is_zero() {
        return Err(Error::InvalidParameters("a path needs at least one vertex".into()));
    }
    Ok(Rational::new(BigInt::from(q.clone()) + 2, BigInt::from(3)))
}

fn exponent(s: &BigUint, factor: u64) -> Result<u64> {
    s.to_u64()
        .and_then(|e| e.checked_mul(factor))
        .filter(|&e| e < DEFAULT_EXPONENT_CAP_BITS)
        .ok_or_else(|| Error::ExponentTooLarge {
            exponent: format!("{factor}*{s}"),
            cap_bits: DEFAULT_EXPONENT_CAP_BITS,
        })
}

/// Closed form for the number of subtrees of `G_{n,1}` through the edge `v_1 w`:
/// `2^(2s) C(n - 2s, 2)`.
pub fn tn1_count_closed(n: &BigUint, s: &BigUint) -> Result<BigUint> {
    let twice = s * 2u32;
    if n < &(&twice + 2u32) {
        return Err(Error::InvalidParameters(format!(
            "n = {n} leaves a core shorter than 2 for s = {s}"
        )));
    }
    let e = exponent(s, 2)?;
    Ok((BigUint::one() << e) * binomial(n - &twice, big(2u32)))
}

/// `(core, marked vertices, tracked edges)` of `G_{n,1}` set up so that the cells with
/// one tracked edge are exactly the subtrees through `v_1 w`. At `L = 2` that edge
/// is the path edge itself.
fn tn1_setup(length: usize) -> Result<(Core, Vec<Edge>)> {
    if length == 2 {
        let core = Core {
            graph: path(2)?,
            hubs: [0, 1],
        };
        return Ok((core, vec![(0, 1)]));
    }
    Ok((gnk_core(length, 1)?, vec![(0, length - 1)]))
}

/// Subtrees of `G_{n,1}` containing the edge `v_1 w`.
pub fn tn1_stats(length: usize, s: impl Into<BigUint>) -> Result<SubtreeStats> {
    let s = s.into();
    let (core, tracked) = tn1_setup(length)?;
    let census = marked_census(&core.graph, &core.hubs, &tracked)?;
    census.extend_where(&both_hubs(&core, &s), |sig| sig.tracked == 1)
}

/// The graph induced by `{v_1, .., v_k, w}` in `G_{n,k}`: the path `v_1 .. v_k`
/// (indices `0..k`) plus every `v_i w` (with `w = k`).
pub fn h_graph(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    if k + 1 > MAX_CENSUS_ORDER {
        return Err(Error::TooLarge {
            what: "graph H",
            order: k + 1,
            limit: MAX_CENSUS_ORDER,
        });
    }
    Graph::from_edges(k + 1, (1..k).map(|i| (i - 1, i)).chain((0..k).map(|i| (i, k))))
}

fn dedup(vs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(vs.len());
    for &v in vs {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Subtrees of `H` containing `v_1`, `v_k` and `w`.
pub fn th_prime_stats(k: usize) -> Result<SubtreeStats> {
    let h = h_graph(k)?;
    let marked = dedup(&[0, k - 1, k]);
    let census = marked_census(&h, &marked, &[])?;
    let all = marked.len();
    Ok(census.select(|sig| sig.has_all_marks(all)))
}

/// Subtrees of `G_{n,k}` containing `v_1, v_k, w` but not the whole path
/// `P* = v_k .. w`, read literally. For `k = 1` the marks collapse to `{v_1, w}`.
pub(crate) fn tnk_by_census(length: usize, s: &BigUint, k: usize) -> Result<SubtreeStats> {
    let core = gnk_core(length, k)?;
    let marked = dedup(&[0, k - 1, length - 1]);
    let star_path: Vec<Edge> = (k - 1..length - 1).map(|i| (i, i + 1)).collect();
    let full = star_path.len();
    let census = marked_census(&core.graph, &marked, &star_path)?;
    let all = marked.len();
    census.extend_where(&both_hubs(&core, s), |sig| {
        sig.has_all_marks(all) && usize::from(sig.tracked) < full
    })
}

/// The family `T_{n,k}`; for `k = 1` this is the family through `v_1 w`.
pub fn tnk_stats(length: usize, s: impl Into<BigUint>, k: usize) -> Result<SubtreeStats> {
    let s = s.into();
    match k {
        0 => Err(Error::InvalidParameters("k must be positive".into())),
        1 => tn1_stats(length, s),
        _ => tnk_by_census(length, &s, k),
    }
}

/// Subtrees of `H_{n,k}` whose chord set is exactly `used`.
///
/// Such a subtree lives in the graph with the other chords deleted, and there it
/// must contain every chord of `used`.
pub fn tf_stats(
    length: usize,
    s: impl Into<BigUint>,
    chords: &[Edge],
    used: &[Edge],
) -> Result<SubtreeStats> {
    let s = s.into();
    hnk_core(length, chords)?;
    let used: Vec<Edge> = used.iter().map(|&(u, v)| edge(u, v)).collect();
    for c in &used {
        if !chords.iter().any(|&(u, v)| edge(u, v) == *c) {
            return Err(Error::InvalidChord(*c, "not one of the added chords"));
        }
    }
    let core = hnk_core(length, &used)?;
    let census = marked_census(&core.graph, &core.hubs, &used)?;
    let stars = both_hubs(&core, &s);
    if used.is_empty() {
        census.attach_pendant_stars(&stars)
    } else {
        let want = used.len();
        census.extend_where(&stars, |sig| usize::from(sig.tracked) == want)
    }
}

/// `n - |F| (p - 1) / 3`, the ceiling on the mean order of a chord-set family when
/// every chord spans `p` path edges.
pub fn tf_mean_bound(n: &BigUint, used: usize, span: usize) -> Rational {
    let n = Rational::from_integer(BigInt::from(n.clone()));
    n - Rational::new(BigInt::from(used * (span - 1)), BigInt::from(3))
}

/// Star sizes `0, 1, 2, 4, ..` up to `max`.
pub fn geometric_grid(max: u64) -> Vec<u64> {
    let mut out = vec![0];
    let mut s = 1u64;
    while s <= max {
        out.push(s);
        match s.checked_mul(2) {
            Some(next) => s = next,
            None => break,
        }
    }
    out
}

/// A point where adding the `k` chords `v_i w` to `G_n` lowers the mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecreaseWitness {
    pub core_length: usize,
    pub star_size: BigUint,
    pub k: usize,
    pub base: SubtreeStats,
    pub extended: SubtreeStats,
}

impl DecreaseWitness {
    pub fn order(&self) -> BigUint {
        BigUint::from(self.core_length) + &self.star_size * 2u32
    }

    pub fn mu_base(&self) -> Rational {
        ratio(&self.base.total_order, &self.base.count)
    }

    pub fn mu_extended(&self) -> Rational {
        ratio(&self.extended.total_order, &self.extended.count)
    }

    pub fn params(&self) -> FamilyParams {
        FamilyParams::gnk(self.core_length, self.star_size.clone(), self.k)
            .expect("witness parameters were valid when found")
    }
}

/// Every `(L, s)` with `L` in `lengths` and `s` in `star_sizes` where
/// `mu(G_{n,k}) < mu(G_n)`, ordered by `L` then `s`. Core lengths too short to
/// carry `k` genuine chords (`L < k + 2`) are skipped.
pub fn find_decrease_params(
    k: usize,
    lengths: RangeInclusive<usize>,
    star_sizes: &[u64],
) -> Result<Vec<DecreaseWitness>> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let mut sizes = star_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut found = Vec::new();
    for length in lengths {
        if length < k + 2 {
            continue;
        }
        let base = CoreCensus::new(&FamilyParams::gn(length, 0u32))?;
        let extended = CoreCensus::new(&FamilyParams::gnk(length, 0u32, k)?)?;
        for &s in &sizes {
            let s = BigUint::from(s);
            let b = base.with_stars(&s)?;
            let e = extended.with_stars(&s)?;
            if e.cmp_mean(&b) == Ordering::Less {
                found.push(DecreaseWitness {
                    core_length: length,
                    star_size: s,
                    k,
                    base: b,
                    extended: e,
                });
            }
        }
    }
    Ok(found)
}

/// How a witness was re-derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    /// Subtrees of the materialized graphs listed one by one.
    BruteForce,
    /// Matrix-Tree census of the materialized graphs.
    Kirchhoff,
    /// Hub-exact core cells from Matrix-Tree censuses of hub-deleted cores, then the
    /// pendant-star extension.
    CoreInclusionExclusion,
}

/// Core cells split by which hubs they contain, computed without the marked census:
/// `E(U) = Σ_{V ⊆ U} (-1)^{|U \ V|} A(H \ V)`, where `A(X)` is the census of the
/// core with the hub set `X` deleted.
fn hub_cells_by_deletion(core: &Core) -> Result<Vec<(u8, SubtreeStats)>> {
    let hubs = core.hubs;
    let all = core.graph.vertices();
    let avoiding = |mask: u8| -> Result<(BigInt, BigInt)> {
        let mut keep = all;
        for (i, &h) in hubs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                keep = VertexSet(keep.0 & !(1 << h));
            }
        }
        let s = subtree_stats_kirchhoff(&core.graph.induced(keep))?;
        Ok((BigInt::from(s.count), BigInt::from(s.total_order)))
    };
    let full: u8 = 0b11;
    let mut out = Vec::new();
    for present in 0..=full {
        let (mut c, mut t) = (BigInt::zero(), BigInt::zero());
        for subset in 0..=full {
            if subset & !present != 0 {
                continue;
            }
            let (ac, at) = avoiding(full & !subset)?;
            if (present & !subset).count_ones() % 2 == 0 {
                c += ac;
                t += at;
            } else {
                c -= ac;
                t -= at;
            }
        }
        let to_u = |x: BigInt| x.to_biguint().expect("inclusion-exclusion count is non-negative");
        out.push((present, SubtreeStats::new(to_u(c), to_u(t))));
    }
    Ok(out)
}

fn stats_by_deletion(params: &FamilyParams) -> Result<SubtreeStats> {
    let core = params.core()?;
    let cells = hub_cells_by_deletion(&core)?;
    let s = &params.star_size;
    let e = exponent(s, 1)?;
    let power = BigUint::one() << e;
    let half = (s * &power) >> 1u32;
    let mut acc = SubtreeStats::new(s * 2u32, s * 2u32);
    for (present, cell) in cells {
        let (product, weight) = match present.count_ones() {
            0 => (BigUint::one(), BigUint::zero()),
            1 => (power.clone(), half.clone()),
            _ => (&power * &power, &half * &power * 2u32),
        };
        acc += SubtreeStats {
            count: &cell.count * &product,
            total_order: &cell.total_order * &product + &cell.count * &weight,
        };
    }
    Ok(acc)
}

/// Recomputes both graphs of a witness by a route independent of the marked census
/// and checks the decrease. Returns the method used.
pub fn verify_witness(w: &DecreaseWitness) -> Result<Verification> {
    let params = w.params();
    let base_params = params.base();
    let materialized = params.materialize().ok();
    let (method, base, extended) = match materialized {
        Some(g) if g.order() <= MAX_BRUTE_ORDER => (
            Verification::BruteForce,
            subtree_stats_bruteforce(&base_params.materialize()?)?,
            subtree_stats_bruteforce(&g)?,
        ),
        Some(g) if g.order() <= MAX_KIRCHHOFF_ORDER => (
            Verification::Kirchhoff,
            subtree_stats_kirchhoff(&base_params.materialize()?)?,
            subtree_stats_kirchhoff(&g)?,
        ),
        _ => (
            Verification::CoreInclusionExclusion,
            stats_by_deletion(&base_params)?,
            stats_by_deletion(&params)?,
        ),
    };
    if base != w.base || extended != w.extended || extended.cmp_mean(&base) != Ordering::Less {
        return Err(Error::Invariant(format!(
            "witness L = {}, s = {}, k = {} failed {:?} re-verification",
            w.core_length, w.star_size, w.k, method
        )));
    }
    Ok(method)
}

/// One chord deletion on the way from `H_{n,k}` back to `G_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionStep {
    pub removed: Edge,
    pub mu_before: Rational,
    pub mu_after: Rational,
}

/// Searches for an order of deleting the chords of `H_{n,k}` in which the mean
/// subtree order strictly increases at every step. The first such order in
/// lexicographic order of chord positions is returned; an empty chord list yields
/// an empty trace.
pub fn stepwise_deletion_check(
    length: usize,
    s: impl Into<BigUint>,
    chords: &[Edge],
) -> Result<Option<Vec<DeletionStep>>> {
    let s = s.into();
    let k = chords.len();
    if k > 8 {
        return Err(Error::InvalidParameters(format!(
            "{k} chords is too many for an exhaustive deletion-order search"
        )));
    }
    hnk_core(length, chords)?;
    // statistics for every surviving chord subset
    let mut stats = Vec::with_capacity(1 << k);
    for mask in 0..1usize << k {
        let kept: Vec<Edge> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| chords[i]).collect();
        stats.push(hnk_stats(length, s.clone(), &kept)?);
    }
    let full = (1usize << k) - 1;
    let mut order = Vec::new();
    if !search_order(&stats, full, &mut order) {
        return Ok(None);
    }
    let mut mask = full;
    let mut trace = Vec::with_capacity(k);
    for i in order {
        let next = mask & !(1 << i);
        trace.push(DeletionStep {
            removed: edge(chords[i].0, chords[i].1),
            mu_before: stats[mask].mean()?,
            mu_after: stats[next].mean()?,
        });
        mask = next;
    }
    Ok(Some(trace))
}

fn search_order(stats: &[SubtreeStats], mask: usize, order: &mut Vec<usize>) -> bool {
    if mask == 0 {
        return true;
    }
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let next = mask & !(1 << i);
        if stats[next].cmp_mean(&stats[mask]) == Ordering::Greater {
            order.push(i);
            if search_order(stats, next, order) {
                return true;
            }
            order.pop();
        }
    }
    false
}

/// The star-size rule `s_n = ceil(2 log2 n)` together with the core-length condition
/// for adding `k` chords.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnSequence {
    pub k: usize,
}

impl SnSequence {
    pub fn new(k: usize) -> Self {
        SnSequence { k }
    }

    /// `ceil(2 log2 n)`, i.e. the least `s` with `2^s >= n^2`.
    pub fn star_size(&self, n: u64) -> u64 {
        let square = u128::from(n) * u128::from(n);
        if square <= 1 {
            0
        } else {
            u64::from(128 - (square - 1).leading_zeros())
        }
    }

    /// `2 s_n <= n - k - 1`.
    pub fn condition_one(&self, n: u64) -> bool {
        2 * self.star_size(n) + (self.k as u64) < n
    }

    /// `2^{s_n} >= n^2`.
    pub fn condition_three(&self, n: u64) -> bool {
        let s = self.star_size(n);
        s >= 128 || (1u128 << s) >= u128::from(n) * u128::from(n)
    }

    /// Least `m` with `m - 2 s_m >= k + 1`.
    pub fn minimal_n(&self) -> u64 {
        (1..).find(|&n| self.condition_one(n)).expect("the condition eventually holds")
    }

    /// Core length `n - 2 s_n`, if non-negative.
    pub fn core_length(&self, n: u64) -> Option<u64> {
        n.checked_sub(2 * self.star_size(n))
    }

    /// Spot check for `s_n / n -> 0`: the ratio never increases between the
    /// endpoints of `ns` taken in order.
    pub fn ratio_trend_decreasing(&self, ns: &[u64]) -> bool {
        ns.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            // s_b / b <= s_a / a
            u128::from(self.star_size(b)) * u128::from(a)
                <= u128::from(self.star_size(a)) * u128::from(b)
        })
    }
}

/// Densities of `G_n` and `G_{n,k}` at one `n` of a star-size sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendRow {
    pub n: u64,
    pub star_size: u64,
    pub core_length: usize,
    pub sigma_gn: Rational,
    pub sigma_gnk: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrendReport {
    pub rows: Vec<TrendRow>,
    /// `n` values left out, with the reason.
    pub skipped: Vec<(u64, String)>,
}

impl TrendReport {
    /// Index of the first row where `G_{n,k}` is less dense than `G_n`.
    pub fn first_decrease(&self) -> Option<usize> {
        self.rows.iter().position(|r| r.sigma_gnk < r.sigma_gn)
    }
}

/// Exact densities along `seq` for every `n` in `ns` whose core `n - 2 s_n` lies in
/// `k + 2 ..= 22`; other values of `n` are listed as skipped.
pub fn density_trend(seq: &SnSequence, ns: &[u64]) -> Result<TrendReport> {
    let k = seq.k;
    let mut report = TrendReport::default();
    for &n in ns {
        let s = seq.star_size(n);
        let length = match seq.core_length(n) {
            Some(l) if (k as u64 + 2..=MAX_KIRCHHOFF_ORDER as u64).contains(&l) => l as usize,
            other => {
                report.skipped.push((
                    n,
                    format!("core length {other:?} outside {}..={MAX_KIRCHHOFF_ORDER}", k + 2),
                ));
                continue;
            }
        };
        let order = BigUint::from(n);
        let gn = gn_stats(length, s)?;
        let gnk = gnk_stats(length, s, k)?;
        report.rows.push(TrendRow {
            n,
            star_size: s,
            core_length: length,
            sigma_gn: gn.density(&order)?,
            sigma_gnk: gnk.density(&order)?,
        });
    }
    Ok(report)
}
