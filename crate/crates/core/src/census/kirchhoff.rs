//! Spanning-tree counts from Laplacian cofactors, and subtree statistics assembled
//! from them over all connected vertex sets.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use super::{for_each_connected_set, SubtreeStats};
use crate::error::{Error, Result};
use crate::graph::{bits, Edge, Graph};

/// Largest order accepted by [`spanning_tree_count`].
pub const MAX_SPANNING_ORDER: usize = 40;
/// Largest order accepted by [`subtree_stats_kirchhoff`].
pub const MAX_KIRCHHOFF_ORDER: usize = 22;

/// Determinant by Bareiss elimination. Runs in `i128` and restarts over big
/// integers if an intermediate product overflows.
pub(crate) fn determinant(matrix: &[Vec<i128>]) -> BigInt {
    match bareiss_i128(matrix.to_vec()) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(
            matrix
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let pivot = (k + 1..n).find(|&i| m[i][k] != 0)?;
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(pivot) => {
                    m.swap(k, pivot);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Reduced Laplacian of `g[set]` (last vertex of the set deleted) with edge weights
/// given by `weight(u, v)`.
fn reduced_laplacian<W: Fn(usize, usize) -> i128>(g: &Graph, set: u64, weight: W) -> Vec<Vec<i128>> {
    let members: Vec<usize> = bits(set).collect();
    let n = members.len() - 1;
    let mut m = vec![vec![0i128; n]; n];
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                let w = weight(u, v);
                if i < n {
                    m[i][i] += w;
                }
                if j < n {
                    m[j][j] += w;
                }
                if i < n && j < n {
                    m[i][j] -= w;
                    m[j][i] -= w;
                }
            }
        }
    }
    m
}

fn edges_within(g: &Graph, set: u64) -> usize {
    bits(set)
        .map(|v| (g.neighbors(v) & set).count_ones() as usize)
        .sum::<usize>()
        / 2
}

/// Spanning trees of `g[set]`; `set` must be non-empty and induce a connected graph.
pub(crate) fn trees_in(g: &Graph, set: u64) -> BigUint {
    // a connected graph with |S| - 1 edges is itself a tree
    if edges_within(g, set) + 1 == set.count_ones() as usize {
        return BigUint::one();
    }
    to_unsigned(determinant(&reduced_laplacian(g, set, |_, _| 1)))
}

fn to_unsigned(d: BigInt) -> BigUint {
    match d.sign() {
        Sign::Minus => panic!("negative Laplacian cofactor"),
        _ => d.magnitude().clone(),
    }
}

/// Number of spanning trees of `g` (zero when `g` is disconnected or empty).
pub fn spanning_tree_count(g: &Graph) -> Result<BigUint> {
    if g.order() > MAX_SPANNING_ORDER {
        return Err(Error::TooLarge {
            what: "spanning tree count",
            order: g.order(),
            limit: MAX_SPANNING_ORDER,
        });
    }
    if !g.is_connected() {
        return Ok(BigUint::zero());
    }
    Ok(trees_in(g, g.vertices().0))
}

/// Spanning trees of `g[set]` split by how many `tracked` edges they use: entry `t`
/// counts the trees containing exactly `t` of the tracked edges lying inside `set`.
///
/// Tracked edges get weight `x` in the Laplacian; the cofactor is evaluated at
/// `x = 0, 1, .., T` and interpolated back to integer coefficients.
pub fn spanning_tree_polynomial(g: &Graph, set: u64, tracked: &[Edge]) -> Vec<BigUint> {
    let inside: Vec<Edge> = tracked
        .iter()
        .copied()
        .filter(|&(u, v)| set >> u & 1 == 1 && set >> v & 1 == 1 && g.has_edge(u, v))
        .collect();
    let t = inside.len();
    if !g.is_connected_set(set) {
        return vec![BigUint::zero(); t + 1];
    }
    if edges_within(g, set) + 1 == set.count_ones() as usize {
        let mut out = vec![BigUint::zero(); t + 1];
        out[t] = BigUint::one();
        return out;
    }
    if t == 0 {
        return vec![trees_in(g, set)];
    }
    let is_tracked = |u: usize, v: usize| inside.contains(&(u.min(v), u.max(v)));
    let values: Vec<BigInt> = (0..=t as i128)
        .map(|x| {
            let m = reduced_laplacian(g, set, |u, v| if is_tracked(u, v) { x } else { 1 });
            determinant(&m)
        })
        .collect();
    interpolate(&values).into_iter().map(to_unsigned).collect()
}

/// Coefficients of the integer polynomial taking `values[i]` at `x = i`.
fn interpolate(values: &[BigInt]) -> Vec<BigInt> {
    let t = values.len() - 1;
    // forward differences: diffs[j] = Δ^j y(0)
    let mut diffs = values.to_vec();
    for j in 1..=t {
        for i in (j..=t).rev() {
            diffs[i] = &diffs[i] - &diffs[i - 1];
        }
    }
    // p(x) = Σ_j Δ^j y(0) · x(x-1)..(x-j+1) / j!, accumulated over the common denominator t!
    let factorial = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * i);
    let t_fact = factorial(t);
    let mut poly = vec![BigInt::zero(); t + 1];
    let mut falling = vec![BigInt::one()];
    for (j, d) in diffs.iter().enumerate() {
        let scale = d * (&t_fact / factorial(j));
        for (c, f) in poly.iter_mut().zip(&falling) {
            *c += &scale * f;
        }
        // falling *= (x - j)
        let mut next = vec![BigInt::zero(); falling.len() + 1];
        for (i, f) in falling.iter().enumerate() {
            next[i + 1] += f;
            next[i] -= f * j;
        }
        falling = next;
    }
    poly.into_iter()
        .map(|c| {
            debug_assert!((&c % &t_fact).is_zero());
            c / &t_fact
        })
        .collect()
}

/// Subtree statistics as `Σ_S τ(G[S])` over connected vertex sets `S`, with each
/// spanning tree of `G[S]` contributing `|S|` to the total order.
pub fn subtree_stats_kirchhoff(g: &Graph) -> Result<SubtreeStats> {
    if g.order() > MAX_KIRCHHOFF_ORDER {
        return Err(Error::TooLarge {
            what: "Kirchhoff subtree census",
            order: g.order(),
            limit: MAX_KIRCHHOFF_ORDER,
        });
    }
    // Σ_S τ(G[S]) |S| stays below 2^128 for 22 vertices
    let mut count = 0u128;
    let mut total = 0u128;
    for_each_connected_set(g, |set| {
        let trees = trees_in(g, set).to_u128().expect("spanning tree count fits u128");
        count += trees;
        total += trees * u128::from(set.count_ones());
    });
    Ok(SubtreeStats::new(BigUint::from(count), BigUint::from(total)))
}
