//! Labelled trees from Prüfer sequences.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Largest order accepted by [`for_each_labeled_tree`].
pub const MAX_PRUFER_ORDER: usize = 12;

/// Decodes a Prüfer sequence over `0..seq.len() + 2` into the edges of its tree.
pub fn decode(seq: &[usize]) -> Result<Vec<Edge>> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, order: n });
    }
    let mut adj = vec![0u64; n];
    decode_into(seq, &mut adj);
    Ok(Graph::from_adjacency(adj).edges())
}

/// Fills `adj` (length `seq.len() + 2`, at most 64) with the tree of `seq`.
fn decode_into(seq: &[usize], adj: &mut [u64]) {
    let n = adj.len();
    adj.fill(0);
    let mut degree = [1u8; 64];
    for &v in seq {
        degree[v] += 1;
    }
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always remains");
        adj[leaf] |= 1 << v;
        adj[v] |= 1 << leaf;
        degree[leaf] = 0;
        degree[v] -= 1;
    }
    let mut rest = (0..n).filter(|&u| degree[u] == 1);
    if let (Some(a), Some(b)) = (rest.next(), rest.next()) {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
}

/// Calls `visit` with the adjacency masks of each of the `n^(n-2)` labelled trees on
/// `0..n`, in lexicographic order of their Prüfer sequences.
pub fn for_each_labeled_tree<F: FnMut(&[u64])>(n: usize, mut visit: F) -> Result<()> {
    if n == 0 || n > MAX_PRUFER_ORDER {
        return Err(Error::InvalidParameters(format!(
            "labelled tree enumeration needs 1 <= n <= {MAX_PRUFER_ORDER}, got {n}"
        )));
    }
    if n == 1 {
        visit(&[0]);
        return Ok(());
    }
    let mut seq = vec![0usize; n - 2];
    let mut adj = vec![0u64; n];
    loop {
        decode_into(&seq, &mut adj);
        visit(&adj);
        // odometer increment, last position fastest
        let mut i = seq.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}
