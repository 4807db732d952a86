use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const MAX_ISO_ORDER: usize = 12;

/// Exhaustive isomorphism test by backtracking over degree-compatible bijections.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    let n = g1.order().max(g2.order());
    if n > MAX_ISO_ORDER {
        return Err(Error::TooLarge {
            what: "isomorphism test",
            order: n,
            limit: MAX_ISO_ORDER,
        });
    }
    if g1.order() != g2.order()
        || g1.edge_count() != g2.edge_count()
        || g1.degree_sequence() != g2.degree_sequence()
    {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; n];
    Ok(extend(g1, g2, 0, &mut image, 0))
}

fn extend(g1: &Graph, g2: &Graph, v: usize, image: &mut [usize], used: u64) -> bool {
    if v == g1.order() {
        return true;
    }
    for cand in 0..g2.order() {
        if used >> cand & 1 == 1 || g1.degree(v) != g2.degree(cand) {
            continue;
        }
        let consistent = (0..v).all(|u| g1.has_edge(u, v) == g2.has_edge(image[u], cand));
        if consistent {
            image[v] = cand;
            if extend(g1, g2, v + 1, image, used | 1 << cand) {
                return true;
            }
        }
    }
    false
}
