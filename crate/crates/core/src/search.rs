//! Scans for edge additions that lower the mean subtree order, and an exhaustive
//! check of the lower bound `mu(T) >= (n + 2) / 3` over labelled trees.

use std::cmp::Ordering;
use std::io::BufRead;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::census::{
    subtree_stats_bruteforce, subtree_stats_kirchhoff, tree_stats_raw, SubtreeStats,
    MAX_BRUTE_ORDER,
};
use crate::error::{Error, Result};
use crate::graph::{emit_graph6, parse_graph6, Edge, Graph};
use crate::prufer::for_each_labeled_tree;

/// Largest order accepted by the edge-addition scans.
pub const MAX_SCAN_ORDER: usize = 20;
/// Largest order accepted by [`jamison_sweep`].
pub const MAX_JAMISON_ORDER: usize = 9;
/// Graphs up to this order have reported instances re-checked by brute force.
pub const RECHECK_ORDER: usize = 10;

fn scan_stats(g: &Graph) -> Result<SubtreeStats> {
    if g.order() > MAX_SCAN_ORDER {
        return Err(Error::TooLarge {
            what: "edge-addition scan",
            order: g.order(),
            limit: MAX_SCAN_ORDER,
        });
    }
    subtree_stats_kirchhoff(g)
}

fn recheck(g: &Graph, claimed: &SubtreeStats) -> Result<()> {
    if g.order() <= RECHECK_ORDER.min(MAX_BRUTE_ORDER) && &subtree_stats_bruteforce(g)? != claimed {
        return Err(Error::Invariant(format!(
            "census routes disagree on {}",
            emit_graph6(g)
        )));
    }
    Ok(())
}

/// A set of added edges together with the statistics before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAddition {
    pub added: Vec<Edge>,
    pub before: SubtreeStats,
    pub after: SubtreeStats,
}

/// Every non-edge `e` of the connected graph `g` with `mu(g + e) < mu(g)`, in
/// lexicographic order.
pub fn edge_addition_scan(g: &Graph) -> Result<Vec<EdgeAddition>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let before = scan_stats(g)?;
    let mut found = Vec::new();
    for e in g.non_edges() {
        let h = g.with_edges(&[e])?;
        let after = scan_stats(&h)?;
        if after.cmp_mean(&before) == Ordering::Less {
            recheck(g, &before)?;
            recheck(&h, &after)?;
            found.push(EdgeAddition {
                added: vec![e],
                before: before.clone(),
                after,
            });
        }
    }
    Ok(found)
}

/// One decreasing addition found in a corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanInstance {
    /// 1-based line number in the input.
    pub line: usize,
    pub graph6: String,
    pub order: usize,
    pub addition: EdgeAddition,
}

/// An input line that was not scanned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub source: String,
    pub graphs_scanned: usize,
    /// Sorted by graph order, then line, then added edges.
    pub instances: Vec<ScanInstance>,
    pub warnings: Vec<ScanWarning>,
}

impl ScanReport {
    /// Smallest order of a graph with a decreasing single-edge addition.
    pub fn min_order(&self) -> Option<usize> {
        self.instances.iter().map(|i| i.order).min()
    }

    /// Number of distinct graphs with at least one instance.
    pub fn graphs_with_instances(&self) -> usize {
        let mut lines: Vec<usize> = self.instances.iter().map(|i| i.line).collect();
        lines.dedup();
        lines.len()
    }
}

/// Runs [`edge_addition_scan`] over newline-separated graph6 input. Blank lines are
/// ignored; unreadable, oversized or disconnected entries become warnings.
pub fn corpus_scan<R: BufRead>(source: &str, input: R, max_order: usize) -> Result<ScanReport> {
    if max_order > MAX_BRUTE_ORDER {
        return Err(Error::TooLarge {
            what: "corpus scan",
            order: max_order,
            limit: MAX_BRUTE_ORDER,
        });
    }
    let mut report = ScanReport {
        source: source.to_string(),
        ..ScanReport::default()
    };
    let mut graphs = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let warn = |message: String| ScanWarning {
            line: line_no,
            message,
        };
        let text = match line {
            Ok(t) => t,
            Err(e) => {
                report.warnings.push(warn(format!("read error: {e}")));
                continue;
            }
        };
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        match parse_graph6(text) {
            Err(e) => report.warnings.push(warn(e.to_string())),
            Ok(g) if g.order() > max_order => report.warnings.push(warn(format!(
                "order {} exceeds the limit {max_order}",
                g.order()
            ))),
            Ok(g) if !g.is_connected() => {
                report.warnings.push(warn(Error::Disconnected.to_string()))
            }
            Ok(g) => graphs.push((line_no, text.to_string(), g)),
        }
    }
    report.graphs_scanned = graphs.len();
    let results: Vec<Result<Vec<ScanInstance>>> = graphs
        .par_iter()
        .map(|(line, text, g)| {
            Ok(edge_addition_scan(g)?
                .into_iter()
                .map(|addition| ScanInstance {
                    line: *line,
                    graph6: text.clone(),
                    order: g.order(),
                    addition,
                })
                .collect())
        })
        .collect();
    for r in results {
        report.instances.extend(r?);
    }
    report
        .instances
        .sort_by(|x, y| (x.order, x.line, &x.addition.added).cmp(&(y.order, y.line, &y.addition.added)));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KEdgeOutcome {
    /// Every candidate set was checked.
    Exhausted,
    /// Stopped at the first witness as requested.
    StoppedAtWitness,
    /// The budget ran out before all candidates were checked.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KEdgeScan {
    pub k: usize,
    pub candidates: BigUint,
    pub checked: u64,
    pub witnesses: Vec<EdgeAddition>,
    pub outcome: KEdgeOutcome,
}

/// Checks `k`-subsets of the non-edges of `g` in lexicographic order, at most
/// `budget` of them, collecting those that lower the mean.
pub fn k_edge_scan(g: &Graph, k: usize, budget: u64, first_only: bool) -> Result<KEdgeScan> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let pool = g.non_edges();
    let candidates = binomial(BigUint::from(pool.len()), BigUint::from(k));
    let mut scan = KEdgeScan {
        k,
        candidates,
        checked: 0,
        witnesses: Vec::new(),
        outcome: KEdgeOutcome::Exhausted,
    };
    if k == 0 || k > pool.len() {
        return Ok(scan);
    }
    let before = scan_stats(g)?;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        if scan.checked == budget {
            scan.outcome = KEdgeOutcome::BudgetExhausted;
            return Ok(scan);
        }
        let added: Vec<Edge> = pick.iter().map(|&i| pool[i]).collect();
        let after = scan_stats(&g.with_edges(&added)?)?;
        scan.checked += 1;
        if after.cmp_mean(&before) == Ordering::Less {
            scan.witnesses.push(EdgeAddition {
                added,
                before: before.clone(),
                after,
            });
            if first_only {
                scan.outcome = KEdgeOutcome::StoppedAtWitness;
                return Ok(scan);
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(scan);
            }
            i -= 1;
            if pick[i] < pool.len() - k + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Sweep results for one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JamisonRow {
    pub n: usize,
    pub trees: u64,
    /// Trees with `mu(T) < (n + 2) / 3`.
    pub violations: u64,
    /// Trees with `mu(T) = (n + 2) / 3`.
    pub equalities: u64,
    /// Equality cases that are not paths, plus paths without equality.
    pub misplaced_equalities: u64,
    pub paths: u64,
}

impl JamisonRow {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.misplaced_equalities == 0 && self.equalities == self.paths
    }
}

/// Checks the bound on every labelled tree of order `1..=n_max`.
pub fn jamison_sweep(n_max: usize) -> Result<Vec<JamisonRow>> {
    if n_max == 0 || n_max > MAX_JAMISON_ORDER {
        return Err(Error::InvalidParameters(format!(
            "the sweep covers orders 1..={MAX_JAMISON_ORDER}, got {n_max}"
        )));
    }
    (1..=n_max)
        .map(|n| {
            let mut row = JamisonRow {
                n,
                trees: 0,
                violations: 0,
                equalities: 0,
                misplaced_equalities: 0,
                paths: 0,
            };
            let bound = n as u128 + 2;
            for_each_labeled_tree(n, |adj| {
                let (count, total) = tree_stats_raw(adj);
                let is_path = adj.iter().all(|a| a.count_ones() <= 2);
                row.trees += 1;
                row.paths += u64::from(is_path);
                match (3 * total).cmp(&(bound * count)) {
                    Ordering::Less => row.violations += 1,
                    Ordering::Equal => {
                        row.equalities += 1;
                        row.misplaced_equalities += u64::from(!is_path);
                    }
                    Ordering::Greater => row.misplaced_equalities += u64::from(is_path),
                }
            })?;
            Ok(row)
        })
        .collect()
}

/// Number of labelled trees on `n` vertices, `n^(n-2)`.
pub fn labeled_tree_count(n: usize) -> u64 {
    if n <= 1 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    }
}

/// `checked` as a fraction of `candidates`, for progress output.
pub fn coverage(scan: &KEdgeScan) -> f64 {
    let total = scan.candidates.to_f64().unwrap_or(f64::INFINITY);
    if total == 0.0 {
        1.0
    } else {
        scan.checked as f64 / total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn closing_a_path_is_not_a_decrease() {
        assert!(edge_addition_scan(&path(3).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_has_nothing_to_add() {
        let k5 = complete(5).unwrap();
        assert!(edge_addition_scan(&k5).unwrap().is_empty());
        let scan = k_edge_scan(&k5, 1, 100, false).unwrap();
        assert_eq!(scan.checked, 0);
        assert_eq!(scan.outcome, KEdgeOutcome::Exhausted);
    }

    #[test]
    fn k_zero_and_budget() {
        let p5 = path(5).unwrap();
        let scan = k_edge_scan(&p5, 0, 10, false).unwrap();
        assert!(scan.witnesses.is_empty());
        let scan = k_edge_scan(&p5, 2, 3, false).unwrap();
        assert_eq!(scan.checked, 3);
        assert_eq!(scan.outcome, KEdgeOutcome::BudgetExhausted);
        let scan = k_edge_scan(&p5, 2, 1000, false).unwrap();
        assert_eq!(scan.checked, 15);
        assert_eq!(scan.outcome, KEdgeOutcome::Exhausted);
    }

    #[test]
    fn disconnected_input() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(edge_addition_scan(&g), Err(Error::Disconnected));
    }

    #[test]
    fn corpus_errors_are_logged() {
        let input = "A_\n\nD?{\nBw\n!!\nC?\n";
        let report = corpus_scan("inline", input.as_bytes(), 10).unwrap();
        assert_eq!(report.graphs_scanned, 3);
        let lines: Vec<usize> = report.warnings.iter().map(|w| w.line).collect();
        assert_eq!(lines, vec![5, 6]);
        assert!(report.instances.is_empty());
        let empty = corpus_scan("empty", "".as_bytes(), 10).unwrap();
        assert_eq!(empty, ScanReport {
            source: "empty".into(),
            ..ScanReport::default()
        });
    }

    #[test]
    fn small_sweep() {
        let rows = jamison_sweep(5).unwrap();
        assert!(rows.iter().all(JamisonRow::passed));
        assert_eq!(rows[2].trees, 3);
        assert_eq!(rows[2].equalities, 3);
        assert_eq!(rows[3].trees, 16);
        assert_eq!(rows[3].paths, 12);
        assert!(jamison_sweep(10).is_err());
    }
}
