//! End-to-end acceptance checks. Each test prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1` to see them.

mod common;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::rngs::StdRng;
use rand::SeedableRng;

use subtree_core::bstem::{
    bstem_of, bstem_stats, f_count, family_size, is_bstem, mu_graph, threshold_search,
    BStemClass, Bipartition, Tree, Variant,
};
use subtree_core::census::{
    for_each_subtree, subtree_stats_bruteforce, subtree_stats_kirchhoff, tree_subtree_stats,
};
use subtree_core::families::{
    density_trend, find_decrease_params, geometric_grid, gn_stats, hnk_stats, stepwise_deletion_check,
    tf_mean_bound, tf_stats, th_prime_stats, tn1_stats, tnk_stats, verify_witness, SnSequence,
    Verification,
};
use subtree_core::graph::{equal_span_chords, path, Edge, VertexSet};
use subtree_core::prufer::for_each_labeled_tree;
use subtree_core::search::jamison_sweep;
use subtree_core::{Rational, SubtreeStats};

use common::{graph_from_masks, random_connected_graph};

fn verdict(n: u32, what: &str, failures: &[String], detail: String) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {status}: {what} [{detail}]");
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {}", failures[0]);
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

const STAR_SIZES: [u32; 5] = [0, 1, 2, 10, 1000];

#[test]
fn criterion_01_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut trees = 0u64;
    for n in 1..=9 {
        for_each_labeled_tree(n, |adj| {
            trees += 1;
            let g = graph_from_masks(adj);
            let brute = subtree_stats_bruteforce(&g).unwrap();
            let kirchhoff = subtree_stats_kirchhoff(&g).unwrap();
            let dp = tree_subtree_stats(&g).unwrap();
            if brute != kirchhoff || brute != dp {
                failures.push(format!("tree {:?}", g.edges()));
            }
        })
        .unwrap();
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let graphs = 300;
    for i in 0..graphs {
        let n = 1 + i % 9;
        let g = random_connected_graph(&mut rng, n);
        if subtree_stats_bruteforce(&g).unwrap() != subtree_stats_kirchhoff(&g).unwrap() {
            failures.push(format!("graph {:?}", g.edges()));
        }
    }
    verdict(
        1,
        "brute force, Kirchhoff and tree DP agree",
        &failures,
        format!("{trees} labelled trees, {graphs} random connected graphs"),
    );
}

#[test]
fn criterion_02_path_formula() {
    let mut failures = Vec::new();
    for n in 1..=50 {
        let mean = tree_subtree_stats(&path(n).unwrap()).unwrap().mean().unwrap();
        if mean != q(n as i64 + 2, 3) {
            failures.push(format!("q = {n}: {mean}"));
        }
    }
    verdict(2, "mu(P_q) = (q + 2) / 3", &failures, "q = 1..50".into());
}

#[test]
fn criterion_03_jamison_bound() {
    let mut failures = Vec::new();
    let rows = jamison_sweep(8).unwrap();
    let mut total = 0;
    for r in &rows {
        total += r.trees;
        // labelled paths: n! / 2 for n >= 2
        let paths: u64 = if r.n == 1 { 1 } else { (1..=r.n as u64).product::<u64>() / 2 };
        if r.trees != (r.n as u64).pow(r.n.saturating_sub(2) as u32)
            || r.violations != 0
            || r.misplaced_equalities != 0
            || r.equalities != paths
        {
            failures.push(format!("{r:?}"));
        }
    }
    verdict(
        3,
        "mu(T) >= (n + 2) / 3 with equality exactly on paths",
        &failures,
        format!("n <= 8, {total} labelled trees"),
    );
}

#[test]
fn criterion_04_closed_form_count() {
    let mut failures = Vec::new();
    for length in 2..=14usize {
        for s in STAR_SIZES {
            let got = tn1_stats(length, s).unwrap().count;
            let expected = (BigUint::one() << (2 * s)) * BigUint::from(length * (length - 1) / 2);
            if got != expected {
                failures.push(format!("L = {length}, s = {s}"));
            }
        }
    }
    verdict(
        4,
        "|T_n1| = 2^(2s) C(n - 2s, 2)",
        &failures,
        "L = 2..14, s in {0, 1, 2, 10, 1000}".into(),
    );
}

#[test]
fn criterion_05_decomposition_identities() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=4usize {
        let h = th_prime_stats(k).unwrap();
        for length in k + 2..=14 {
            for s in STAR_SIZES {
                cases += 1;
                let whole = tnk_stats(length, s, k).unwrap();
                let reduced = tn1_stats(length - k + 1, s).unwrap();
                if whole.count != &h.count * &reduced.count {
                    failures.push(format!("count: k = {k}, L = {length}, s = {s}"));
                }
                let identity = reduced.mean().unwrap() + h.mean().unwrap() - q(2, 1);
                if whole.mean().unwrap() != identity {
                    failures.push(format!("mean: k = {k}, L = {length}, s = {s}"));
                }
            }
        }
    }
    verdict(
        5,
        "|T_nk| = |T'_H| |T_n1,1| and mu(T_nk) = mu(T_n1,1) + mu(T'_H) - 2",
        &failures,
        format!("{cases} cases, k <= 4, L <= 14"),
    );
}

#[test]
fn criterion_06_decrease_witnesses() {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for k in 1..=3usize {
        let found = find_decrease_params(k, 1..=22, &geometric_grid(1 << 12)).unwrap();
        let Some(first) = found.first() else {
            failures.push(format!("k = {k}: no witness with L <= 22, s <= 4096"));
            continue;
        };
        let last = found.last().unwrap();
        let mut methods = Vec::new();
        for w in [first, last] {
            match verify_witness(w) {
                Ok(m) => methods.push(m),
                Err(e) => failures.push(format!("k = {k}: {e}")),
            }
        }
        // the chorded graph really is G_n plus k edges: compare against a direct census
        if first.order() <= BigUint::from(22u32) {
            let g = first.params().materialize().unwrap();
            let direct = subtree_stats_kirchhoff(&g).unwrap();
            if direct != first.extended {
                failures.push(format!("k = {k}: direct census differs"));
            }
        }
        if !methods.contains(&Verification::CoreInclusionExclusion)
            && last.order() > BigUint::from(22u32)
        {
            failures.push(format!("k = {k}: large witness not checked independently"));
        }
        details.push(format!(
            "k={k}: {} witnesses, first L={} s={} ({:?})",
            found.len(),
            first.core_length,
            first.star_size,
            methods
        ));
    }
    verdict(
        6,
        "mu(G_nk) < mu(G_n) for some L <= 22",
        &failures,
        details.join("; "),
    );
}

/// First `(L, span, s)` in a small grid where two equal-span chords lower the mean.
fn hnk_witness() -> Option<(usize, usize, u64, Vec<Edge>)> {
    for length in 5..=14usize {
        for span in 2..length {
            let Ok(chords) = equal_span_chords(length, 2, span) else {
                continue;
            };
            for s in geometric_grid(1 << 10) {
                let base = gn_stats(length, s).unwrap();
                let with = hnk_stats(length, s, &chords).unwrap();
                if with.cmp_mean(&base) == Ordering::Less {
                    return Some((length, span, s, chords));
                }
            }
        }
    }
    None
}

#[test]
fn criterion_07_equal_span_construction() {
    let mut failures = Vec::new();
    let Some((length, span, s, chords)) = hnk_witness() else {
        verdict(7, "H_n2 witness", &["no H_n2 witness in L <= 14".into()], String::new());
        return;
    };
    let n = BigUint::from(length as u64 + 2 * s);
    let mut total = SubtreeStats::zero();
    for used in [vec![], vec![chords[0]], vec![chords[1]], chords.clone()] {
        let family = tf_stats(length, s, &chords, &used).unwrap();
        let bound = tf_mean_bound(&n, used.len(), span);
        if family.cmp_mean_with(&bound) == Ordering::Greater {
            failures.push(format!("bound fails for F = {used:?}"));
        }
        total += family;
    }
    if total != hnk_stats(length, s, &chords).unwrap() {
        failures.push("chord-set families do not partition H".into());
    }
    match stepwise_deletion_check(length, s, &chords).unwrap() {
        Some(trace) => {
            if trace.len() != 2 || trace.iter().any(|st| st.mu_after <= st.mu_before) {
                failures.push(format!("bad trace {trace:?}"));
            }
        }
        None => failures.push("no monotone deletion order".into()),
    }
    verdict(
        7,
        "H_n2 lowers the mean, mu(T_F) bound, monotone deletions",
        &failures,
        format!("L={length} p={span} s={s} chords={chords:?}"),
    );
}

#[test]
fn criterion_08_bstem_pipeline() {
    let mut failures = Vec::new();
    for variant in [Variant::Split, Variant::Bipartite] {
        for m in 1..=3usize {
            for n in 1..=6u64 {
                let host = variant.host(m, n as usize).unwrap();
                let census = subtree_stats_bruteforce(&host).unwrap();
                if mu_graph(variant, m, n).unwrap() != census.mean().unwrap() {
                    failures.push(format!("mean {variant:?} m = {m} n = {n}"));
                }
                let mut sizes = BigUint::from(n);
                for a in 1..=m {
                    for b in 0..a.min(n as usize + 1) {
                        sizes += family_size(variant, m, n, a, b).unwrap();
                    }
                }
                if sizes != census.count || bstem_stats(variant, m, n).unwrap() != census {
                    failures.push(format!("partition {variant:?} m = {m} n = {n}"));
                }
            }
        }
    }
    verdict(
        8,
        "b-stem assembly equals the census; classes partition the subtrees",
        &failures,
        "m <= 3, n <= 6, both variants".into(),
    );
}

#[test]
fn criterion_09_threshold() {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    let n_max = 10_000;
    if threshold_search(1, n_max).unwrap().crossing.is_some() {
        failures.push("m = 1 reported a crossing".into());
    }
    for m in 2..=4usize {
        let report = threshold_search(m, n_max).unwrap();
        let Some(c) = &report.crossing else {
            failures.push(format!("m = {m}: no crossing up to {n_max}"));
            continue;
        };
        if !report.persists {
            failures.push(format!("m = {m}: inequality does not persist"));
        }
        // below the crossing and at it, against the census of the materialized graphs
        for n in 1..=c.n {
            let split = subtree_stats_kirchhoff(&Variant::Split.host(m, n as usize).unwrap()).unwrap();
            let bip = subtree_stats_kirchhoff(&Variant::Bipartite.host(m, n as usize).unwrap()).unwrap();
            let less = split.cmp_mean(&bip) == Ordering::Less;
            if less != (n == c.n) {
                failures.push(format!("m = {m}, n = {n}: census disagrees"));
            }
        }
        details.push(format!("m={m}: n*={}", c.n));
    }
    verdict(
        9,
        "mu(K_m + nK_1) < mu(K_m,n) from a minimal n* on",
        &failures,
        format!("{}; m=1 no crossing; n <= {n_max}", details.join(", ")),
    );
}

#[test]
fn criterion_10_bstem_structure() {
    let mut failures = Vec::new();
    let mut fibers_checked = 0;
    for variant in [Variant::Split, Variant::Bipartite] {
        for m in 1..=3usize {
            for n in 1..=5usize {
                let (host, part) = Bipartition::complete(variant, m, n).unwrap();
                let mut fibers: HashMap<Tree, u64> = HashMap::new();
                for_each_subtree(&host, |verts, edges| {
                    let t = Tree::new(VertexSet(verts), edges);
                    if let Ok(stem) = bstem_of(&t, &part) {
                        *fibers.entry(stem).or_default() += 1;
                    }
                })
                .unwrap();
                for (stem, size) in &fibers {
                    if !is_bstem(stem, &part) {
                        failures.push(format!("{stem:?} is not a b-stem"));
                        continue;
                    }
                    let class = BStemClass::of(stem, &part).unwrap();
                    let (f, c) = (class.f.unwrap(), class.c.unwrap());
                    if class.b + 1 + f + c != class.a || class.a > m {
                        failures.push(format!("vertex count identity fails for {class:?}"));
                    }
                    if variant == Variant::Bipartite && f != 0 {
                        failures.push(format!("A-edge in a bipartite b-stem {class:?}"));
                    }
                    let maximal = class.order() == 2 * m - 1;
                    let characterized = class.a == m && class.b == m - 1 && f == 0 && c == 0;
                    if class.order() > 2 * m - 1 || maximal != characterized {
                        failures.push(format!("max b-stem characterization fails for {class:?}"));
                    }
                    let expected = BigUint::from(class.a + 1).pow((n - class.b) as u32);
                    if BigUint::from(*size) != expected {
                        failures.push(format!("fiber of {stem:?}: {size} != {expected}"));
                    }
                    fibers_checked += 1;
                }
            }
        }
    }
    for a in 1..=5 {
        if f_count(Variant::Bipartite, a, a - 1).unwrap() != f_count(Variant::Split, a, a - 1).unwrap() {
            failures.push(format!("f(a, a - 1) differs at a = {a}"));
        }
    }
    verdict(
        10,
        "b = a - 1 - (f + c), b <= a - 1 <= m - 1, max b-stems, fibers (a + 1)^(n - b), f(a, a - 1)",
        &failures,
        format!("{fibers_checked} b-stem fibers, m <= 3, n <= 5"),
    );
}

#[test]
fn criterion_11_trend() {
    let mut failures = Vec::new();
    let lower = q(2, 3) - q(1, 4);
    let one = q(1, 1);
    let mut details = Vec::new();
    for k in 1..=3usize {
        let seq = SnSequence::new(k);
        let ns: Vec<u64> = (seq.minimal_n()..=200).collect();
        let report = density_trend(&seq, &ns).unwrap();
        if report.rows.is_empty() {
            failures.push(format!("k = {k}: no feasible n"));
            continue;
        }
        if k == 1 {
            for r in &report.rows {
                if r.sigma_gnk <= lower || r.sigma_gnk >= one {
                    failures.push(format!("n = {}: sigma(G_n1) = {}", r.n, r.sigma_gnk));
                }
            }
        }
        let Some(first) = report.first_decrease() else {
            failures.push(format!("k = {k}: no decrease along the sequence"));
            continue;
        };
        for r in &report.rows[first..] {
            if r.sigma_gn <= r.sigma_gnk {
                failures.push(format!("k = {k}, n = {}: no decrease", r.n));
            }
        }
        details.push(format!(
            "k={k}: n={}..{}",
            report.rows[0].n,
            report.rows.last().unwrap().n
        ));
    }
    verdict(
        11,
        "sigma(G_n1) in (2/3 - 1/4, 1) and sigma(G_n) > sigma(G_nk) past the first witness",
        &failures,
        details.join(", "),
    );
}
