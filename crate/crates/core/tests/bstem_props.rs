use std::cmp::Ordering;

use num_bigint::BigUint;
use subtree_core::bstem::{
    bstem_stats, f_count, f_matrix_tree, family_size, for_each_bstem, mu_ab, mu_graph, BStemTable,
    Variant,
};
use subtree_core::census::subtree_stats_kirchhoff;
use subtree_core::Rational;

const VARIANTS: [Variant; 2] = [Variant::Split, Variant::Bipartite];

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn enumerated_stems_satisfy_the_vertex_count_identity() {
    for variant in VARIANTS {
        for a in 1..=5usize {
            for b in 0..a {
                if a + b > 8 {
                    continue;
                }
                let mut seen = 0u64;
                for_each_bstem(variant, a, b, |adj| {
                    seen += 1;
                    let f = (0..a).map(|v| (adj[v] & ((1 << a) - 1)).count_ones() as usize).sum::<usize>() / 2;
                    let c: usize = (a..a + b).map(|v| adj[v].count_ones() as usize - 2).sum();
                    assert_eq!(b + 1 + f + c, a, "{variant:?} a = {a} b = {b}");
                    if variant == Variant::Bipartite {
                        assert_eq!(f, 0);
                    }
                })
                .unwrap();
                assert_eq!(BigUint::from(seen), f_count(variant, a, b).unwrap());
            }
        }
    }
}

#[test]
fn split_counts_dominate() {
    for a in 1..=6usize {
        for b in 0..a {
            let split = f_matrix_tree(Variant::Split, a, b).unwrap();
            let bip = f_matrix_tree(Variant::Bipartite, a, b).unwrap();
            assert!(bip <= split, "a = {a} b = {b}");
            if b + 1 == a {
                assert_eq!(bip, split);
            }
        }
    }
    for m in 1..=4usize {
        for n in 1..=8u64 {
            for a in 1..=m {
                for b in 0..a.min(n as usize + 1) {
                    assert!(
                        family_size(Variant::Split, m, n, a, b).unwrap()
                            >= family_size(Variant::Bipartite, m, n, a, b).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn class_sums_match_the_host_census() {
    for variant in VARIANTS {
        for m in 1..=4usize {
            for n in 1..=6u64 {
                let host = variant.host(m, n as usize).unwrap();
                assert_eq!(
                    bstem_stats(variant, m, n).unwrap(),
                    subtree_stats_kirchhoff(&host).unwrap(),
                    "{variant:?} m = {m} n = {n}"
                );
            }
        }
    }
}

#[test]
fn class_mean_is_weighted_by_join_probability() {
    for n in 1..=30u64 {
        for a in 1..=6usize {
            for b in 0..a.min(n as usize + 1) {
                // every free B-vertex hangs on one of a A-vertices or stays out
                let free = (n - b as u64) as i64;
                let expected = Rational::new((free * a as i64).into(), (a as i64 + 1).into())
                    + r((a + b) as i64);
                assert_eq!(mu_ab(n, a, b).unwrap(), expected);
            }
        }
    }
}

#[test]
fn largest_class_has_the_largest_mean() {
    for m in 2..=6usize {
        for n in m as u64..=40 {
            let top = mu_ab(n, m, m - 1).unwrap();
            for a in 1..=m {
                for b in 0..a {
                    if (a, b) != (m, m - 1) {
                        assert_eq!(top.cmp(&mu_ab(n, a, b).unwrap()), Ordering::Greater);
                    }
                }
            }
        }
    }
}

#[test]
fn table_shape_and_star_means() {
    let t = BStemTable::new(Variant::Bipartite, 4).unwrap();
    assert_eq!(t.entries.len(), 10);
    assert_eq!(t.get(2, 1), BigUint::from(1u32));
    assert!(BStemTable::new(Variant::Split, 7).is_err());
    for n in [1u64, 10, 1000] {
        assert_eq!(
            mu_graph(Variant::Split, 1, n).unwrap(),
            mu_graph(Variant::Bipartite, 1, n).unwrap()
        );
    }
    assert_eq!(mu_graph(Variant::Bipartite, 1, 2).unwrap(), Rational::new(5.into(), 3.into()));
}

#[test]
fn matrix_tree_route_reaches_the_largest_side() {
    // a + b = 11 is out of reach of the enumerator
    assert!(f_count(Variant::Split, 6, 5).is_err());
    let v = f_matrix_tree(Variant::Split, 6, 5).unwrap();
    assert_eq!(v, f_matrix_tree(Variant::Bipartite, 6, 5).unwrap());
    assert!(mu_graph(Variant::Split, 6, 100).is_ok());
}
