use std::cmp::Ordering;
use std::fs::File;
use std::io::{self, BufReader};
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use subtree_core::bstem::{threshold_search, BStemTable, Variant};
use subtree_core::census::{subtree_stats_kirchhoff, tree_subtree_stats, MAX_KIRCHHOFF_ORDER};
use subtree_core::families::{
    density_trend, family_stats, find_decrease_params, geometric_grid, mu_path, verify_witness,
    SnSequence,
};
use subtree_core::graph::{parse_graph6, FamilyParams};
use subtree_core::search::{corpus_scan, jamison_sweep, k_edge_scan, labeled_tree_count};
use subtree_core::{Edge, Error, Rational, SubtreeStats};

use crate::output::{Report, Row};
use crate::Failure;

fn parse_big(s: &str) -> Result<BigUint, String> {
    s.parse().map_err(|_| format!("not a non-negative integer: {s}"))
}

fn parse_chord(p: &str) -> Result<Edge, String> {
    let (u, v) = p
        .split_once('-')
        .ok_or_else(|| format!("chord '{p}' is not of the form u-v"))?;
    let u = u.trim().parse().map_err(|_| format!("bad vertex in '{p}'"))?;
    let v = v.trim().parse().map_err(|_| format!("bad vertex in '{p}'"))?;
    Ok((u, v))
}

fn chord_list(chords: &[Edge]) -> String {
    chords
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Gn,
    Gnk,
    Hnk,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["graph6", "path", "family"])))]
pub struct MuArgs {
    /// A graph in graph6 form.
    #[arg(long)]
    graph6: Option<String>,
    /// The path on this many vertices.
    #[arg(long, value_parser = parse_big)]
    path: Option<BigUint>,
    /// A path with pendant stars, optionally with chords.
    #[arg(long, value_enum, requires = "core_length")]
    family: Option<FamilyKind>,
    /// Core path length of the family.
    #[arg(long = "L", id = "core_length")]
    core_length: Option<usize>,
    /// Leaves on each end of the core.
    #[arg(long, value_parser = parse_big, default_value = "0")]
    s: BigUint,
    /// Number of chords v_i w for `gnk`.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Chords for `hnk` as `u-v,u-v`.
    #[arg(long, value_parser = parse_chord, value_delimiter = ',')]
    chords: Vec<Edge>,
}

fn stats_row(report: &mut Report, order: &BigUint, stats: &SubtreeStats) -> Result<(), Failure> {
    report.columns(&[
        "order",
        "count",
        "total_order",
        "mu",
        "mu_decimal",
        "sigma",
        "sigma_decimal",
    ]);
    report.row(
        Row::new()
            .cell(order)
            .cell(&stats.count)
            .cell(&stats.total_order)
            .exact(&stats.mean()?)
            .exact(&stats.density(order)?),
    );
    Ok(())
}

pub fn mu(args: &MuArgs) -> Result<Report, Failure> {
    let mut report = Report::new("mu");
    if let Some(text) = &args.graph6 {
        report.param("graph6", text);
        let g = parse_graph6(text)?;
        let stats = if g.order() <= MAX_KIRCHHOFF_ORDER {
            subtree_stats_kirchhoff(&g)?
        } else if g.is_tree() {
            tree_subtree_stats(&g)?
        } else {
            return Err(Error::TooLarge {
                what: "census of a non-tree",
                order: g.order(),
                limit: MAX_KIRCHHOFF_ORDER,
            }
            .into());
        };
        stats_row(&mut report, &BigUint::from(g.order()), &stats)?;
    } else if let Some(q) = &args.path {
        report.param("path", q);
        // q(q+1)/2 subpaths with total order q(q+1)(q+2)/6
        let count = q * (q + 1u32) / 2u32;
        let total = q * (q + 1u32) * (q + 2u32) / 6u32;
        let stats = SubtreeStats::new(count, total);
        debug_assert!(q.is_zero() || stats.mean().ok() == mu_path(q).ok());
        stats_row(&mut report, q, &stats)?;
    } else if let (Some(kind), Some(length)) = (args.family, args.core_length) {
        let params = match kind {
            FamilyKind::Gn => FamilyParams::gn(length, args.s.clone()),
            FamilyKind::Gnk => FamilyParams::gnk(length, args.s.clone(), args.k)?,
            FamilyKind::Hnk => {
                FamilyParams::hnk(length, args.s.clone(), args.chords.clone())
            }
        };
        report
            .param("family", format!("{kind:?}").to_lowercase())
            .param("L", length)
            .param("s", &args.s);
        if kind == FamilyKind::Gnk {
            report.param("k", args.k);
        }
        if kind == FamilyKind::Hnk {
            report.param("chords", chord_list(&params.chords));
        }
        let stats = family_stats(&params)?;
        stats_row(&mut report, &params.order(), &stats)?;
    }
    Ok(report)
}

#[derive(Args, Debug)]
pub struct DecreaseArgs {
    /// Number of chords v_1 w, .., v_k w.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Smallest core length (default k + 2).
    #[arg(long)]
    l_min: Option<usize>,
    #[arg(long, default_value_t = 22)]
    l_max: usize,
    /// Largest star size; sizes 0, 1, 2, 4, .. are tried.
    #[arg(long, default_value_t = 4096)]
    s_max: u64,
    /// Re-derive every witness by an independent census.
    #[arg(long)]
    verify: bool,
}

pub fn decrease(args: &DecreaseArgs) -> Result<Report, Failure> {
    let l_min = args.l_min.unwrap_or(args.k + 2);
    let mut report = Report::new("decrease");
    report
        .param("k", args.k)
        .param("l_min", l_min)
        .param("l_max", args.l_max)
        .param("s_max", args.s_max)
        .param("verify", args.verify);
    let found = find_decrease_params(args.k, l_min..=args.l_max, &geometric_grid(args.s_max))?;
    let mut columns = vec!["L", "s", "n", "mu_gn", "mu_gn_decimal", "mu_gnk", "mu_gnk_decimal"];
    if args.verify {
        columns.push("verified_by");
    }
    report.columns(&columns);
    for w in &found {
        let mut row = Row::new()
            .cell(w.core_length)
            .cell(&w.star_size)
            .cell(w.order())
            .exact(&w.mu_base())
            .exact(&w.mu_extended());
        if args.verify {
            row = row.cell(format!("{:?}", verify_witness(w)?));
        }
        report.row(row);
    }
    report.summary.push(match found.first() {
        Some(w) => format!(
            "{} witnesses; first at L={} s={}",
            found.len(),
            w.core_length,
            w.star_size
        ),
        None => "no decrease found in range".into(),
    });
    Ok(report)
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Size of the clique (or independent) side.
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 10_000)]
    n_max: u64,
    /// List the comparison at every n instead of only the crossing.
    #[arg(long)]
    table: bool,
}

fn ordering_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "split<bipartite",
        Ordering::Equal => "equal",
        Ordering::Greater => "split>bipartite",
    }
}

pub fn threshold(args: &ThresholdArgs) -> Result<Report, Failure> {
    let mut report = Report::new("threshold");
    report.param("m", args.m).param("n_max", args.n_max);
    let result = threshold_search(args.m, args.n_max)?;
    if args.table {
        report.columns(&["n", "comparison"]);
        for (i, &o) in result.orderings.iter().enumerate() {
            report.row(Row::new().cell(i + 1).cell(ordering_word(o)));
        }
    } else {
        report.columns(&["n", "mu_split", "mu_split_decimal", "mu_bipartite", "mu_bipartite_decimal"]);
        if let Some(c) = &result.crossing {
            report.row(
                Row::new()
                    .cell(c.n)
                    .exact(&c.split.mean()?)
                    .exact(&c.bipartite.mean()?),
            );
        }
    }
    report.summary.push(match &result.crossing {
        Some(c) if result.persists => {
            format!("first crossing n={}; persists through n={}", c.n, args.n_max)
        }
        Some(c) => format!("first crossing n={}; does not persist through n={}", c.n, args.n_max),
        None => format!("no crossing up to n={}", args.n_max),
    });
    Ok(report)
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").args(["file", "graph6"])))]
pub struct ScanArgs {
    /// graph6 corpus, one graph per line; `-` or absent reads standard input.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Scan one graph for k-edge additions instead of a corpus.
    #[arg(long)]
    graph6: Option<String>,
    /// Largest order scanned in a corpus.
    #[arg(long, default_value_t = 10)]
    max_order: usize,
    /// Edges added at once (single-graph mode).
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Most candidate edge sets to check (single-graph mode).
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Stop at the first witness (single-graph mode).
    #[arg(long)]
    first_only: bool,
}

pub fn scan(args: &ScanArgs) -> Result<Report, Failure> {
    if let Some(text) = &args.graph6 {
        return k_scan(args, text);
    }
    let mut report = Report::new("scan");
    let source = match &args.file {
        Some(p) if p.as_os_str() != "-" => p.display().to_string(),
        _ => "stdin".to_string(),
    };
    report.param("source", &source).param("max_order", args.max_order);
    let result = if source == "stdin" {
        corpus_scan(&source, io::stdin().lock(), args.max_order)?
    } else {
        let file = File::open(args.file.as_ref().expect("file given"))?;
        corpus_scan(&source, BufReader::new(file), args.max_order)?
    };
    report.columns(&[
        "line",
        "graph6",
        "order",
        "added",
        "mu_before",
        "mu_before_decimal",
        "mu_after",
        "mu_after_decimal",
    ]);
    for inst in &result.instances {
        report.row(
            Row::new()
                .cell(inst.line)
                .cell(&inst.graph6)
                .cell(inst.order)
                .cell(chord_list(&inst.addition.added))
                .exact(&inst.addition.before.mean()?)
                .exact(&inst.addition.after.mean()?),
        );
    }
    report.summary.push(format!(
        "graphs scanned={} instances={} graphs with instances={}",
        result.graphs_scanned,
        result.instances.len(),
        result.graphs_with_instances()
    ));
    report.summary.push(match result.min_order() {
        Some(n) => format!("smallest order with a decreasing edge: {n}"),
        None => "no decreasing edge found".into(),
    });
    report.warnings = result
        .warnings
        .iter()
        .map(|w| format!("line {}: {}", w.line, w.message))
        .collect();
    Ok(report)
}

fn k_scan(args: &ScanArgs, text: &str) -> Result<Report, Failure> {
    let mut report = Report::new("scan");
    report
        .param("graph6", text)
        .param("k", args.k)
        .param("budget", args.budget)
        .param("first_only", args.first_only);
    let g = parse_graph6(text)?;
    let result = k_edge_scan(&g, args.k, args.budget, args.first_only)?;
    report.columns(&["added", "mu_before", "mu_before_decimal", "mu_after", "mu_after_decimal"]);
    for w in &result.witnesses {
        report.row(
            Row::new()
                .cell(chord_list(&w.added))
                .exact(&w.before.mean()?)
                .exact(&w.after.mean()?),
        );
    }
    report.summary.push(format!(
        "outcome={:?} checked={} candidates={} witnesses={}",
        result.outcome,
        result.checked,
        result.candidates,
        result.witnesses.len()
    ));
    Ok(report)
}

#[derive(Args, Debug)]
pub struct JamisonArgs {
    #[arg(long, default_value_t = 8)]
    n_max: usize,
}

pub fn jamison(args: &JamisonArgs) -> Result<(Report, Result<(), String>), Failure> {
    let mut report = Report::new("jamison");
    report.param("n_max", args.n_max);
    let rows = jamison_sweep(args.n_max)?;
    report.columns(&["n", "trees", "violations", "equalities", "paths", "status"]);
    let mut failed = Vec::new();
    for r in &rows {
        let status = if r.passed() && r.trees == labeled_tree_count(r.n) {
            "PASS"
        } else {
            failed.push(r.n);
            "FAIL"
        };
        report.row(
            Row::new()
                .cell(r.n)
                .cell(r.trees)
                .cell(r.violations)
                .cell(r.equalities)
                .cell(r.paths)
                .cell(status),
        );
        report.summary.push(format!("n={} {status} {} trees", r.n, r.trees));
    }
    let check = if failed.is_empty() {
        Ok(())
    } else {
        Err(format!("bound or equality case failed at n = {failed:?}"))
    };
    Ok((report, check))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantChoice {
    Split,
    Bipartite,
    Both,
}

#[derive(Args, Debug)]
pub struct BstemTableArgs {
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = VariantChoice::Both)]
    variant: VariantChoice,
}

pub fn bstem_table(args: &BstemTableArgs) -> Result<Report, Failure> {
    let mut report = Report::new("bstem-table");
    report
        .param("m", args.m)
        .param("variant", format!("{:?}", args.variant).to_lowercase());
    let variants: &[Variant] = match args.variant {
        VariantChoice::Split => &[Variant::Split],
        VariantChoice::Bipartite => &[Variant::Bipartite],
        VariantChoice::Both => &[Variant::Split, Variant::Bipartite],
    };
    report.columns(&["variant", "a", "b", "f"]);
    for &v in variants {
        let table = BStemTable::new(v, args.m)?;
        for (&(a, b), f) in &table.entries {
            report.row(
                Row::new()
                    .cell(format!("{v:?}").to_lowercase())
                    .cell(a)
                    .cell(b)
                    .cell(f),
            );
        }
    }
    Ok(report)
}

#[derive(Args, Debug)]
pub struct TrendArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// First n (default: least n satisfying 2 s_n <= n - k - 1).
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long, default_value_t = 60)]
    n_max: u64,
}

pub fn trend(args: &TrendArgs) -> Result<Report, Failure> {
    let seq = SnSequence::new(args.k);
    let n_min = args.n_min.unwrap_or_else(|| seq.minimal_n());
    let mut report = Report::new("trend");
    report
        .param("k", args.k)
        .param("n_min", n_min)
        .param("n_max", args.n_max);
    let ns: Vec<u64> = (n_min..=args.n_max).collect();
    let result = density_trend(&seq, &ns)?;
    report.columns(&[
        "n",
        "s",
        "L",
        "sigma_gn",
        "sigma_gn_decimal",
        "sigma_gnk",
        "sigma_gnk_decimal",
    ]);
    for r in &result.rows {
        report.row(
            Row::new()
                .cell(r.n)
                .cell(r.star_size)
                .cell(r.core_length)
                .exact(&r.sigma_gn)
                .exact(&r.sigma_gnk),
        );
    }
    let two_thirds = Rational::new(2.into(), 3.into());
    if let Some(last) = result.rows.last() {
        report.summary.push(format!(
            "last n={}: sigma_gnk - 2/3 = {}",
            last.n,
            subtree_core::census::to_decimal(&(&last.sigma_gnk - &two_thirds), 12)
        ));
    }
    report.summary.push(match result.first_decrease() {
        Some(i) => format!("first n with sigma_gnk < sigma_gn: {}", result.rows[i].n),
        None => "no n with sigma_gnk < sigma_gn".into(),
    });
    report.warnings = result
        .skipped
        .iter()
        .map(|(n, why)| format!("n={n} skipped: {why}"))
        .collect();
    Ok(report)
}
