use std::io::Write;
use std::process::{Command, Output, Stdio};

fn subtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn mean_of_small_graphs() {
    let out = subtree(&["mu", "--graph6", "A_"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# schema=1\n"));
    assert_eq!(data_rows(&text)[0][3], "4/3");

    let rows = data_rows(&stdout(&subtree(&["mu", "--path", "10"])));
    assert_eq!(rows[0][3], "4");
    assert_eq!(rows[0][5], "2/5");

    let huge = data_rows(&stdout(&subtree(&["mu", "--path", "1000000000000000000000"])));
    assert_eq!(huge[0][3], "333333333333333333334");
}

#[test]
fn chorded_family_mean() {
    let base = data_rows(&stdout(&subtree(&["mu", "--family", "gn", "--L", "3", "--s", "1"])));
    assert_eq!(base[0][1], "15");
    let chords = subtree(&["mu", "--family", "hnk", "--L", "5", "--s", "2", "--chords", "0-2,2-4"]);
    assert!(chords.status.success());
    assert_eq!(data_rows(&stdout(&chords))[0][0], "9");
}

#[test]
fn threshold_summaries() {
    let none = stdout(&subtree(&["threshold", "--m", "1", "--n-max", "50"]));
    assert!(none.contains("no crossing"), "{none}");
    let two = stdout(&subtree(&["threshold", "--m", "2", "--n-max", "200"]));
    assert!(two.contains("first crossing n=6; persists through n=200"), "{two}");
}

#[test]
fn lower_bound_sweep() {
    let out = subtree(&["jamison", "--n-max", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("n=7 PASS 16807 trees"));
}

#[test]
fn exit_codes() {
    let bad = subtree(&["mu", "--graph6", "A"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
    let huge = subtree(&["mu", "--family", "gn", "--L", "3", "--s", "100000000"]);
    assert_eq!(huge.status.code(), Some(3));
    let unknown = subtree(&["mu", "--family", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn deterministic_runs_are_identical() {
    let args = ["--deterministic", "threshold", "--m", "3", "--n-max", "300", "--table"];
    let a = subtree(&args);
    let b = subtree(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed_ms"));
}

#[test]
fn json_output_parses() {
    let out = subtree(&["--format", "json", "bstem-table", "--m", "3", "--variant", "both"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["command"], "bstem-table");
    assert!(!value["rows"].as_array().unwrap().is_empty());
}

#[test]
fn scan_from_stdin_reports_bad_lines() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_subtree"))
        .args(["scan", "--max-order", "7"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"Bw\n???\nFyUyG\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# warning: line 2"), "{text}");
    assert!(text.contains("FyUyG"), "{text}");
}
