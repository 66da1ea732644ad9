use std::path::PathBuf;
use std::process::{Command, Output};

fn circsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circsq"))
        .args(args)
        .output()
        .expect("spawn circsq")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("circsq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let _ = std::fs::remove_file(&path);
    path
}

#[test]
fn count_linear_and_circular() {
    let out = circsq(&["count", "aabaab", "--list-squares"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[4], "2");
    assert_eq!(row[5], "aa,aabaab");

    let out = circsq(&["count", "ab", "--circular"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1).unwrap().split('\t').nth(4), Some("0"));
}

#[test]
fn count_json_matches_tsv() {
    let word = "aababaabababaababaababab";
    let tsv = stdout(&circsq(&["count", word, "--circular"]));
    let json = stdout(&circsq(&["count", word, "--circular", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let row: Vec<&str> = tsv.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(v["count"].as_u64().unwrap().to_string(), row[4]);
    assert_eq!(v["count"], 25);
    assert_eq!(v["n"], 24);
}

#[test]
fn family_json_rows() {
    let out = circsq(&["family", "--k-min", "0", "--k-max", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let counts: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![16, 25, 36, 45]);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["matches"] == true));
}

#[test]
fn verify_is_reproducible() {
    let args = [
        "verify",
        "quarter",
        "--n-max",
        "12",
        "--samples",
        "1000",
        "--seed",
        "7",
    ];
    let a = circsq(&args);
    let b = circsq(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\tpass\t"));
}

#[test]
fn search_resume_leaves_file_unchanged() {
    let path = scratch("search.csv");
    let p = path.to_str().unwrap();
    let args = [
        "search",
        "--n-max",
        "12",
        "--jobs",
        "2",
        "--no-timing",
        "--out",
        p,
    ];
    let first = circsq(&args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 13);
    assert!(written.starts_with("n,sigma,quotient,max_count,"));

    let second = circsq(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), written);
    assert!(stdout(&second)
        .lines()
        .skip(1)
        .all(|l| l.contains("\ttrue\t")));
}

#[test]
fn search_partial_file_is_extended() {
    let full = scratch("full.csv");
    let part = scratch("part.csv");
    let run = |path: &PathBuf, n_max: &str| {
        circsq(&[
            "search",
            "--n-max",
            n_max,
            "--no-timing",
            "--out",
            path.to_str().unwrap(),
        ])
    };
    assert_eq!(run(&full, "10").status.code(), Some(0));
    assert_eq!(run(&part, "6").status.code(), Some(0));
    assert_eq!(run(&part, "10").status.code(), Some(0));
    assert_eq!(std::fs::read(&full).unwrap(), std::fs::read(&part).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(circsq(&["count", "aB1"]).status.code(), Some(2));
    assert_eq!(
        circsq(&["count", "abc", "--sigma", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(circsq(&["verify", "no-such-lemma"]).status.code(), Some(2));
    assert_eq!(
        circsq(&["family", "--k-min", "4", "--k-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        circsq(&[
            "search",
            "--n-max",
            "40",
            "--budget",
            "1000",
            "--out",
            scratch("b.csv").to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn corrupt_search_file_is_refused() {
    let path = scratch("corrupt.csv");
    std::fs::write(&path, "not,a,header\n").unwrap();
    let out = circsq(&["search", "--n-max", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "not,a,header\n");
}
