mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;
use toeprank::cli::{parse_pattern, pattern_to_json};

const EX_A: &str = r#"{ "rows": ["r1", "r2"], "cols": ["c1", "c2"],
  "coefficients": [ { "index": 0, "nonzeros": [["r1", "c1"]] },
                    { "index": 1, "nonzeros": [["r1", "c2"], ["r2", "c1"]] } ] }"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn toeprank(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_toeprank")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn term_rank_of_small_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", EX_A);
    let run = toeprank(&["term-rank", s(&a), "-k", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("term_rank = 2\n"), "{}", run.stdout);

    let run = toeprank(&["term-rank", s(&a), "-k", "1"]);
    assert!(run.stdout.starts_with("term_rank = 1\n"));

    let zero = write(&dir, "z.json", r#"{"rows":["a"],"cols":["b","c"],"coefficients":[]}"#);
    let run = toeprank(&["term-rank", s(&zero), "-k", "3"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("term_rank = 0\n"));
}

#[test]
fn distant_coefficients_warn() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "far.json",
        r#"{"rows":["a"],"cols":["b"],"coefficients":[{"index":3,"nonzeros":[["a","b"]]}]}"#,
    );
    let run = toeprank(&["term-rank", s(&p), "-k", "2"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("term_rank = 0\n"));
    assert!(run.stderr.contains("warning"), "{}", run.stderr);
    let run = toeprank(&["term-rank", s(&p), "-k", "4"]);
    assert!(run.stdout.starts_with("term_rank = 1\n"));
    assert!(run.stderr.is_empty());
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("syntax.json", "{ \"rows\": [\"r1\" "),
        ("unknown_row.json", r#"{"rows":["a"],"cols":["b"],"coefficients":[{"index":0,"nonzeros":[["x","b"]]}]}"#),
        ("dup_row.json", r#"{"rows":["a","a"],"cols":["b"],"coefficients":[]}"#),
        ("dup_index.json", r#"{"rows":["a"],"cols":["b"],"coefficients":[{"index":0,"nonzeros":[]},{"index":0,"nonzeros":[]}]}"#),
        ("extra_field.json", r#"{"rows":["a"],"cols":["b"],"coefficients":[],"extra":1}"#),
    ];
    for (name, text) in cases {
        let p = write(&dir, name, text);
        let run = toeprank(&["term-rank", s(&p), "-k", "2"]);
        assert_eq!(run.code, 2, "{name}: {}", run.stderr);
        assert!(run.stderr.starts_with("error:"), "{name}: {}", run.stderr);
        assert!(run.stdout.is_empty());
    }
    let a = write(&dir, "a.json", EX_A);
    assert_eq!(toeprank(&["term-rank", s(&a), "-k", "0"]).code, 2);
    assert_eq!(toeprank(&["witness", s(&a), "-k", "2", "--field", "gfP:12"]).code, 2);
    assert_eq!(toeprank(&["term-rank", "/nonexistent/p.json", "-k", "2"]).code, 2);
    assert_eq!(toeprank(&["bogus"]).code, 2);
    let run = toeprank(&["term-rank", s(&write(&dir, "s.json", "{ \"rows\": [\"r1\" ")), "-k", "1"]);
    assert!(run.stderr.contains("line 1"), "{}", run.stderr);
}

#[test]
fn witness_over_each_field() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", EX_A);
    let run = toeprank(&["witness", s(&a), "-k", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("(1, r1, c2)"));
    assert!(run.stdout.contains("(1, r2, c1)"));
    assert!(run.stdout.contains("rank = 2 = term_rank"));

    let b = write(&dir, "b.json", &pattern_to_json(&common::ex_b()));
    for field in ["gf2", "gfP:65521", "rational"] {
        let run = toeprank(&["witness", s(&b), "-k", "2", "--field", field]);
        assert_eq!(run.code, 0, "{field}: {}", run.stderr);
        assert!(run.stdout.contains("rank = 4 = term_rank"), "{field}: {}", run.stdout);
    }
}

#[test]
fn verify_passes_skips_and_fails() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", EX_A);
    let run = toeprank(&["verify", s(&a), "-k", "2"]);
    assert_eq!(run.code, 0, "{}{}", run.stdout, run.stderr);
    assert!(run.stdout.lines().any(|l| l.starts_with("PASS")));
    assert!(!run.stdout.contains("SKIP"));

    let n = 6;
    let names: Vec<String> = (0..n).map(|i| format!("\"x{i}\"")).collect();
    let all: Vec<String> = (0..n)
        .flat_map(|r| (0..n).map(move |c| format!("[\"x{r}\",\"x{c}\"]")))
        .collect();
    let dense = format!(
        r#"{{"rows":[{0}],"cols":[{0}],"coefficients":[{{"index":0,"nonzeros":[{1}]}},{{"index":1,"nonzeros":[{1}]}}]}}"#,
        names.join(","),
        all.join(",")
    );
    let big = write(&dir, "big.json", &dense);
    let run = toeprank(&["verify", s(&big), "-k", "3"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("SKIP"), "{}", run.stdout);
    assert!(run.stdout.contains("term_rank = 18"));

    let run = toeprank(&["verify", s(&a), "-k", "2", "--inject-fault"]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("verification failed"), "{}", run.stderr);
}

#[test]
fn delta_curve_output() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", EX_A);
    let run = toeprank(&["delta", s(&a)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("mu_hat = 2"));
    assert!(run.stdout.contains("δ = 0, 0, -2"));
    assert!(run.stdout.contains("slopes = 0, -2"));
    let run = toeprank(&["delta", s(&a), "-k", "2"]);
    assert!(run.stdout.contains("μ* = 2 at λ = -2"), "{}", run.stdout);
    assert!(run.stdout.contains("term_rank = 2"));
}

#[test]
fn probe_is_seeded() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &pattern_to_json(&common::ex_b()));
    let first = toeprank(&["probe", s(&b), "-k", "2", "--seed", "7"]);
    let second = toeprank(&["probe", s(&b), "-k", "2", "--seed", "7"]);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_is_deterministic_and_parseable() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", EX_A);
    for cmd in ["term-rank", "witness"] {
        let first = toeprank(&[cmd, s(&a), "-k", "2", "--json"]);
        let second = toeprank(&[cmd, s(&a), "-k", "2", "--json"]);
        assert_eq!(first.code, 0);
        assert_eq!(first.stdout, second.stdout);
        let v: Value = serde_json::from_str(&first.stdout).unwrap();
        assert_eq!(v["schema"], "toeprank/1");
        assert_eq!(v["term_rank"], 2);
        assert_eq!(v["k"], 2);
    }
    let v: Value =
        serde_json::from_str(&toeprank(&["witness", s(&a), "-k", "2", "--json"]).stdout).unwrap();
    assert_eq!(v["rank"], 2);
}

#[test]
fn pattern_json_round_trips() {
    let a = parse_pattern(EX_A).unwrap();
    let text = pattern_to_json(&a);
    let again = parse_pattern(&text).unwrap();
    assert_eq!(a, again);
    assert_eq!(text, pattern_to_json(&again));
}
