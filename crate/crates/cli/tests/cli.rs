//! End-to-end tests of the installed binary: output formats, exit codes, and
//! the canonical JSON schema.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genthresh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

/// Parses a rendered polynomial like `t^3 - 6t^2 + 12t - 8` (plain or LaTeX)
/// into ascending coefficients.
fn parse_poly(s: &str) -> Vec<i64> {
    let cleaned = s.replace(['{', '}'], "").replace(" - ", " +-");
    let mut terms: Vec<(usize, i64)> = Vec::new();
    for raw in cleaned.split(" +") {
        let raw = raw.trim();
        let (coeff_str, degree) = match raw.find('t') {
            None => (raw, 0),
            Some(i) => {
                let d = match raw[i + 1..].strip_prefix('^') {
                    Some(d) => d.parse().unwrap(),
                    None => 1,
                };
                (&raw[..i], d)
            }
        };
        let coeff = match coeff_str {
            "" => 1,
            "-" => -1,
            c => c.parse().unwrap(),
        };
        terms.push((degree, coeff));
    }
    let max = terms.iter().map(|(d, _)| *d).max().unwrap();
    let mut out = vec![0i64; max + 1];
    for (d, c) in terms {
        out[d] = c;
    }
    out
}

#[test]
fn chi_plain_published_row() {
    let out = run(&["chi", "--n", "3", "--k", "1", "--l", "0", "--format", "plain"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "t^3 - 6t^2 + 12t - 8; regions = 27\n");
}

#[test]
fn chi_plain_three_parallel_hyperplanes() {
    let out = run(&["chi", "--n", "2", "--k", "1", "--l", "1", "--format", "plain"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "t^2 - 3t; regions = 4\n");
}

#[test]
fn chi_rejects_n_zero() {
    let out = run(&["chi", "--n", "0", "--k", "1", "--l", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chi_rejects_unknown_flag() {
    let out = run(&["chi", "--n", "2", "--k", "1", "--l", "0", "--frmt", "json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chi_json_schema() {
    let out = run(&["chi", "--n", "2", "--k", "1", "--l", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["k"], 1);
    assert_eq!(doc["l"], 0);
    assert_eq!(doc["family"], "ST");
    assert_eq!(doc["k_eff"], 1);
    assert_eq!(doc["coefficients"], serde_json::json!(["0", "-2", "1"]));
    assert_eq!(doc["regions"], "3");
    assert_eq!(doc["samples"].as_array().unwrap().len(), 4);
    assert_eq!(doc["samples"][0]["t"], 25);
    assert_eq!(doc["samples"][0]["count"], "575");
    assert!(doc["runtime_ms"].is_u64());
    // canonical key order, checked on the raw text
    let positions: Vec<usize> = [
        "\"n\"",
        "\"k\"",
        "\"l\"",
        "\"family\"",
        "\"k_eff\"",
        "\"coefficients\"",
        "\"regions\"",
        "\"samples\"",
        "\"runtime_ms\"",
    ]
    .iter()
    .map(|key| text.find(key).unwrap_or_else(|| panic!("{key} missing")))
    .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "key order drifted");
}

#[test]
fn chi_json_round_trips_byte_identical() {
    let out = run(&["chi", "--n", "3", "--k", "2", "--l", "0"]);
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&doc).unwrap(), text.trim());
}

#[test]
fn chi_deterministic_modulo_runtime() {
    let strip = |s: String| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    let a = strip(stdout(&run(&["chi", "--n", "3", "--k", "1", "--l", "2"])));
    let b = strip(stdout(&run(&["chi", "--n", "3", "--k", "1", "--l", "2"])));
    assert_eq!(a, b);
}

#[test]
fn latex_and_json_agree_on_the_polynomial() {
    let latex = stdout(&run(&["chi", "--n", "4", "--k", "1", "--l", "0", "--format", "latex"]));
    let (poly_part, regions_part) = latex.trim().split_once("; regions = ").unwrap();
    assert!(poly_part.contains("t^{4}"));
    let json = stdout(&run(&["chi", "--n", "4", "--k", "1", "--l", "0"]));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let from_json: Vec<i64> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(parse_poly(poly_part), from_json);
    assert_eq!(regions_part, doc["regions"].as_str().unwrap());
    // plain rendering parses to the same coefficients too
    let plain = stdout(&run(&["chi", "--n", "4", "--k", "1", "--l", "0", "--format", "plain"]));
    let (plain_poly, _) = plain.trim().split_once("; regions = ").unwrap();
    assert_eq!(parse_poly(plain_poly), from_json);
}

#[test]
fn verify_trivial_grid_is_clean() {
    let out = run(&["verify", "--n-max", "1", "--k-max", "0", "--l-max", "0", "--primes", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
}

#[test]
fn verify_small_grid_is_clean() {
    let out = run(&["verify", "--n-max", "3", "--k-max", "2", "--l-max", "1", "--primes", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).is_empty());
}

#[test]
fn verify_rejects_bad_flags() {
    let out = run(&["verify", "--n-max", "2", "--k-max", "1", "--l-max", "0"]);
    assert_eq!(out.status.code(), Some(2)); // --primes missing
    let out = run(&["verify", "--n-max", "0", "--k-max", "0", "--l-max", "0", "--primes", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_reports_every_row() {
    let out = run(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 9);
    let find = |n: u64, k: u64| {
        rows.iter()
            .find(|r| r["n"] == n && r["k"] == k)
            .unwrap_or_else(|| panic!("row n={n} k={k} missing"))
    };
    assert_eq!(find(3, 1)["verdict"], "AllAgree");
    let disputed = find(2, 1);
    assert_eq!(disputed["verdict"], "FixtureDisputed");
    assert_eq!(disputed["engine"], "t^2 - 2t");
    let zero_cubic = find(4, 3);
    assert_eq!(zero_cubic["verdict"], "FixtureDisputed");
    assert_eq!(zero_cubic["paper"], "t^4 - 204t^2 + 1240t + 740");
    assert!(rows.iter().all(|r| r["verdict"] != "EngineMismatch"));
}

#[test]
fn sequence_published_range() {
    let out = run(&["sequence", "--k", "1", "--l", "0", "--n-from", "3", "--n-to", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "27, 345, 5513");
    let docs: Vec<serde_json::Value> =
        lines.map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(docs.len(), 3);
    assert_eq!(docs[1]["n"], 4);
    assert_eq!(docs[1]["regions"], "345");
}

#[test]
fn sequence_single_and_trivial_points() {
    let out = run(&["sequence", "--k", "1", "--l", "0", "--n-from", "2", "--n-to", "2"]);
    assert_eq!(stdout(&out).lines().next().unwrap(), "3");
    let out = run(&["sequence", "--k", "0", "--l", "0", "--n-from", "1", "--n-to", "1"]);
    assert_eq!(stdout(&out).lines().next().unwrap(), "1");
}

#[test]
fn sequence_rejects_bad_range() {
    let out = run(&["sequence", "--k", "1", "--l", "0", "--n-from", "3", "--n-to", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sequence", "--k", "1", "--l", "0", "--n-from", "0", "--n-to", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
