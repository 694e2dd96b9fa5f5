//! End-to-end checks of the binary: subcommand examples, exit codes,
//! formats, config handling, and the sieve cache.

use std::process::{Command, Output};

fn tzl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tzl"))
        .args(args)
        .env_remove("TZL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = tzl(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn admissible_check_example() {
    let out = stdout_of(&["admissible", "check", "--H", "0,2,4"]);
    let rows = data_rows(&out);
    assert_eq!(rows[0], "H,k,admissible,witness_prime");
    assert_eq!(rows[1], "\"0,2,4\",3,false,3");
}

#[test]
fn tuples_count_example() {
    let out = stdout_of(&["tuples", "count", "--H", "0,2", "--limit", "100"]);
    assert_eq!(data_rows(&out)[1], "\"0,2\",100,8");
}

#[test]
fn tuples_list_example() {
    let out = stdout_of(&["tuples", "list", "--H", "0,2,6", "--limit", "50"]);
    let rows = data_rows(&out);
    assert_eq!(rows[0], "p");
    assert_eq!(&rows[1..], &["5", "11", "17", "41"]);
}

#[test]
fn series_logzeta_example() {
    let out = stdout_of(&["series", "logzeta", "--k", "1", "--s", "2", "--N", "1000000"]);
    let rows = data_rows(&out);
    let value: f64 = rows[1].split(',').nth(4).unwrap().parse().unwrap();
    let expected = (std::f64::consts::PI.powi(2) / 6.0).ln();
    assert!((value - expected).abs() < 1e-5, "value {value} vs {expected}");
}

#[test]
fn exit_codes() {
    assert_eq!(tzl(&["bogus"]).status.code(), Some(64));
    assert_eq!(tzl(&["--help"]).status.code(), Some(0));
    // domain error: s ≤ 1 without --force-s
    let out = tzl(&["series", "logzeta", "--k", "1", "--s", "1", "--N", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // forced: succeeds
    let out = tzl(&["series", "logzeta", "--k", "1", "--s", "1", "--N", "10", "--force-s"]);
    assert_eq!(out.status.code(), Some(0));
    // resource error: past the memory budget
    let out = tzl(&["sieve", "build", "--limit", "99999999999"]);
    assert_eq!(out.status.code(), Some(3));
    // domain error: inadmissible tuple can't be extended
    let out = tzl(&["admissible", "extend", "--H", "0,2,4", "--base", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // extension failure carries obstructions
    let out = tzl(&["admissible", "extend", "--H", "0,6,12,18", "--base", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("obstructions"), "stderr: {err}");
}

#[test]
fn json_lines_format() {
    let out = stdout_of(&[
        "--format", "json", "tuples", "list", "--H", "0,2", "--limit", "30",
    ]);
    let primes: Vec<u64> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["p"].as_u64().unwrap())
        .collect();
    assert_eq!(primes, vec![3, 5, 11, 17, 29]);
}

#[test]
fn lemma_and_growth_commands_run() {
    let out = stdout_of(&["lemma", "two", "--two-i", "2", "--l", "2", "--s", "1.5", "--N", "2000"]);
    let rows = data_rows(&out);
    assert!(rows[1].ends_with("true"));

    let out = stdout_of(&["lemma", "gcd", "--two-i", "2", "--two-j", "4", "--N", "1000"]);
    let rows = data_rows(&out);
    assert!(rows[1].contains(",0,")); // zero violations

    let out = tzl(&["lemma", "gcd", "--two-i", "2", "--two-j", "6", "--N", "1000"]);
    assert_eq!(out.status.code(), Some(2)); // non-power pair needs --force
    let out = stdout_of(&["--force", "lemma", "gcd", "--two-i", "2", "--two-j", "6", "--N", "1000"]);
    let violations: u64 = data_rows(&out)[1].split(',').nth(4).unwrap().parse().unwrap();
    assert!(violations > 0);

    let out = stdout_of(&["growth", "euler", "--N-grid", "10,100"]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 3);
    let sum10: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((sum10 - 1.17619047619).abs() < 1e-9);

    let out = stdout_of(&["growth", "twins", "--H", "0,2,6", "--limit", "50"]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 4); // header + 3 pairs
    for row in &rows[1..] {
        assert!(row.ends_with(",4"));
    }

    let out = stdout_of(&["growth", "diverge", "--H", "0,2", "--m", "1", "--N-grid", "100,1000,10000"]);
    assert!(out.lines().any(|l| l.starts_with("# fit slope=")));
}

#[test]
fn inadmissible_ratio_probe_warns_but_computes() {
    let out = tzl(&["growth", "ratio", "--H", "0,2,4", "--s-grid", "1.5", "--N", "1000"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("not admissible"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(data_rows(&text).len(), 2);
}

#[test]
fn admissible_class_both_modes() {
    let out = stdout_of(&["admissible", "class", "--base", "2", "--bound", "20"]);
    let members: Vec<&str> = data_rows(&out)[1..]
        .iter()
        .map(|r| r.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(members, vec!["2", "4", "8", "16"]);

    let out = stdout_of(&["admissible", "class", "--root", "36"]);
    assert_eq!(data_rows(&out)[1], "36,6");

    let out = tzl(&["admissible", "class", "--base", "2"]);
    assert_eq!(out.status.code(), Some(64)); // --base requires --bound
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "tuples = [\"0,4\"]\nformat = \"json\"\n").unwrap();
    let out = stdout_of(&[
        "--config",
        path.to_str().unwrap(),
        "tuples",
        "count",
        "--limit",
        "100",
    ]);
    let record: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(record["H"], "0,4");
    assert_eq!(record["count"], 9); // cousin pairs below 100

    // flag overrides config format back to csv
    let out = stdout_of(&[
        "--config",
        path.to_str().unwrap(),
        "--format",
        "csv",
        "tuples",
        "count",
        "--limit",
        "100",
    ]);
    assert!(out.starts_with("# config_hash="));
}

#[test]
fn output_file_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("rows.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_tzl"))
        .args(["tuples", "count", "--H", "0,2", "--limit", "100"])
        .args(["--output", out_path.to_str().unwrap()])
        .env("TZL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("\"0,2\",100,8"));

    // build writes the cache into TZL_CACHE_DIR, subsequent runs reuse it
    let out = Command::new(env!("CARGO_BIN_EXE_tzl"))
        .args(["sieve", "build", "--limit", "102"])
        .env("TZL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let cache_file = dir.path().join("tzl-sieve-102.bits");
    assert!(cache_file.exists());
    let header = std::fs::read(&cache_file).unwrap();
    assert_eq!(&header[..4], b"TZL1");
    assert_eq!(u64::from_le_bytes(header[4..12].try_into().unwrap()), 102);

    let out = Command::new(env!("CARGO_BIN_EXE_tzl"))
        .args(["tuples", "count", "--H", "0,2", "--limit", "100"])
        .env("TZL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"0,2\",100,8"));
}

#[test]
fn series_k_flag_restricted() {
    let out = tzl(&["series", "logzeta", "--k", "2", "--s", "2", "--N", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tzl(&["series", "logzeta", "--k", "1", "--H", "0,2", "--s", "2", "--N", "10"]);
    assert_eq!(out.status.code(), Some(64)); // conflicting selectors
}

#[test]
fn remainder_command_reports_bound_and_margin() {
    let out = stdout_of(&["series", "remainder", "--H", "0,2", "--s", "2", "--N", "10000"]);
    let rows = data_rows(&out);
    assert_eq!(rows[0], "s,N,k,log_zeta,prime_form,remainder,bound,margin");
    let fields: Vec<&str> = rows[1].split(',').collect();
    let bound: f64 = fields[6].parse().unwrap();
    assert!((bound - 2.612375348685488).abs() < 1e-7);
}
