//! End-to-end checks of the command-line surface.

use std::process::{Command, Output};

fn updown(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_updown"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn seq_prints_csv_with_header() {
    let out = updown(&["seq", "--key", "F2:UD:k=3", "--n-max", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "n,count");
    assert_eq!(lines[1], "0,0");
    assert_eq!(lines[4], "3,1"); // x³/(1-x²)
    assert_eq!(lines[6], "5,1");
}

#[test]
fn seq_json_carries_exact_series_repr() {
    let out = updown(&["seq", "--key", "F1:UD", "--n-max", "7", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["key"], "F1:UD");
    assert_eq!(doc["series"]["min_exp"], 3);
    assert_eq!(doc["series"]["coeffs"][0], "1");
    assert_eq!(doc["series"]["coeffs"][2], "2");
    assert_eq!(doc["values"][7]["count"], "5");
}

#[test]
fn seq_rejects_out_of_domain_keys() {
    let out = updown(&["seq", "--key", "F10:UD:r=4", "--n-max", "5"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("r = 0..3"), "stderr: {err}");
}

#[test]
fn verify_match_and_registered_mismatch_exit_codes() {
    let ok = updown(&["verify", "--key", "F2:UD:k=4", "--n-max", "8"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("Match"));
    // a registered suspect mismatches but still exits 0
    let suspect = updown(&["verify", "--key", "F7:A", "--n-max", "6"]);
    assert!(suspect.status.success());
    let text = stdout(&suspect);
    assert!(text.contains("Mismatch") && text.contains("known-suspect"), "{text}");
}

#[test]
fn oracle_counts_and_distributions() {
    let out = updown(&[
        "oracle", "--n", "6", "--class", "A", "--avoid", "1-3-2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("6,5"));
    let out = updown(&[
        "oracle", "--n", "5", "--class", "UD", "--exactly", "1-3-2:1",
    ]);
    assert!(stdout(&out).contains("5,4"));
    let out = updown(&[
        "oracle", "--n", "3", "--class", "UD", "--avoid", "1-3-2", "--stat", "rlmax",
    ]);
    let text = stdout(&out);
    assert!(text.contains("n,stat_value,count"), "{text}");
    assert!(text.contains("3,2,1"), "{text}");
    let out = updown(&[
        "oracle", "--n", "7", "--class", "UD", "--avoid", "1-3-2",
        "--stat", "occ:1-2-3", "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let total: u64 = doc["distribution"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 5);
}

#[test]
fn oracle_env_override_for_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_updown"))
        .args(["oracle", "--n", "9", "--class", "A"])
        .env("UPDOWN_N_CAP", "8")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("cap 8"), "stderr: {err}");
}

#[test]
fn stats_distribution_table() {
    let out = updown(&[
        "stats", "--family", "classical", "--class", "UD", "--assign", "rlmax",
        "--n-max", "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,stat_value,count"));
    assert!(text.contains("3,2,1"), "{text}");
    assert!(text.contains("7,4,1"), "{text}");
}

#[test]
fn cf_expansion_matches_class_series() {
    let out = updown(&["cf", "--shape", "st1", "--assign", "length", "--order", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("3,0,1"), "{text}");
    assert!(text.contains("5,0,2"), "{text}");
    assert!(text.contains("9,0,14"), "{text}");
    let out = updown(&["cf", "--shape", "st2", "--assign", "mark:3", "--order", "5"]);
    let text = stdout(&out);
    assert!(text.contains("5,1,1"), "{text}");
}

#[test]
fn suite_writes_ledger_and_exits_green() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("ledger.jsonl");
    let cache = dir.path().join("cache");
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        serde_json::json!({"n_max": 6, "n_max_light": 6, "cache_dir": cache.to_str().unwrap()})
            .to_string(),
    )
    .unwrap();
    let out = updown(&[
        "suite",
        "--config",
        config.to_str().unwrap(),
        "--ledger",
        ledger.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("green"), "{text}");
    let rows = std::fs::read_to_string(&ledger).unwrap();
    assert!(rows.lines().count() > 250, "ledger rows: {}", rows.lines().count());
    // every row parses back as a report
    for line in rows.lines() {
        let _: updown::harness::VerificationReport = serde_json::from_str(line).unwrap();
    }
    // two runs produce identical ledgers modulo the run-varying fields
    let ledger2 = dir.path().join("ledger2.jsonl");
    let out2 = updown(&[
        "suite",
        "--config",
        config.to_str().unwrap(),
        "--ledger",
        ledger2.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    let normalize = |path: &std::path::Path| -> Vec<String> {
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .map(|l| {
                let r: updown::harness::VerificationReport = serde_json::from_str(l).unwrap();
                serde_json::to_string(&r.normalized()).unwrap()
            })
            .collect()
    };
    assert_eq!(normalize(&ledger), normalize(&ledger2));
}
