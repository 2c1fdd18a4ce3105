use std::process::{Command, Output};

fn ozcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ozcl"))
        .args(args)
        .env_remove("OZCL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ozcl(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn g_and_table() {
    assert_eq!(stdout(&["g", "6"]), "w2^3 + w3^2\n");
    assert_eq!(stdout(&["g", "13"]), "0\n");
    assert_eq!(stdout(&["table", "g", "--range", "0..26"]), golden("table_g.txt"));
    assert_eq!(stdout(&["table", "g"]), golden("table_g.txt"));
}

#[test]
fn zcl_prints_value() {
    assert_eq!(stdout(&["zcl", "21"]), "zcl(W_21) = 21\n");
    let out = stdout(&["zcl", "22", "--witness", "--closed-form-check"]);
    assert!(out.starts_with("zcl(W_22) = 22\n"), "{out}");
    assert!(out.contains("matches closed form"));
}

#[test]
fn zcl_range_csv() {
    let out = stdout(&["zcl-range", "6", "8", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,zcl,witness_beta,witness_gamma");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("6,2,"));
    assert!(lines[2].starts_with("7,7,"));
}

#[test]
fn tables_match_golden() {
    assert_eq!(stdout(&["table", "heights", "--range", "7..64"]), golden("heights.txt"));
    assert_eq!(
        stdout(&["table", "tc", "--t", "4..5", "--format", "csv"]),
        golden("tc_t4_5.csv")
    );
    let small: String = stdout(&["table", "small-n"])
        .lines()
        .map(|l| l.split('\t').take(2).collect::<Vec<_>>().join("\t") + "\n")
        .collect();
    assert_eq!(small, golden("small_n.txt"));
}

#[test]
fn basis_counts_match_golden() {
    for line in golden("basis_counts.txt").lines() {
        let (n, counts) = line.split_once('\t').unwrap();
        let doc: serde_json::Value = serde_json::from_str(&stdout(&["basis", n, "--format", "json"])).unwrap();
        let got: Vec<String> = doc["counts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(got.join(" "), counts, "n={n}");
    }
}

#[test]
fn single_value_commands() {
    assert_eq!(stdout(&["nf", "22", "9", "2"]), "w2^3*w3^6\n");
    assert_eq!(stdout(&["nf", "22", "12", "1"]), "0\n");
    assert_eq!(stdout(&["height", "24"]), "height(w2) = 12\nheight(w3) = 7\n");
    assert_eq!(
        stdout(&["height", "24", "--closed"]),
        stdout(&["height", "24", "--brute"])
    );
    let bounds = stdout(&["bounds", "22"]);
    assert!(bounds.contains("23 <= zcl(G~(22,3)) <= 24"), "{bounds}");
    assert!(bounds.contains("exact value: not established"));
    let gb = stdout(&["groebner", "15"]);
    assert!(gb.starts_with("f0\tLM w2^7\tw2^7 + w2^4*w3^2 + w2*w3^4\n"), "{gb}");
}

#[test]
fn verify_exits_zero_and_is_deterministic() {
    let a = stdout(&["verify", "all", "--t-max", "5"]);
    let b = stdout(&["verify", "all", "--t-max", "5", "--jobs", "1"]);
    assert_eq!(a, b);
    assert!(!a.contains("FAILED"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["zcl", "21", "--bogus"][..],
        &["zcl"],
        &["verify", "everything"],
        &["table", "g", "--range", "9..3"],
        &["zcl", "5"],
        &["g", "3", "--format", "yaml"],
    ] {
        assert_eq!(ozcl(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cache_is_written_and_stale_entries_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(stdout(&["--cache-dir", d, "zcl", "21"]), "zcl(W_21) = 21\n");
    let path = dir.path().join("zcl-21.json");
    let entry: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(entry["kind"], "zcl");
    assert_eq!(entry["artifact_version"], env!("CARGO_PKG_VERSION"));

    // A forged entry from another version must be ignored.
    let mut forged = entry.clone();
    forged["artifact_version"] = "0.0.0-old".into();
    forged["value"]["zcl"] = 99.into();
    std::fs::write(&path, forged.to_string()).unwrap();
    assert_eq!(stdout(&["--cache-dir", d, "zcl", "21"]), "zcl(W_21) = 21\n");

    // A forged entry with the current version is trusted; this is what makes ranges resumable.
    let mut current = entry;
    current["value"]["zcl"] = 99.into();
    std::fs::write(&path, current.to_string()).unwrap();
    assert_eq!(stdout(&["--cache-dir", d, "zcl", "21"]), "zcl(W_21) = 99\n");

    let out = Command::new(env!("CARGO_BIN_EXE_ozcl"))
        .args(["zcl", "22"])
        .env("OZCL_CACHE_DIR", d)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("zcl-22.json").exists());
}

#[test]
fn closed_form_check_reports_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    stdout(&["--cache-dir", d, "zcl", "21"]);
    let path = dir.path().join("zcl-21.json");
    let mut entry: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    entry["value"]["zcl"] = 20.into();
    std::fs::write(&path, entry.to_string()).unwrap();
    let out = ozcl(&["--cache-dir", d, "zcl", "21", "--closed-form-check"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n=21 zcl(W_n): expected 21, got 20"));
}
