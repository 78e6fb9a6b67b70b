//! End-to-end checks of the external interfaces: CLI flows, file formats,
//! checkpoint resume through the command line.

use alder::cli::dispatch_io;
use alder::series::decode_series;
use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch_io(args.iter().map(|s| s.to_string()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("alder_iface_{tag}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn count_cache_roundtrips_through_file() {
    let dir = tmp("cache");
    let cache = dir.join("series.bin");
    let csv = dir.join("series.csv");
    let (code, _, _) = run(&[
        "count", "--d", "3", "--a", "2", "--kind", "congruence", "--n-max", "40",
        "--out", csv.to_str().unwrap(), "--cache", cache.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let series = decode_series(&std::fs::read(&cache).unwrap()).unwrap();
    assert_eq!(series.n_max(), 40);
    assert_eq!(series.config.d, 3);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 42); // header + 41 rows
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn distinct_minus_flag_combo_is_usage_error() {
    let (code, _, err) =
        run(&["count", "--d", "3", "--a", "2", "--kind", "distinct", "--minus", "--n-max", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("minus"));
}

#[test]
fn bounds_csv_file_shape() {
    let dir = tmp("bounds");
    let json = dir.join("b.json");
    let csv = dir.join("b.csv");
    let (code, _, _) = run(&[
        "bounds", "--d", "6", "--d", "9",
        "--out", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "d,N1,N2,N3,N4,N5,N6,N7,N8,NQ,Nq,Nd,conditional");
    assert!(lines.next().unwrap().starts_with("6,"));
    assert!(lines.next().unwrap().starts_with("9,"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0]["constant_bundle_fingerprint"].is_string());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_checkpointed_run_resumes_via_cli() {
    let dir = tmp("verify");
    let ckpt_dir = dir.join("ckpts");
    let out1 = dir.join("full.json");
    // Full run with small checkpoint interval.
    let (code, _, _) = run(&[
        "verify", "--d", "9", "--mode", "delta", "--n-cap", "1500",
        "--checkpoint-every", "600",
        "--checkpoint-dir", ckpt_dir.to_str().unwrap(),
        "--out", out1.to_str().unwrap(),
        "--negatives-csv", dir.join("neg.csv").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let negatives = std::fs::read_to_string(dir.join("neg.csv")).unwrap();
    assert_eq!(negatives, "n,delta\n10,-1\n12,-1\n14,-1\n");
    // Resume from the first emitted checkpoint into a fresh report.
    let mut ckpts: Vec<_> = std::fs::read_dir(&ckpt_dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    ckpts.sort();
    assert!(!ckpts.is_empty());
    let out2 = dir.join("resumed.json");
    let (code2, _, _) = run(&[
        "verify", "--d", "9", "--mode", "delta", "--n-cap", "1500",
        "--checkpoint-every", "600",
        "--resume", ckpts[0].to_str().unwrap(),
        "--out", out2.to_str().unwrap(),
    ]);
    assert_eq!(code2, 0);
    let full: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out1).unwrap()).unwrap();
    let resumed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out2).unwrap()).unwrap();
    assert_eq!(full["sign_hash"], resumed["sign_hash"]);
    assert_eq!(full["negatives"], resumed["negatives"]);
    // Sidecar carries the timing, primary report does not.
    assert!(std::fs::read_to_string(format!("{}.meta.json", out1.display()))
        .unwrap()
        .contains("wall_time_ms"));
    assert!(!std::fs::read_to_string(&out1).unwrap().contains("wall_time"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn asymptotics_values_are_finite_decimals() {
    let (code, out, _) = run(&["asymptotics", "--d", "8", "--n", "1000"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "8");
    // main_q and main_Q present and positive decimals.
    for idx in [3usize, 4] {
        assert!(!fields[idx].is_empty());
        assert!(!fields[idx].starts_with('-'));
    }
    // S7 empty without f_err_max in the default config.
    assert_eq!(fields[11], "");
}
