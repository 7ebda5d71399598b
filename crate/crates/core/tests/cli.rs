use std::fs;
use std::process::{Command, Output};

use lens_spectra::sweep::{run_sweep, SweepConfig, SweepRecord};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lens-spectra")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn spectrum_json_has_k_pairs() {
    let o = bin(&["spectrum", "--q", "25", "--p", "7", "--K", "20", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 20);
    assert!(pairs.iter().all(|p| p.as_array().unwrap().len() == 2));
}

#[test]
fn spectrum_csv_and_methods() {
    let a = bin(&["spectrum", "--q", "12", "--p", "5", "--h", "1", "--K", "15", "--csv"]);
    let b = bin(&["--csv", "spectrum", "--q", "12", "--p", "5", "--h", "1", "--K", "15", "--method", "cyclotomic"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("k,m_plus,m_minus\n"));
    assert_eq!(stdout(&a).lines().count(), 16);
}

#[test]
fn eta_all_lists_the_table() {
    let o = bin(&["eta", "--q", "25", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for v in ["52/25", "-2/5", "4/5", "-2/25", "= 0"] {
        assert!(text.contains(v), "{text}");
    }
    assert_eq!(text.lines().filter(|l| l.contains("eta =")).count(), 6);
    let starred = bin(&["eta", "--q", "10", "--p", "13", "--h", "0", "--eta-variant", "starred", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&starred.stdout).unwrap();
    assert_eq!(v["eta_variant"], "starred");
}

#[test]
fn classify_example() {
    let o = bin(&["classify", "--q", "17", "--p", "4", "--s", "4", "--eps", "-1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eps"]["-1"]["spin_isometric"], true);
    assert_eq!(v["eps"]["-1"]["isospectral"], true);
    assert!(v["eps"].get("+1").is_none());
}

#[test]
fn other_subcommands_run() {
    for args in [
        &["isometry", "--q", "7", "--p", "2", "--s", "4"][..],
        &["equations", "--q", "11", "--p", "2", "--s", "6", "--json"],
        &["digits", "--q", "11", "--p", "2", "--s", "3"],
    ] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
    let d = bin(&["digits", "--q", "11", "--p", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&d.stdout).unwrap();
    assert_eq!(v["digits"], serde_json::json!([9, 1, 1, 10, 4, 4]));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
    let unknown = bin(&["spectrum", "--q", "5", "--p", "2", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
    // bad input: not coprime, missing spin label, odd dimension, bad variant
    for args in [
        &["spectrum", "--q", "10", "--p", "4", "--h", "0"][..],
        &["spectrum", "--q", "10", "--p", "3"],
        &["equations", "--q", "7", "--p", "1", "--s", "2"],
        &["eta", "--q", "5", "--p", "2", "--eta-variant", "other"],
        &["sweep", "--q-min", "1", "--q-max", "4"],
    ] {
        assert_eq!(bin(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn sweep_writes_resumes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let first = bin(&["sweep", "--q-min", "2", "--q-max", "14", "--out", out, "--jobs", "2"]);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("q_12.json");
    let before = fs::read_to_string(&path).unwrap();
    let record: SweepRecord = serde_json::from_str(&before).unwrap();
    assert_eq!(record.q, 12);
    assert!(record.conjecture_holds);
    let csv = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(csv.starts_with("q,p,h,s,h2,"));

    // a corrupted checkpoint is recomputed, a valid one is kept byte for byte
    fs::write(dir.path().join("q_13.json"), "{ truncated").unwrap();
    let cfg = SweepConfig { output_dir: Some(dir.path().to_path_buf()), jobs: 1, ..SweepConfig::new(2, 14) };
    let resumed = run_sweep(&cfg).unwrap();
    assert_eq!(resumed.resumed.len(), 12);
    assert!(!resumed.resumed.contains(&13));
    assert_eq!(fs::read_to_string(&path).unwrap(), before);
    let fresh: SweepRecord = serde_json::from_str(&fs::read_to_string(dir.path().join("q_13.json")).unwrap()).unwrap();
    assert!(fresh.same_content(&resumed.records[11]));
}

#[test]
fn parallel_equals_serial() {
    let serial = run_sweep(&SweepConfig { jobs: 1, ..SweepConfig::new(20, 36) }).unwrap();
    let parallel = run_sweep(&SweepConfig { jobs: 4, ..SweepConfig::new(20, 36) }).unwrap();
    assert_eq!(serial.records.len(), parallel.records.len());
    for (a, b) in serial.records.iter().zip(&parallel.records) {
        assert!(a.same_content(b));
        let strip = |r: &SweepRecord| serde_json::to_string(&SweepRecord { wall_ms: 0, ..r.clone() }).unwrap();
        assert_eq!(strip(a), strip(b));
    }
}
