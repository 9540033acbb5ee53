use std::process::{Command, Output};

fn uuniv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uuniv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn nice_tree_encoding_prints_levels_to_depth_four() {
    let o = uuniv(&["encode", "--space", "cantor", "--codec", "nice-tree", "0|11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("level 2: 00,01,11\n"), "{out}");
    assert!(out.lines().last().unwrap().starts_with("level 4: 0000,"), "{out}");
}

#[test]
fn z_encoding_of_a_single_point() {
    let o = uuniv(&["encode", "--space", "z", "--codec", "z", "rows: {(2,5)}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n = 23\nx↾16 = 0000000000000000\n");
}

#[test]
fn decode_inverts_encode() {
    let o = uuniv(&["decode", "--space", "z", "23, (0)"]);
    assert_eq!(stdout(&o), "rows: {(2,5)}\n");
    let o = uuniv(&["decode", "--codec", "nice-tree", "ε,0,1,00,01,11"]);
    assert_eq!(stdout(&o), "0|11\n");
}

#[test]
fn malformed_input_exits_two_with_a_location() {
    let o = uuniv(&["encode", "--space", "cantor", "0|1("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at byte"));
}

#[test]
fn codec_space_mismatch_exits_two() {
    let o = uuniv(&["encode", "--space", "baire", "--codec", "nice-tree", "<1>"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(uuniv(&["verify", "--suite", "z-index", "--depth", "20"]).status.code(), Some(0));
    assert_eq!(uuniv(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    // One bit of the parameter cannot tell 1024 sets apart.
    let o = uuniv(&["verify", "--suite", "z-uniqueness", "--depth", "1", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"verdict\": \"depth-insufficient\""));
}

#[test]
fn isolation_suite_reports_the_certificate() {
    let o = uuniv(&["verify", "--suite", "nt-isolation", "--depth", "3", "--json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "pass");
    assert!(v[0]["witness"].as_str().unwrap().contains("N(∅,{ε})"));
}

#[test]
fn records_keep_field_order() {
    let o = uuniv(&["verify", "--suite", "brouwer", "--json"]);
    let out = stdout(&o);
    let keys = ["\"claim\"", "\"instance\"", "\"depth\"", "\"verdict\"", "\"witness\"", "\"elapsed_ms\""];
    let pos: Vec<usize> = keys.iter().map(|k| out.find(k).expect(k)).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{out}");
}

#[test]
fn fuzz_is_deterministic_per_seed() {
    let args = ["fuzz", "--codec", "good-filter-omega", "--count", "1000", "--seed", "7", "--json", "--no-timing"];
    let a = uuniv(&args);
    let b = uuniv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("elapsed_ms"));
}

#[test]
fn fuzz_rejects_zero_count() {
    assert_eq!(uuniv(&["fuzz", "--codec", "z", "--count", "0"]).status.code(), Some(2));
    assert_eq!(uuniv(&["fuzz", "--count", "5"]).status.code(), Some(2));
}

#[test]
fn certify_writes_a_passing_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = uuniv(&["certify", "--count", "50", "--no-timing", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let records = v.as_array().unwrap();
    assert!(records.len() > 15);
    assert!(records.iter().all(|r| r["verdict"] == "pass"));
}
