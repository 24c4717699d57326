use std::process::{Command, Output};

fn catsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catsl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simplify_merges_divided_powers() {
    let o = catsl(&["simplify", "--word", "E1 E1", "--weight", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "\u{27e8}g h^-1 + g^-1 h\u{27e9}\u{b7}E^(2)");
}

#[test]
fn simplify_drops_identity_at_weight_zero() {
    let o = catsl(&["simplify", "--word", "F1 E1", "--weight", "0", "--window", "{-2,0,2}"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("id"), "{out}");
    assert_eq!(out.matches('\u{b7}').count(), 1);
}

#[test]
fn simplify_negative_weight() {
    let o = catsl(&["simplify", "--word", "F E", "--weight", "-2", "--window", "[-4,4]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1\u{b7}E^(1)F^(1) \u{2295} \u{27e8}g h^-1 + g^-1 h\u{27e9}\u{b7}id");
}

#[test]
fn parse_error_is_usage() {
    let o = catsl(&["simplify", "--word", "E^(x)", "--weight", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
}

#[test]
fn unsupported_rewrite_is_reported() {
    let o = catsl(&["simplify", "--word", "E1 E2 E2 E1", "--weight", "(0,2,2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "kernel-oracle", "--N", "3", "--seed", "7", "--json"];
    let a = catsl(&args);
    let b = catsl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "kernel-oracle");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["params"]["seed"], 7);
}

#[test]
fn verify_braid_table() {
    let o = catsl(&["verify", "braid", "--m", "3", "--N", "4", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS braid"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(catsl(&["verify", "tensor", "--m", "2", "--N", "0"]).status.code(), Some(2));
    assert_eq!(catsl(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(catsl(&["verify"]).status.code(), Some(2));
    assert_eq!(catsl(&["verify", "tensor", "--max-basis", "10", "--N", "5"]).status.code(), Some(2));
}

#[test]
fn config_file_with_override() {
    let dir = std::env::temp_dir().join(format!("catsl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.conf");
    std::fs::write(&path, "k = 1\nN = 2\n").unwrap();
    let o = catsl(&["verify", "strata", "--config", path.to_str().unwrap(), "--N", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["k"], 1);
    assert_eq!(v["params"]["N"], 6);
    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(catsl(&["verify", "strata", "--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn strata_outputs() {
    let o = catsl(&["strata", "--k", "2", "--N", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert!(rows.as_array().unwrap().iter().all(|r| r["totalDim"] == 8));
    let o = catsl(&["strata", "--k", "2", "--N", "4"]);
    assert!(stdout(&o).contains("3 components, dimension 8"));
    assert_eq!(catsl(&["strata", "--k", "3", "--N", "4"]).status.code(), Some(2));
}
