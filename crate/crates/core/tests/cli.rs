use std::process::{Command, Output};

fn ppv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppv"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("PPV_TRUNC")
        .output()
        .expect("ppv runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn divmod() {
    let o = ppv(&["ore", "divmod", "Dt^2", "Dt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Q = Dt\nR = 0\n");
    let o = ppv(&["--json", "ore", "divmod", "t*Dt + 1", "Dt"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["quotient"], serde_json::json!(["t"]));
    assert_eq!(v["remainder"], serde_json::json!(["1"]));
}

#[test]
fn decompose_reports_residues() {
    let o = ppv(&["--json", "decompose", "t/(x - 1) + 1/(x - 1)^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["logarithmic_part"][0]["residue"], "t");
}

#[test]
fn realize_and_refuse() {
    let o = ppv(&["realize", "--kind", "ga", "--op", "t*Dt - 1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("Ga^{t*Dt - 1}"));
    let o = ppv(&["realize", "--kind", "gm", "--op", "t*Dt + 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("found 1, need 2"));
}

#[test]
fn block_and_truncation_env() {
    let o = ppv(&["--json", "block", "--kind", "cyclic", "--q", "2", "--r", "2", "--e", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["trunc"], serde_json::json!([10, 10]));
    let o = Command::new(env!("CARGO_BIN_EXE_ppv"))
        .args(["--json", "block", "--kind", "gmconst", "--q", "0", "--e", "1"])
        .env("PPV_TRUNC", "6")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["trunc"], serde_json::json!([6, 6]));
}

#[test]
fn orbits_and_certify() {
    let o = ppv(&["orbits", "--gd", "data/gd_e2.json", "--count", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{1, -1}"));
    let dir = std::env::temp_dir().join(format!("ppv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("cert.json");
    let o = ppv(&["certify", "--group", "data/z2.json", "--galois", "data/gd_e2.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], "ppv-certificate/1");
    assert_eq!(v["passed"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selftest_mutants_exit_one() {
    let o = ppv(&["selftest", "--mutate", "dt0", "--trunc", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL criterion 1"));
}

#[test]
fn bad_input_exits_two() {
    let o = ppv(&["ore", "divmod", "Dt^", "Dt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}
