use std::path::Path;
use std::process::{Command, Output};

fn qcms(args: &[&str]) -> Output {
    qcms_with_cache(args, None)
}

fn qcms_with_cache(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qcms"));
    cmd.args(args).env_remove("QCMS_CACHE_DIR").env_remove("RUST_LOG");
    if let Some(dir) = cache {
        cmd.env("QCMS_CACHE_DIR", dir);
    }
    cmd.output().expect("run qcms")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn present_floer_base_case() {
    let o = qcms(&["present", "--ring", "floer", "--genus", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "r=0: (1, 0, 0)\n");
}

#[test]
fn present_classical_is_homogeneous() {
    let o = qcms(&["present", "--ring", "classical", "--genus", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "r=0: (1, 0, 0)\nr=1: (α, β, γ)\n");
    let f = qcms(&["present", "--ring", "floer", "--genus", "1"]);
    assert!(stdout(&f).ends_with("r=1: (α, β - 8, γ)\n"));
}

#[test]
fn present_quantum_hatted_genus_two() {
    let o = qcms(&["present", "--ring", "quantum", "--genus", "2", "--hatted"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("r=2: (α² + β̂ - 8, αβ̂ + 8α + γ̂, αγ̂)"), "{}", stdout(&o));
    let bad = qcms(&["present", "--ring", "floer", "--genus", "2", "--hatted"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn present_json_shape() {
    let o = qcms(&["--format", "json", "present", "--ring", "quantum", "--genus", "3"]);
    let v = json(&o);
    assert_eq!(v["ring"], "quantum");
    assert_eq!(v["triples"].as_array().unwrap().len(), 4);
    assert_eq!(v["triples"][1]["text"], "(α, β + 8, γ)");
}

#[test]
fn gw_genus_three_crosschecks() {
    let o = qcms(&["--format", "json", "gw", "--genus", "3", "--alpha", "8"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["value"], "5632/1");
    assert_eq!(v["crosscheck"]["status"], "pass");
    assert_eq!(v["donaldson"]["sign"], 1);
}

#[test]
fn gw_degree_balance_is_a_usage_error() {
    let o = qcms(&["gw", "--genus", "3", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2a + 4b + 3r = 2, need 6g - 2 = 16"), "{}", stderr(&o));
    let psi = qcms(&["gw", "--genus", "3", "--alpha", "5", "--psi", "1,7"]);
    assert_eq!(psi.status.code(), Some(1));
}

#[test]
fn gw_genus_two_is_flagged() {
    let o = qcms(&["gw", "--genus", "2", "--alpha", "3", "--beta", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("value: -32/1"), "{out}");
    assert!(out.contains("crosscheck: flagged"), "{out}");
}

#[test]
fn verify_suites() {
    let all = qcms(&["verify", "--suite", "all", "--genus", "3"]);
    assert_eq!(all.status.code(), Some(0), "{}", stdout(&all));
    assert!(stdout(&all).contains(", 0 failed"));

    let l17 = qcms(&["--format", "json", "verify", "--suite", "lemma17", "--genus", "4"]);
    assert!(l17.status.success());
    let v = json(&l17);
    assert_eq!(v["suite"], "lemma17");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let dims = qcms(&["verify", "--suite", "dims", "--genus", "5"]);
    assert!(dims.status.success());
    assert!(stdout(&dims).contains("quantum r=5: 35"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(qcms(&["verify", "--suite", "bogus", "--genus", "3"]).status.code(), Some(1));
    assert_eq!(qcms(&["verify", "--suite", "lemma14", "--genus", "2"]).status.code(), Some(1));
    assert_eq!(qcms(&["verify", "--suite", "dims"]).status.code(), Some(1));
    assert_eq!(qcms(&["verify", "--suite", "dims", "--genus", "9"]).status.code(), Some(1));
    assert_eq!(qcms(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qcms(&["--help"]).status.code(), Some(0));
}

#[test]
fn poincare_genus_three() {
    let o = qcms(&["--format", "json", "poincare", "--genus", "3"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["total"], 48);
}

#[test]
fn cache_from_env_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "verify", "--suite", "iso", "--genus", "3"];
    let cold = qcms_with_cache(&args, Some(dir.path()));
    assert!(cold.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    for f in &files {
        std::fs::write(f, b"{\"version\": 1, \"spans\": {}}").unwrap();
    }
    let after = qcms_with_cache(&args, Some(dir.path()));
    assert!(after.status.success());
    assert_eq!(cold.stdout, after.stdout);
    assert!(stderr(&after).contains("ignoring"), "{}", stderr(&after));
}
