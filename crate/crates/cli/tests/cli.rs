use std::path::PathBuf;
use std::process::{Command, Output};

fn wavefront(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavefront"))
        .args(args)
        .env("WAVEFRONT_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[test]
fn emit_a2_theta() {
    let o = wavefront(&["emit", "--type", "A2", "--what", "theta"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "27*x0^2 + 4*x1^3\n");
}

#[test]
fn emit_json_round_trips() {
    let o = wavefront(&["emit", "--type", "A3", "--what", "theta", "--format", "json"]);
    assert!(o.status.success());
    let p = wavefront_core::parse::from_json(stdout(&o).trim()).unwrap();
    let t = wavefront(&["emit", "--type", "A3", "--what", "theta"]);
    assert_eq!(format!("{p}\n"), stdout(&t));
}

#[test]
fn emit_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.txt");
    let o = wavefront(&["emit", "--type", "A2", "--what", "map", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "x0 = 2*v^3\nx1 = -3*v^2\n");
}

#[test]
fn member_l_set_point() {
    let o = wavefront(&["member", "--type", "A3", "--point", "1/4,0,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "OnZeroSetNotMember");
}

#[test]
fn member_witness() {
    let o = wavefront(&["member", "--type", "D4+", "--point", "0,0,-1,0", "--count"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "Member");
    assert_eq!(v["preimages"], 2);
}

#[test]
fn verify_e6_all() {
    let o = wavefront(&["verify", "--type", "E6", "--suite", "all", "--format", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["certificates"].as_array().unwrap().len() >= 8);
}

#[test]
fn verify_only_replays_one_certificate() {
    let o = wavefront(&["verify", "--type", "E6", "--only", "phi-mod5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2, "{out}");
    assert!(out.starts_with("PASS"));
    let o = wavefront(&["verify", "--type", "E6", "--only", "no-such-certificate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--type", "D5-", "--format", "json"];
    assert_eq!(stdout(&wavefront(&args)), stdout(&wavefront(&args)));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(wavefront(&["emit", "--type", "A1", "--what", "theta"]).status.code(), Some(2));
    assert_eq!(wavefront(&["emit", "--type", "A2", "--what", "nope"]).status.code(), Some(2));
    assert_eq!(wavefront(&["emit", "--type", "A2", "--what", "theta", "--bogus"]).status.code(), Some(2));
    let o = wavefront(&["--json", "member", "--type", "A3", "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let e: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["exit_code"], 2);
}

#[test]
fn budget_exceeded_exits_3() {
    let o = wavefront(&["emit", "--type", "E7", "--what", "R", "--strategy", "modular", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn golden_files_match() {
    let dir = golden_dir();
    let o = wavefront(&["verify", "--golden", "--golden-dir", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISSING"));
}

#[test]
fn golden_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let src = golden_dir().join("A2");
    std::fs::create_dir_all(dir.path().join("A2")).unwrap();
    for f in std::fs::read_dir(src).unwrap() {
        let f = f.unwrap();
        std::fs::copy(f.path(), dir.path().join("A2").join(f.file_name())).unwrap();
    }
    std::fs::write(dir.path().join("A2/theta.txt"), "27*x0^2 - 4*x1^3\n").unwrap();
    let o = wavefront(&["verify", "--golden", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("DIFFERS at line 1") && out.contains("MISSING"));
}

#[test]
fn bench_checksums_agree() {
    let o = wavefront(&["bench", "--type", "D5+", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checksums_agree"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
}
