use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn untrapped(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_untrapped"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn euclidean_ball_verifies_with_equality() {
    let out = untrapped(&["verify", "builtin:euclidean_ball"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let flags = &v["verify"]["result"]["flags"];
    assert_eq!(flags["equality_lower"], true);
    assert_eq!(flags["equality_upper"], true);
    assert_eq!(flags["rigidity_round_sphere"], true);
}

#[test]
fn horizon_in_domain_exits_three() {
    let out = untrapped(&["verify", "builtin:schwarzschild_horizon"]);
    assert_eq!(code(&out), 3);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verify"]["error"]["hypothesis"], "no apparent horizon");
}

#[test]
fn input_errors_exit_four() {
    assert_eq!(code(&untrapped(&["verify", "/nonexistent/scenario.json"])), 4);
    assert_eq!(code(&untrapped(&["verify", "builtin:nope"])), 4);
    assert_eq!(code(&untrapped(&["verify", "builtin:euclidean_ball", "--format", "xml"])), 4);
    assert_eq!(code(&untrapped(&["spectrum"])), 4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"name":"ball","data":{"family":"euclidean"},"tasks":["verify"]}"#).unwrap();
    let out = untrapped(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("/domain"));
}

#[test]
fn csv_bundle_is_written_and_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = untrapped(&[
            "scan-horizons",
            "builtin:schwarzschild_horizon",
            "--grid",
            "256",
            "--format",
            "csv",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    for name in ["report.json", "slices.csv"] {
        let x = fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, fs::read(b.path().join(name)).unwrap(), "{name} differs between runs");
    }
    let slices = fs::read_to_string(a.path().join("slices.csv")).unwrap();
    assert!(slices.starts_with("rho,H,trK_sigma,theta_plus,theta_minus,class"));
    assert_eq!(slices.lines().count(), 102);
    let roots = &report(a.path())["horizons"]["result"]["roots"];
    assert!((roots[0]["rho"].as_f64().unwrap() - 0.5).abs() < 1e-8);
}

#[test]
fn constraints_and_jang_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = untrapped(&[
        "jang",
        "builtin:cap_r1",
        "--format",
        "csv",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("jang.csv").exists());
    let v = report(dir.path());
    assert!(v["jang"]["result"]["max_abs_x"].as_f64().unwrap() < 1e-5);
    assert!(v.get("verify").is_none());

    let out = untrapped(&["constraints", "builtin:euclidean_ball", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(dir.path())["constraints"]["result"]["dec"]["holds"], true);
}

#[test]
fn spectrum_of_a_family_sphere() {
    let out = untrapped(&["spectrum", "--family", "sphere", "--radius", "2", "--k-max", "3/2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let l1 = v["spectrum"]["result"]["lambda1"].as_f64().unwrap();
    assert!((l1 - 0.5).abs() < 1e-3 * 0.5);
}

#[test]
fn spectrum_of_a_profile_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sphere.csv");
    let mut text = String::from("t,f\n");
    let n = 801;
    for i in 0..n {
        let t = std::f64::consts::PI * i as f64 / (n - 1) as f64;
        text.push_str(&format!("{t},{}\n", if i == 0 || i == n - 1 { 0.0 } else { t.sin() }));
    }
    fs::write(&path, text).unwrap();
    let out = untrapped(&["spectrum", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let spectrum: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("spectrum.json")).unwrap()).unwrap();
    assert!((spectrum["lambda1"].as_f64().unwrap() - 1.0).abs() < 1e-3);
}

#[test]
fn list_names_builtins() {
    let out = untrapped(&["list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "builtin:cap_r0.5"));
}
