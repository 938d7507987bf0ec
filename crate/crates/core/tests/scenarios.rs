use std::fs;
use std::path::Path;

use untrapped::initial_data::{make_family, FamilyTag, Grid};
use untrapped::scenario::{builtin_scenario, emit, load_scenario, report_json, run, Format, RunReport, BUILTIN_SCENARIOS};
use untrapped::slices::slice_table;

fn run_builtin(name: &str) -> RunReport {
    run(&builtin_scenario(name).unwrap())
}

#[test]
fn builtin_exit_statuses() {
    for (name, _) in BUILTIN_SCENARIOS {
        let report = run_builtin(name);
        let expected = if *name == "schwarzschild_horizon" { 3 } else { 0 };
        assert_eq!(report.exit_status, expected, "{name}: {}", report.exit_reason);
    }
}

#[test]
fn model_domains_report_equality() {
    for name in ["euclidean_ball", "cap_r0.5", "cap_r1", "cap_r2"] {
        let report = run_builtin(name);
        let b = report.verify.as_ref().unwrap().ok().unwrap();
        assert!(b.flags.equality_lower && b.flags.equality_upper && b.flags.rigidity_round_sphere, "{name}");
        let j = report.jang.as_ref().unwrap().ok().unwrap();
        assert!(j.max_abs_x < 1e-5, "{name}: max|X| = {}", j.max_abs_x);
        assert!(j.boundary_identity.unwrap().equality, "{name}");
    }
}

#[test]
fn caps_scale_with_radius() {
    for (name, r) in [("cap_r0.5", 0.5), ("cap_r1", 1.0), ("cap_r2", 2.0)] {
        let b = run_builtin(name).verify.unwrap().ok().unwrap().clone();
        // boundary at rho = r: |H| = 2/r and the round sphere has lambda1 = 1/r
        assert!((b.lambda1 * r - 1.0).abs() < 1e-12, "{name}");
        assert!((b.lower_spacetime.unwrap() * r - 1.0).abs() < 1e-6, "{name}");
        assert!((b.upper.unwrap() * r - 1.0).abs() < 1e-6, "{name}");
    }
}

#[test]
fn alexandrov_pairs_are_rigid_only_when_round() {
    for (name, round) in [
        ("flat_round", true),
        ("flat_oval", false),
        ("hyperbolic_round", true),
        ("hyperbolic_oval", false),
    ] {
        let b = run_builtin(name).verify.unwrap().ok().unwrap().clone();
        assert_eq!(b.flags.rigidity_round_sphere, round, "{name}");
        assert!(b.flags.lower_holds && b.flags.upper_holds, "{name}");
    }
}

#[test]
fn non_minkowski_data_skips_upper_bound() {
    for name in ["schwarzschild_exterior", "round_s3_toy"] {
        let b = run_builtin(name).verify.unwrap().ok().unwrap().clone();
        assert!(b.upper.is_none(), "{name}");
        assert!(b.hypotheses.iter().any(|h| h.name == "slice of Minkowski spacetime" && !h.satisfied));
    }
}

#[test]
fn jang_failure_leaves_other_tasks_intact() {
    let mut sc = builtin_scenario("schwarzschild_horizon").unwrap();
    sc.tasks.push(untrapped::scenario::Task::Jang);
    let report = run(&sc);
    assert_eq!(report.exit_status, 3);
    assert!(report.jang.as_ref().unwrap().error().is_some());
    assert!(report.constraints.as_ref().unwrap().ok().is_some());
    assert!(report.horizons.as_ref().unwrap().ok().is_some());
}

#[test]
fn json_round_trip_and_determinism() {
    let report = run_builtin("cap_r1");
    let text = report_json(&report).unwrap();
    let back: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(report_json(&run_builtin("cap_r1")).unwrap(), text);
}

#[test]
fn csv_bundle_passes_slices_through() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_builtin("schwarzschild_exterior");
    let written = emit(&report, Format::CsvBundle, dir.path()).unwrap();
    let names: Vec<_> = written.iter().map(|p| p.file_name().unwrap().to_str().unwrap().to_owned()).collect();
    assert_eq!(names, ["report.json", "constraints.csv", "slices.csv", "spectrum.json"]);

    let d = make_family(FamilyTag::SchwarzschildIsotropic { m: 1.0 }, Grid::new(0.6, 2.0, 1024).unwrap()).unwrap();
    let expected = slice_table(&d, 0.6, 2.0, 101).unwrap();
    let mut reader = csv::Reader::from_path(dir.path().join("slices.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), expected.len());
    for (row, s) in rows.iter().zip(&expected) {
        let rho: f64 = row[0].parse().unwrap();
        let tp: f64 = row[3].parse().unwrap();
        let tm: f64 = row[4].parse().unwrap();
        assert_eq!((rho, tp, tm), (s.rho, s.theta_plus, s.theta_minus));
        assert_eq!(&row[5], s.classification.as_str());
    }
}

#[test]
fn scenario_files_resolve_csv_relative_to_themselves() {
    let dir = tempfile::tempdir().unwrap();
    let mut csv = String::from("rho,a,r,kappa_rho,kappa_t\n");
    for i in 0..=200 {
        let rho = 0.01 + 0.99 * i as f64 / 200.0;
        csv.push_str(&format!("{rho},1,{rho},0,0\n"));
    }
    fs::write(dir.path().join("flat.csv"), csv).unwrap();
    let scenario = r#"{"schema":1,"name":"flat","data":{"family":"maximal_slice_custom","csv":"flat.csv"},
                      "domain":[0.01,1.0],"tasks":["constraints","verify"]}"#;
    let path = dir.path().join("flat.json");
    fs::write(&path, scenario).unwrap();
    let report = run(&load_scenario(&path).unwrap());
    assert_eq!(report.exit_status, 0, "{}", report.exit_reason);
    let b = report.verify.unwrap().ok().unwrap().clone();
    assert!((b.lambda1 - 1.0).abs() < 1e-9);
    assert!(b.flags.equality_lower);
    assert!(!Path::new("flat.csv").exists());
}
