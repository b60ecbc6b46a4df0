use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-eisenstein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn rational_moments_match_golden_json() {
    let o = run(&["eis", "moments", "--g2", "4", "--g3", "0", "--n", "2", "--kmax", "8", "--mode", "rational", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("eis_moments_lemniscate.json"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["result"]["entries"].as_array().unwrap();
    assert_eq!(entries[2]["value"], "-6");
    assert_eq!(entries[6]["value"], "-2448");
}

#[test]
fn second_curve_matches_golden_csv() {
    let o = run(&["eis", "moments", "--g2", "8", "--g3", "3", "--n", "3", "--kmax", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("eis_moments_8_3.csv"));
}

#[test]
fn zeta_matches_golden_text() {
    let o = run(&["zeta", "--p", "5", "--n", "2", "--k", "6", "--prec", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("zeta_5_2_6.txt"));
    // -781 mod 5^8
    assert!(stdout(&o).contains(&format!("{} + O(5^8)", 390_625 - 781)));
}

#[test]
fn output_file_holds_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("padic-eisenstein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeta.json");
    let o = run(&["zeta", "--p", "5", "--n", "2", "--k", "6", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let again = run(&["zeta", "--p", "5", "--n", "2", "--k", "6", "--format", "json"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&again));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["eis", "moments", "--p", "3", "--g2", "4", "--g3", "0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p > 3"));
    assert_eq!(run(&["zeta", "--p", "5", "--n", "10", "--k", "6"]).status.code(), Some(2));
    assert_eq!(run(&["zeta", "--p", "9", "--n", "2", "--k", "6"]).status.code(), Some(2));
    assert_eq!(run(&["zeta", "--p", "5", "--n", "2", "--k", "6", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nothing"]).status.code(), Some(2));
}

#[test]
fn too_small_degree_is_degraded() {
    let o = run(&["zeta", "--p", "5", "--n", "2", "--k", "6", "--prec", "6", "--deg", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("--deg 125"), "{out}");
    assert!(out.contains("+ O(5^2)"), "{out}");
}

#[test]
fn ball_masses_of_a_signed_point_measure() {
    // 2δ_1 - δ_3 has Amice series 2(1 + t) - (1 + t)^3.
    let o = run(&["amice", "invert", "--p", "5", "--coeffs", "1,-1,-3,-1", "--deg", "75", "--prec", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "class,mass,precision\n0,0,3\n1,2,3\n2,0,3\n3,124,3\n4,0,3\n");
}

#[test]
fn fourier_suite_passes() {
    let o = run(&["verify", "--suite", "fourier"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("3 checks, 0 failed\nstatus: ok\n"));
}

#[test]
fn cartier_transform_of_a_point_mass() {
    // δ_1 on Z/4 has transform (1 + t).
    let o = run(&["cartier", "transform", "--p", "2", "--level", "2", "--values", "0,1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,1,0,0\nstatus: ok\n");
}
