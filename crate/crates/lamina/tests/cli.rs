use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn lamina(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lamina")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn every_example_passes() {
    for name in lamina::cli::EXAMPLES {
        let (code, out, err) = lamina(&["example", name]);
        assert_eq!(code, 0, "{name}: {out}{err}");
        assert!(out.ends_with("ok\n"));
    }
}

#[test]
fn unknown_example_is_an_error() {
    let (code, out, err) = lamina(&["example", "nope"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("unknown example"));
}

#[test]
fn shallow_coverage_is_a_mismatch_with_lower_coverage() {
    let (code, out, _) = lamina(&["--emit", "json", "example", "coverage", "--depth", "0", "--far-depth", "2"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["covered"].as_u64().unwrap() < 163);
}

#[test]
fn dehn_csv_schema() {
    let (code, out, _) = lamina(&[
        "--emit",
        "csv",
        "dehn",
        "--surface",
        &fixture("annulus.json"),
        "--core",
        &fixture("laminates/annulus_core.json"),
        "--laminate",
        &fixture("laminates/annulus_bridge.json"),
        "--m",
        "-2..3",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m,b1,b2");
    assert_eq!(lines[1], "-2,1,0");
    assert_eq!(lines[3], "0,-1,0");
    assert_eq!(lines[6], "3,2,-3");
}

#[test]
fn coverage_json_schema() {
    let (code, out, _) = lamina(&["--emit", "json", "coverage", "--quiver", "kronecker", "--depth", "14", "--radius", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["covered", "depth", "radius", "total", "uncovered_points"]);
    assert_eq!(v["covered"], 163);
    assert_eq!(v["uncovered_points"].as_array().unwrap().len(), 6);
    let (code, out, _) = lamina(&["--emit", "csv", "coverage", "--cones", &fixture("kronecker_cones.json"), "--radius", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("point,covered,witness_or_sq_distance\n"));
}

#[test]
fn shear_of_laminate_files() {
    let (code, out, _) = lamina(&[
        "--emit",
        "csv",
        "shear",
        "--surface",
        &fixture("digon.json"),
        "--laminate",
        &fixture("laminates/digon_l2.json"),
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().ends_with(",-1,-1"));
}

#[test]
fn mutate_with_content() {
    let (code, out, _) = lamina(&["--emit", "json", "mutate", "--quiver", "kronecker", "--path", "1", "--content"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gvectors"][0], serde_json::json!([-1, 2]));
    assert!(v["variables"][0].as_str().unwrap().contains("y1"));
    let (code, _, err) = lamina(&["mutate", "--quiver", "kronecker", "--path", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("bad mutation index"));
}

#[test]
fn flip_bfs_lists_digon_triangulations() {
    let (code, out, _) = lamina(&["--emit", "csv", "flip-bfs", "--surface", &fixture("digon.json"), "--depth", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn reports_do_not_depend_on_jobs_or_seed() {
    for emit in ["json", "csv", "text"] {
        let a = lamina(&["--emit", emit, "--jobs", "1", "--seed", "1", "example", "coverage"]);
        let b = lamina(&["--emit", emit, "--jobs", "4", "--seed", "99", "example", "coverage"]);
        assert_eq!(a, b);
    }
}
