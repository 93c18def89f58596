use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grs_hull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grs-hull"))
        .args(args)
        .env_remove("GRS_HULL_MAX_CODEWORDS")
        .env_remove("GRS_HULL_MAX_MINOR_K")
        .output()
        .expect("spawn grs-hull")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TWISTED: [&str; 9] = [
    "construct",
    "--family",
    "twisted_pair",
    "--q",
    "7",
    "--t",
    "3",
    "--k",
    "2",
];

#[test]
fn construct_twisted_pair() {
    let o = grs_hull(&[&TWISTED[..], &["--l", "1"]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let d = json(&o);
    assert_eq!(d["schema"], 1);
    assert_eq!(d["report"]["hull_dim"], 1);
    assert_eq!(d["report"]["mds"], true);
    assert_eq!(d["report"]["length"], 6);
    assert_eq!(d["report"]["classification"], "generic");
}

#[test]
fn construct_ternary() {
    let o = grs_hull(&["construct", "--ternary", "n3k1"]);
    assert_eq!(code(&o), 0);
    let d = json(&o);
    assert_eq!(d["report"]["hull_dim"], 1);
    assert_eq!(d["report"]["min_distance"], 3);
}

#[test]
fn hull_larger_than_dimension_is_rejected() {
    let o = grs_hull(&[&TWISTED[..], &["--l", "3"]].concat());
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn outside_advertised_range_is_rejected() {
    let o = grs_hull(&[
        "construct",
        "--family",
        "twisted_pair",
        "--q",
        "7",
        "--t",
        "3",
        "--k",
        "3",
        "--l",
        "0",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_parameter_is_rejected() {
    let o = grs_hull(&[
        "construct",
        "--family",
        "twisted_pair",
        "--q",
        "7",
        "--k",
        "1",
        "--l",
        "0",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let p = path.to_str().unwrap();
    let o = grs_hull(&[&TWISTED[..], &["--l", "2", "--output", p]].concat());
    assert_eq!(code(&o), 0);
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let v = grs_hull(&["verify", p]);
    assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stderr));
    assert_eq!(json(&v)["report"], stored["report"]);
}

#[test]
fn verify_detects_tampered_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&grs_hull(
            &[&TWISTED[..], &["--l", "1", "--output", p]].concat()
        )),
        0
    );
    let mut d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    d["report"]["hull_dim"] = 2.into();
    std::fs::write(&path, d.to_string()).unwrap();
    assert_eq!(code(&grs_hull(&["verify", p])), 1);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_rejects_zero_multiplier() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "z.json",
        r#"{"field":{"p":7,"m":1,"modulus":[0,1]},"a":[1,2,3],"v":[1,0,1],"k":1,"extended":false}"#,
    );
    let o = grs_hull(&["verify", &p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero"));
}

#[test]
fn verify_generator_matrix() {
    let dir = tempfile::tempdir().unwrap();
    // [1 1 1] over GF(3) is self-orthogonal.
    let p = write(
        dir.path(),
        "g.json",
        r#"{"field":{"p":3,"m":1,"modulus":[0,1]},"generator":[[1,1,1]]}"#,
    );
    let o = grs_hull(&["verify", &p]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["hull_dim"], 1);
}

#[test]
fn verify_rejects_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(code(&grs_hull(&["verify", &p])), 2);
    assert_eq!(code(&grs_hull(&["verify", "/nonexistent/code.json"])), 2);
}

#[test]
fn seed_route() {
    let dir = tempfile::tempdir().unwrap();
    // All of GF(5) with v = 1 is self-orthogonal at m = 2.
    let p = write(
        dir.path(),
        "seed.json",
        r#"{"field":{"p":5,"m":1,"modulus":[0,1]},"a":[0,1,2,3,4],"v":[1,1,1,1,1],"k":2,"extended":false}"#,
    );
    let o = grs_hull(&["construct", "--seed", &p, "--k", "2", "--l", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["report"]["hull_dim"], 1);
}

#[test]
fn census_finds_no_hull_one() {
    let o = grs_hull(&["census"]);
    assert_eq!(code(&o), 0);
    let c = &json(&o)["census"];
    assert_eq!(c["codes"], 130);
    assert_eq!(c["mds_codes"], 8);
    assert!(c["hull_dims"].get("1").is_none());
}

#[test]
fn selftest_passes_and_catches_fault() {
    assert_eq!(code(&grs_hull(&["selftest", "--trials", "5"])), 0);
    let o = grs_hull(&["selftest", "--trials", "5", "--inject-fault"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("duality"));
}

#[test]
fn enumerate_ternary() {
    let o = grs_hull(&["enumerate", "--q", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,variant,q,n,k,l,classification,mds_verified,hull_verified"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with("true,true")));
}

#[test]
fn enumerate_twisted_pair_json() {
    let o = grs_hull(&[
        "enumerate",
        "--family",
        "twisted_pair",
        "--q",
        "7",
        "--t",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let rows = json(&o)["rows"].as_array().unwrap().clone();
    let cells: Vec<(u64, u64)> = rows
        .iter()
        .map(|r| (r["k"].as_u64().unwrap(), r["l"].as_u64().unwrap()))
        .collect();
    assert_eq!(cells, vec![(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]);
}

#[test]
fn enumerate_empty_range() {
    let o = grs_hull(&[
        "enumerate",
        "--family",
        "odd_cosets",
        "--r",
        "7",
        "--m",
        "1",
        "--t",
        "1",
        "--variant",
        "i",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o),
        "family,variant,q,n,k,l,classification,mds_verified,hull_verified\n"
    );
}

#[test]
fn enumerate_invalid_parameters() {
    let o = grs_hull(&[
        "enumerate",
        "--family",
        "even_cosets",
        "--q",
        "49",
        "--m",
        "1",
        "--t",
        "1",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&grs_hull(&["enumerate", "--q", "7"])), 2);
}

#[test]
fn enumerate_reports_unreachable_cell() {
    // The top cell of the extended full-field route hits the quadratic obstruction.
    let o = grs_hull(&[
        "enumerate",
        "--family",
        "additive",
        "--q",
        "9",
        "--e",
        "1",
        "--variant",
        "ii",
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("k=4 l=4"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "enumerate",
        "--family",
        "even_cosets",
        "--q",
        "49",
        "--m",
        "2",
        "--t",
        "2",
    ];
    let a = grs_hull(&args);
    let b = grs_hull(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c1 = grs_hull(&[&TWISTED[..], &["--l", "1"]].concat());
    let c2 = grs_hull(&[&TWISTED[..], &["--l", "1"]].concat());
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn budget_flag_is_validated() {
    let o = grs_hull(&["--max-minor-k", "0", "census"]);
    assert_ne!(code(&o), 0);
}
