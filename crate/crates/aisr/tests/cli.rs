use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn aisr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aisr"))
        .args(args)
        .env_remove("AISR_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn validate() {
    let o = aisr(&["validate", "SR6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "SR6: size 6\nvalid\n");
    let o = aisr(&["validate", "Sc:abc"]);
    assert_eq!(stdout(&o), "Sc:abc: size 8\nvalid\n");
    let o = aisr(&["validate", "SR6*D2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("size 12"));
}

#[test]
fn validate_broken_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, r#"{"name":"broken","size":2,"add":[[0,1],[1,1]],"mul":[[0,1],[1,0]]}"#).unwrap();
    let o = aisr(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(
        stdout(&o),
        "broken: size 2\n\
         violation: x(y+z) = xy+xz fails at x=1, y=0, z=1\n\
         violation: (x+y)z = xz+yz fails at x=0, y=1, z=1\n\
         invalid\n"
    );
}

#[test]
fn io_errors_exit_2() {
    assert_eq!(code(&aisr(&["validate", "no-such-algebra"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{").unwrap();
    assert_eq!(code(&aisr(&["validate", p.to_str().unwrap()])), 2);
    assert_eq!(code(&aisr(&["check", "SR6", "x <= "])), 2);
    assert_eq!(code(&aisr(&["enumerate", "4"])), 2);
    assert_eq!(code(&aisr(&["reproduce", "--claim", "bogus"])), 2);
    assert_eq!(code(&aisr(&["frobnicate"])), 2);
}

#[test]
fn check() {
    let o = aisr(&["check", "SR6", "sigma:3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("holds\n"));
    let o = aisr(&["check", "SR6", "x1*x4 <= x1*x2 + x2*x3 + x3*x4"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("fails at x1=2, x2=6, x3=5, x4=4\n"), "{}", stdout(&o));
    let o = aisr(&["check", "D2", "x <= x^2"]);
    assert_eq!(stdout(&o), "x <= x^2\nholds\n");
}

#[test]
fn budget_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_aisr"))
        .args(["check", "SR6", "sigma:3"])
        .env("AISR_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceed the budget of 1000"));
}

#[test]
fn decide() {
    let o = aisr(&["decide", "--variety", "Scab", "x*y <= x + x*z"]);
    assert_eq!((code(&o), stdout(&o)), (0, "x*y <= x + x*z: holds (cond_ii)\n".into()));
    let o = aisr(&["decide", "--variety", "sr6", "I26022301"]);
    assert_eq!(code(&o), 1);
    let o = aisr(&["decide", "--variety", "Scab", "I26022301"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("holds (cond_iv)"));
}

#[test]
fn free() {
    let o = aisr(&["free", "--target", "x1*x2 + x2*x3 + x3*x1", "--pattern", "x^2"]);
    assert_eq!((code(&o), stdout(&o)), (0, "FREE\n".into()));
    let o = aisr(&["free", "--target", "a*b + b*c", "--pattern", "x*y"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), golden("free_path.txt"));
}

#[test]
fn graph() {
    let o = aisr(&["graph", "a*b + b*c + c*a + d*e"]);
    assert_eq!(stdout(&o), golden("graph_triangle.txt"));
    let o = aisr(&["graph", "a*b + b*c + c*d"]);
    assert_eq!(stdout(&o), golden("graph_path.txt"));
}

#[test]
fn prove_round_trip_and_corruption() {
    let o = aisr(&["prove", "--certify", "--basis", "Scab", "--emit", "q <= x + x*y + z*w"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, &text).unwrap();
    let o = aisr(&["prove", "--check", good.to_str().unwrap()]);
    assert_eq!((code(&o), stdout(&o)), (0, "valid\n".into()));

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["links"][1]["context"] = Value::String("z".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = aisr(&["prove", "--check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("invalid: step 1:"), "{}", stdout(&o));
}

#[test]
fn prove_search() {
    let o = aisr(&["prove", "--search", "--basis", "Scab", "--depth", "2", "x <= x^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("found a derivation in 1 steps"));
    let o = aisr(&["prove", "--search", "--basis", "Scab", "--depth", "1", "x1*x2 <= x1 + x2"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn enumerate() {
    let o = aisr(&["enumerate", "2"]);
    assert!(stdout(&o).starts_with("4 ai-semirings of order 2 up to isomorphism\n"));
    let o = aisr(&["enumerate", "2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

/// Elapsed times vary between runs.
fn normalise(mut v: Value) -> Value {
    for it in v["items"].as_array_mut().unwrap() {
        it["elapsed_ms"] = Value::from(0);
    }
    v
}

#[test]
fn reproduce_json_schema_is_pinned() {
    let o = aisr(&["reproduce", "--claim", "axioms", "--claim", "minimality", "--json"]);
    assert_eq!(code(&o), 0);
    let actual = normalise(serde_json::from_str(&stdout(&o)).unwrap());
    let expected: Value = serde_json::from_str(&golden("reproduce_axioms_minimality.json")).unwrap();
    assert_eq!(actual, expected);
}

#[test]
fn reproduce_all() {
    let o = aisr(&["reproduce", "--all", "--sigma-max", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "aisr.reproduce/1");
    let ids: Vec<&str> = v["items"].as_array().unwrap().iter().map(|i| i["id"].as_str().unwrap()).collect();
    let mut registry: Vec<&str> = aisr::claims::CLAIMS.iter().map(|c| c.id).collect();
    registry.sort();
    assert_eq!(ids, registry);
    for it in v["items"].as_array().unwrap() {
        assert_eq!(it["status"], "verified", "{}", it["id"]);
    }
}

#[test]
fn reproduce_text() {
    let o = aisr(&["reproduce", "--claim", "freeness", "--m-max", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("1 verified, 0 refuted, 0 skipped\n"));
    let o = aisr(&["reproduce", "--claim", "lattice"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("R6 = {6}"));
}
