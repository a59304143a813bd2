use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoheight"))
        .args(args)
        .env_remove("MONOHEIGHT_PRECISION")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["schema"], "monoheight/1");
    v
}

fn fails(args: &[&str], code: i32, kind: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let v = json_of(&out);
    assert_eq!(v["schema"], "monoheight/1");
    assert_eq!(v["error"]["kind"], kind);
    assert_eq!(v["error"]["exit_code"], code);
}

#[test]
fn analyze_fibonacci() {
    let v = ok(&["analyze", "--matrix", &data("fib.json")]);
    assert_eq!(v["charpoly"], "x^2-x-1");
    assert_eq!(v["rho"], "(1+sqrt(5))/2");
    assert_eq!((v["l"].as_u64(), v["r"].as_u64(), v["rbar"].as_u64()), (Some(0), Some(1), Some(2)));
    assert_eq!(v["limit_matrix"]["exact"], true);
    assert_eq!(v["jordan_basis"]["field"], "Q(sqrt(5))");
}

#[test]
fn analyze_inline_and_unsupported_basis() {
    let v = ok(&["analyze", "--matrix", "[[1,1],[0,1]]"]);
    assert_eq!(v["l"], 1);
    let v = ok(&["analyze", "--matrix", &data("cubic.json")]);
    assert!(v["jordan_basis"]["error"].as_str().unwrap().contains("unsupported"));
}

#[test]
fn height_of_point() {
    let v = ok(&["height", "--point", "4/9,6"]);
    assert_eq!(v["weil_height"]["exact"], "log(2) + 3*log(3)");
    assert_eq!(v["profile"]["product_formula"], true);
}

#[test]
fn canonical_height_fibonacci() {
    let v = ok(&["canonical-height", "--matrix", &data("fib.json"), "--point", "2,3"]);
    let h = &v["canonical_height"];
    assert_eq!(h["exact"], "((5+sqrt(5))/10)*log(2) + (sqrt(5)/5)*log(3)");
    assert!(h["value"]["value"].as_str().unwrap().starts_with("0.992880363370"));
    assert_eq!(v["truncated"]["summed"]["n"], 12);
}

#[test]
fn system_report_diagonal() {
    let v = ok(&["system", "--system", &data("diag_pair.json"), "--point", "2,3", "--n-max", "6"]);
    assert_eq!(v["star"]["status"], "certified_diagonal");
    assert_eq!(v["delta_exact"]["exact"], "5");
    assert_eq!(v["orbit"]["status"], "infinite");
}

#[test]
fn baker_bound_object() {
    let v = ok(&["baker-bound", "--matrix", &data("jordan2.json"), "--point", "2,3"]);
    for k in ["log10_neg_log_C", "A_prime_log", "E_prime_log", "D_prime_log"] {
        assert!(v[k]["value"].is_string(), "{k}");
    }
    assert_eq!(v["n_star"], 7);
    assert_eq!(v["hypotheses"]["height_exceeds_c"]["holds"], true);
    assert!(v["variants"]["irreducible"].is_null());
}

#[test]
fn classify_orbits() {
    let v = ok(&["classify", "--matrix", &data("fib.json"), "--point", "1,-1"]);
    assert_eq!(v["orbit"]["status"], "finite");
    let v = ok(&["classify", "--system", &data("diag_pair.json"), "--point", "2,1"]);
    assert_eq!(v["orbit"]["status"], "infinite");
}

#[test]
fn exit_codes() {
    fails(&["analyze", "--matrix", &data("nonsquare.json")], 2, "dimension_mismatch");
    fails(&["analyze", "--matrix", "[[1,2],[2,4]]"], 2, "domain");
    fails(&["height", "--point", "0,1"], 2, "parse");
    fails(&["analyze", "--matrix", "no-such-file.json"], 2, "parse");
    fails(&["baker-bound", "--matrix", "[[1,1],[0,1]]", "--point", "2,3"], 2, "domain");
    fails(&["baker-bound", "--matrix", &data("cubic.json"), "--point", "2,3,5"], 3, "unsupported");
    fails(&["system", "--system", &data("diag_pair.json"), "--point", "2,3", "--word-budget", "1"], 4, "budget");
}

#[test]
fn deterministic_output() {
    let args = ["system", "--system", &data("diag_pair.json"), "--point", "2,3", "--n-max", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["baker-bound", "--matrix", &data("jordan2.json"), "--point", "4,3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_monoheight"))
        .args(["analyze", "--matrix", &data("fib.json")])
        .env("MONOHEIGHT_PRECISION", "256")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["precision"], 256);
    let v = ok(&["analyze", "--matrix", &data("fib.json"), "--precision", "64"]);
    assert_eq!(v["precision"], 64);
}

#[test]
fn text_format() {
    let out = run(&["analyze", "--matrix", &data("fib.json"), "--format", "text"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("charpoly: x^2-x-1"));
    assert!(s.contains("schema: monoheight/1"));
}
