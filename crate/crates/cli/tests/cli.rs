use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablerep")).args(args).output().expect("spawn stablerep")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tau(shape: &[usize], ty: &[usize], counts: Value) -> Value {
    json!({"shape": shape, "type": ty, "counts": counts})
}

#[test]
fn homdim_example() {
    assert_eq!(ok_json(&["homdim", "--shape", "1", "--type", "1"]), json!({"count": 2}));
    assert_eq!(ok_json(&["homdim", "--shape", "", "--type", "2"]), json!({"count": 1}));
    assert_eq!(ok_json(&["homdim", "--shape", "1", "--type", "1", "--n", "2"])["count"], 2);
}

#[test]
fn structconst_example() {
    let v = ok_json(&["structconst", "--alpha", "dp", "--beta", "dp", "--shape", "1", "--type", "1", "--mid", "1"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    // x - 1 on the identity and x - 2 on dp, each read off at its offset
    let id = tau(&[1], &[1], json!([[0, 1]]));
    let dp = tau(&[1], &[1], json!([[1, 0]]));
    for t in terms {
        let (offset, diffs) = (t["poly"]["offset"].as_i64().unwrap(), t["poly"]["diffs"].clone());
        let shift = if t["tau"] == id {
            1
        } else {
            assert_eq!(t["tau"], dp);
            2
        };
        assert_eq!(diffs, json!([offset - shift, 1]));
    }
}

#[test]
fn structconst_routes_agree() {
    let base = ["structconst", "--alpha", "dp", "--beta", "dp", "--n", "7"];
    let counting = ok_json(&base);
    for route in ["matrix", "enumeration"] {
        let mut args = base.to_vec();
        args.extend(["--route", route]);
        assert_eq!(ok_json(&args)["terms"], counting["terms"], "{route}");
    }
    assert_eq!(counting["terms"][0]["value"], 6);
}

#[test]
fn d_dim_example() {
    assert_eq!(ok_json(&["d-dim", "--lambda", "3,1", "--p", "2"]), json!({"dim": 2}));
    assert_eq!(ok_json(&["d-dim", "--lambda", "2,2", "--p", "2"]), json!({"dim": 0}));
    assert_eq!(ok_json(&["specht-dim", "--lambda", "3,2"]), json!({"dim": 5}));
}

#[test]
fn tabloid_arguments() {
    let inline = r#"{"shape":[1],"type":[1],"counts":[[1,0]]}"#;
    let a = ok_json(&["structconst", "--alpha", inline, "--beta", "dp"]);
    let b = ok_json(&["structconst", "--alpha", "dp", "--beta", "dp"]);
    assert_eq!(a, b);

    let path = std::env::temp_dir().join(format!("stablerep-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, inline).unwrap();
    let at = format!("@{}", path.display());
    let c = ok_json(&["structconst", "--alpha", &at, "--beta", "dp"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(c, b);

    let listed = ok_json(&["tabloids", "--shape", "1", "--type", "1"]);
    let k = listed["tabloids"].as_array().unwrap().iter().position(|t| t["counts"] == json!([[1, 0]])).unwrap();
    let idx = format!("#{k}");
    let d = ok_json(&["structconst", "--alpha", &idx, "--beta", "dp", "--shape", "1", "--mid", "1"]);
    assert_eq!(d, b);
}

#[test]
fn interp_and_period() {
    let v = ok_json(&["interp", "--values", "0,1,3,6,10", "--p", "2"]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["period"], 4);
    let v = ok_json(&["interp", "--values", "-3,-1,1", "--base", "-2"]);
    assert_eq!(v["poly"], json!({"offset": -2, "diffs": [-3, 2]}));

    assert_eq!(ok_json(&["period", "--values", "1,0,1,0,1,0", "--p", "2"]), json!({"found": true, "preperiod": 0, "period": 2}));
    assert_eq!(ok_json(&["period", "--values", "1,2,3,4,5,6,7", "--p", "2"])["found"], false);
}

#[test]
fn eval_t() {
    let v = ok_json(&["eval-t", "--alpha", "dp", "--beta", "dp", "--p", "2", "--t-residue", "1", "--t-exp", "2"]);
    // t = 1: x - 1 vanishes and x - 2 is odd
    assert_eq!(v["terms"], json!([{"tau": tau(&[1], &[1], json!([[1, 0]])), "value": 1}]));
}

#[test]
fn check_equiv() {
    let v = ok_json(&["check-equiv", "--r", "1", "--p", "2", "--n", "5", "--m", "7", "--summary"]);
    assert_eq!(v["agree"], true);
    assert_eq!(v["witness_count"], 0);
    let v = ok_json(&["check-equiv", "--r", "1", "--p", "2", "--n", "5", "--m", "6", "--exploratory"]);
    assert_eq!(v["agree"], false);
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn functors() {
    assert_eq!(ok_json(&["tensor", "--lambda", "1", "--mu", "1"])["summands"], json!([[1], [1, 1]]));
    assert_eq!(ok_json(&["tensor", "--lambda", "1", "--mu", "1", "--n", "5"])["summands"], json!([[3, 1, 1], [4, 1]]));
    assert_eq!(ok_json(&["induce", "--mu", "1", "--lambda", "1", "--n", "6"])["result"], json!([5, 1, 1]));
    let r = ok_json(&["restrict", "--lambda", "1", "--ell", "1"]);
    assert_eq!(r["summands"].as_array().unwrap().len(), 2);
}

#[test]
fn decomp() {
    assert_eq!(ok_json(&["decomp", "--n", "6", "--m", "2", "--p", "2"])["multiplicities"], json!([1, 1, 1]));
}

#[test]
fn fi_coker_of_sum() {
    let pres = r#"{"generators":[1],"relations":[0],"map":[[[{"tau":{"shape":[],"type":[1],"counts":[]},"poly":{"offset":0,"diffs":[1]}}]]]}"#;
    let v = ok_json(&["fi", "--presentation", pres, "--p", "3", "--from", "4", "--to", "12"]);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 9);
    for l in levels {
        let n = l["n"].as_u64().unwrap();
        assert_eq!(l["dim"], n - 1);
        assert_eq!(l["coinvariants"], u64::from(n % 3 == 0));
    }
    assert_eq!(v["coinvariants_period"], json!({"preperiod": 0, "period": 3}));
}

#[test]
fn clmatrix_csv() {
    let out = run(&["clmatrix", "--tabloid", "dp", "--n", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,col,value"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["homdim", "--shape", "2,3", "--type", "1"][..],
        &["d-dim", "--lambda", "2", "--p", "4"],
        &["structconst", "--alpha", "nonsense", "--beta", "dp"],
        &["structconst", "--alpha", "#9", "--beta", "dp", "--shape", "1", "--mid", "1"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn compute_errors_exit_1_with_json() {
    let out = run(&["check-equiv", "--r", "1", "--p", "2", "--n", "5", "--m", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "precondition");
    assert!(err["message"].is_string());

    let out = run(&["period", "--values", "1,0", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "window_too_short");
}

#[test]
fn budget_override() {
    let args = ["clmatrix", "--tabloid", "id", "--shape", "1,1", "--type", "1,1", "--n", "9"];
    let out = Command::new(env!("CARGO_BIN_EXE_stablerep")).args(args).env("STABLEREP_BUDGET", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "over_budget");

    let out = Command::new(env!("CARGO_BIN_EXE_stablerep")).args(args).env("STABLEREP_BUDGET", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    for args in [
        &["tabloids", "--shape", "2", "--type", "1,1"][..],
        &["structconst", "--alpha", "dp", "--beta", "dp", "--format", "csv"],
        &["check-equiv", "--r", "2", "--p", "3", "--n", "5", "--m", "8"],
        &["decomp", "--n", "8", "--m", "3", "--p", "2", "--seed", "11"],
        &["fi", "--presentation", r#"{"generators":[0],"relations":[],"map":[]}"#, "--p", "2", "--from", "3", "--to", "8"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
