use std::process::{Command, Output};

use serde_json::Value;

const CUBIC: [&str; 4] = ["--minpoly", "-1,3,3,1", "--root-interval", "0,1"];

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simplex-gauss"));
    cmd.args(args).env_remove("SIMPLEX_GAUSS_DIGITS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn payload(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stdout).expect("json on stdout");
    assert_eq!(v["schema_version"], 1);
    assert!(v["timing"]["wall_ms"].is_number());
    v["payload"].clone()
}

fn cubic(rest: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = rest[..1].iter().map(|s| s.to_string()).collect();
    v.extend(CUBIC.iter().map(|s| s.to_string()));
    v.extend(rest[1..].iter().map(|s| s.to_string()));
    v
}

fn run_owned(args: &[String]) -> Output {
    run(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn cf_examples() {
    let o = run(&["cf", "2/5"]);
    assert_eq!(code(&o), 0);
    let p = payload(&o);
    assert_eq!(p, serde_json::json!({"terms": [2, 2], "status": "finite"}));

    let o = run(&["cf", "--minpoly", "-1,2,1", "--root-interval", "0,1", "a", "--max-terms", "10"]);
    let p = payload(&o);
    assert_eq!(p["terms"], serde_json::json!(vec![2; 10]));
    assert_eq!(p["status"], "truncated");

    let p = payload(&run(&["cf", "0/1"]));
    assert_eq!(p["terms"], serde_json::json!([]));
    assert_eq!(p["status"], "finite");
}

#[test]
fn cubic_orbit_is_periodic() {
    let o = run_owned(&cubic(&["orbit", "a", "a^2"]));
    assert_eq!(code(&o), 0);
    let p = payload(&o);
    assert_eq!(p["status"], "periodic");
    assert_eq!(p["preperiod"], 4);
    assert_eq!(p["period"], 10);
    assert_eq!(p["itinerary"], "A3,B1,B1,A2,B1,B2,B2,B2,B1,B3,B1,B4,B1,B3");
    let recs = p["records"].as_array().unwrap();
    assert_eq!(recs.len(), 14);
    assert_eq!(recs[4]["decimal"], serde_json::json!(["0.847322", "0.587401"]));
    assert_eq!(recs[13]["decimal"][0], "0.306755");
}

#[test]
fn dependent_point_hits_the_edge() {
    let o = run_owned(&cubic(&["orbit", "--dim", "2", "2*a", "a", "2", "--max-steps", "8"]));
    let p = payload(&o);
    let rec = &p["records"][4];
    assert_eq!(rec["exact"][1], "0");
    assert_eq!(p["itinerary"].as_str().unwrap()[..11].to_string(), "A3,B1,A1,B1");
}

#[test]
fn rational_orbit_reaches_zero() {
    let p = payload(&run(&["orbit", "1/3", "1/5"]));
    assert_eq!(p["status"], "reached_zero");
    let last = p["records"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["exact"], serde_json::json!(["0", "0", "1"]));
    let p = payload(&run(&["orbit", "--dim", "3", "7/9", "1/2", "1/9"]));
    assert_eq!(p["status"], "reached_zero");
}

#[test]
fn orbit_dump_round_trips() {
    let p = payload(&run_owned(&cubic(&["orbit", "a", "a^2"])));
    for rec in p["records"].as_array().unwrap() {
        let exact: Vec<String> = rec["exact"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
        let mut args = vec!["orbit".to_string()];
        args.extend(CUBIC.iter().map(|s| s.to_string()));
        args.extend(["--dim".into(), "2".into(), "--max-steps".into(), "0".into(), "--".into()]);
        args.extend(exact.iter().cloned());
        let again = payload(&run_owned(&args));
        assert_eq!(again["records"][0]["exact"], rec["exact"]);
        assert_eq!(again["records"][0]["decimal"], rec["decimal"]);
    }
}

#[test]
fn csv_orbit_format() {
    let o = run(&["orbit", "1/3", "1/5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,symbol,boundary,exact1,exact2,exact3,decimal1,decimal2");
    assert_eq!(lines[1], "0,B3,true,5,3,15,0.333333,0.200000");
    assert_eq!(*lines.last().unwrap(), "# status=reached_zero");
}

#[test]
fn digits_come_from_flag_or_environment() {
    let p = payload(&run_env(&["orbit", "1/3", "1/5"], &[("SIMPLEX_GAUSS_DIGITS", "3")]));
    assert_eq!(p["records"][0]["decimal"], serde_json::json!(["0.333", "0.200"]));
    let p = payload(&run_env(&["orbit", "1/3", "1/5", "--digits", "2"], &[("SIMPLEX_GAUSS_DIGITS", "3")]));
    assert_eq!(p["records"][0]["decimal"], serde_json::json!(["0.33", "0.20"]));
    assert_eq!(code(&run_env(&["orbit", "1/3", "1/5"], &[("SIMPLEX_GAUSS_DIGITS", "many")])), 2);
}

#[test]
fn expected_itinerary_sets_exit_code() {
    let good = run_owned(&cubic(&["itinerary", "a", "a^2", "--expect-itinerary", "A3,B1,B1,A2"]));
    assert_eq!(code(&good), 0);
    assert_eq!(payload(&good)["expectation_met"], true);
    let bad = run_owned(&cubic(&["orbit", "a", "a^2", "--expect-itinerary", "A3,B2"]));
    assert_eq!(code(&bad), 1);
    assert_eq!(payload(&bad)["expectation_met"], false);
    assert_eq!(code(&run_owned(&cubic(&["orbit", "a", "a^2", "--expect-itinerary", "Q3"]))), 2);
}

#[test]
fn gamma_table_for_fixed_point() {
    let dir = std::env::temp_dir().join(format!("sg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("rates.csv");
    let o = run(&[
        "gamma", "--minpoly", "-1,0,1,1", "--root-interval", "0,1", "--dim", "2", "a^2+a", "a", "a+1",
        "--steps", "50", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let p = payload(&o);
    assert_eq!(p["rows"].as_array().unwrap().len(), 50);
    assert_eq!(p["summary"].as_array().unwrap().len(), 3);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 51);
    assert!(csv.starts_with("n,gamma1,gamma2,gamma3\n"));
    for line in csv.lines().skip(3) {
        for g in line.split(',').skip(1) {
            let v: f64 = g.parse().unwrap();
            assert!(v > 1.0 && v < 2.0, "{line}");
        }
    }
}

#[test]
fn gamma_on_golden_edge_converges_to_two() {
    let o = run(&["gamma", "--minpoly", "-1,1,1", "--root-interval", "0,1", "a", "0", "--steps", "30"]);
    let p = payload(&o);
    let col: Vec<f64> = p["rows"].as_array().unwrap()[1..]
        .iter()
        .map(|r| r["gamma1"].as_str().unwrap().parse().unwrap())
        .collect();
    assert!(col.windows(2).all(|w| w[1] < w[0]));
    let last = *col.last().unwrap();
    assert!(last > 2.0 && last < 2.06, "{last}");
}

#[test]
fn lyapunov_and_approx() {
    let p = payload(&run(&["lyapunov", "--minpoly", "-1,1,1", "--root-interval", "0,1", "a", "--n", "40"]));
    assert_eq!(p["q_n"], "165580141");
    assert!(p["value"].as_str().unwrap().starts_with("0.9"));
    let o = run(&["approx", "--prefix", "A2,B3", "--scan-bound", "20"]);
    assert_eq!(code(&o), 0);
    let p = payload(&o);
    assert_eq!(p["nested"], true);
    assert_eq!(p["simplexes"].as_array().unwrap().len(), 2);
    for s in p["simplexes"].as_array().unwrap() {
        assert!(s["det"] == "1" || s["det"] == "-1");
    }
    assert_eq!(p["scan"]["failures"], serde_json::json!([]));
}

#[test]
fn verify_examples_pass() {
    for args in [
        vec!["verify", "--suite", "group-identities"],
        vec!["verify", "--suite", "first-return-equiv", "--dim", "3", "--samples", "1000", "--seed", "7"],
        vec!["verify", "--suite", "rate-bounds", "--quad", "-1,2,1", "--n", "20"],
        vec!["verify", "--suite", "rational-zero", "--max-den", "8"],
        vec!["verify", "--suite", "subshift-face", "--samples", "20"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        let p = payload(&o);
        assert_eq!(p["kind"], "verification");
        assert_eq!(p["failures"], serde_json::json!([]));
    }
    let p = payload(&run(&["verify", "--harness", "rational-zero"]));
    assert_eq!(p["kind"], "evidence");
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["timing"] = Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    let args = ["verify", "--suite", "best-approx", "--samples", "20", "--seed", "11"];
    assert_eq!(strip(run(&args)), strip(run(&args)));
    let args = ["verify", "--suite", "edge-1d", "--samples", "20", "--seed", "3"];
    assert_eq!(strip(run(&args)), strip(run(&args)));
    let a = run(&["orbit", "1/3", "1/5", "--format", "csv"]);
    let b = run(&["orbit", "1/3", "1/5", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["cf", "2/"],
        vec!["cf", "3/2"],
        vec!["cf", "a"],
        vec!["cf", "--minpoly", "-1,2,1", "a"],
        vec!["cf", "--minpoly", "-1,x,1", "--root-interval", "0,1", "a"],
        vec!["cf", "--minpoly", "-1,0,1", "--root-interval", "0,2", "a"],
        vec!["orbit", "1/5", "1/3"],
        vec!["orbit", "--dim", "2", "1/2"],
        vec!["orbit", "--dim", "2", "0", "0", "0"],
        vec!["gamma", "1/2", "1/3"],
        vec!["gamma", "--minpoly", "-1,0,1,1", "--root-interval", "0,1", "--dim", "2", "a^2+a", "a", "a+1", "--steps", "0"],
        vec!["gamma", "--minpoly", "-1,1,1", "--root-interval", "0,1", "a"],
        vec!["lyapunov", "1/3"],
        vec!["approx", "--prefix", "A0"],
        vec!["approx", "--dim", "2", "--prefix", "C1"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--harness", "nope"],
        vec!["verify"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}
