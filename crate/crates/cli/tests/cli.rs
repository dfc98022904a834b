use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixtrace"))
        .args(args)
        .env_remove("FIXTRACE_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn without_timestamp(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn values(doc: &Value) -> Vec<String> {
    doc["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn flue_mean_purity() {
    let out = run(&["cumulants", "--N", "2", "--a", "0", "--nmax", "1", "--ensemble", "flue"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(values(&doc), ["4/5"]);
    assert_eq!(doc["tool"], "fixtrace");
    assert_eq!(doc["route"], "painleve");
    assert!(doc["version"].is_string());
}

#[test]
fn trace_moments_are_one() {
    let out = run(&["moments", "--N", "3", "--a", "1", "--q", "1", "--kmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(values(&json(&out)).iter().all(|v| v == "1"));
}

#[test]
fn routes_agree_from_the_command_line() {
    let mut means = Vec::new();
    for route in ["sum", "3f2", "narayana", "recurrence"] {
        let out = run(&["moments", "--N", "3", "--a", "1", "--q", "3", "--route", route]);
        assert_eq!(out.status.code(), Some(0), "{route}");
        let doc = json(&out);
        means.push(values(&doc)[1].clone());
    }
    assert!(means.windows(2).all(|w| w[0] == w[1]), "{means:?}");
}

#[test]
fn beta_moments_carry_decimals() {
    let out = run(&["beta-moments", "--N", "2", "--a", "0", "--tau", "1", "--qmax", "1", "--digits", "4"]);
    let doc = json(&out);
    let e = &doc["result"]["entries"][1];
    // m1 = N(τ(N−1)+1+a)(2τ(N−1)+2+a) = 16
    assert_eq!(e["value"], "16");
    assert_eq!(e["decimal"], "16.0000");
    assert_eq!(doc["parameters"]["tau"], "1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["moments"]).status.code(), Some(1));
    assert_eq!(run(&["moments", "--N", "0"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--N", "2", "--route", "3f2", "--kmax", "2"]).status.code(), Some(2));
    assert_eq!(run(&["sun", "--N", "1", "--rho1"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--ensemble", "mp"]).status.code(), Some(2));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn monte_carlo_output_is_reproducible() {
    let base = ["mc", "--ensemble", "flue", "--N", "3", "--a", "1", "--draws", "2500", "--seed", "11"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat());
    let three = run(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    // the job count is not part of the document
    assert_eq!(without_timestamp(&one), without_timestamp(&three));
    let doc = json(&one);
    assert_eq!(doc["seed"]["value"], 11);
    assert_eq!(doc["seed"]["source"], "flag");
    assert_eq!(doc["algorithms"]["rng"], "chacha8-stream-per-shard");
}

#[test]
fn environment_seed_is_echoed() {
    let out = Command::new(env!("CARGO_BIN_EXE_fixtrace"))
        .args(["mc", "--ensemble", "sun", "--N", "2", "--draws", "100"])
        .env("FIXTRACE_SEED", "99")
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(doc["seed"]["value"], 99);
    assert_eq!(doc["seed"]["source"], "environment");
    assert_eq!(doc["env_seed"], "99");
    let out = Command::new(env!("CARGO_BIN_EXE_fixtrace"))
        .args(["mc", "--ensemble", "sun", "--N", "2", "--draws", "100", "--seed", "5"])
        .env("FIXTRACE_SEED", "99")
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(doc["seed"]["value"], 5);
    assert_eq!(doc["env_seed"], "99");
}

#[test]
fn csv_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    let out = run(&["density", "--N", "2", "--grid", "4", "--certify", "--csv", grid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&grid).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,density");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0.0000000000000000,6.0000000000000000"));
    let certs = json(&out)["result"]["certificates"].clone();
    assert_eq!(certs.as_array().unwrap().len(), 2);
    assert!(certs.as_array().unwrap().iter().all(|c| c["certified"] == true));

    let draws = dir.path().join("draws.csv");
    let hist = dir.path().join("hist.csv");
    let out = run(&[
        "mc", "--ensemble", "beta", "--N", "3", "--beta", "1", "--draws", "300", "--statistic", "purity",
        "--statistic", "t:1", "--hist", "10", "--csv", draws.to_str().unwrap(), "--hist-csv", hist.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&draws).unwrap();
    assert!(text.starts_with("# ensemble=beta-laguerre N=3"));
    assert_eq!(text.lines().nth(1), Some("draw,purity,T_1"));
    assert_eq!(text.lines().count(), 302);
    let h = std::fs::read_to_string(&hist).unwrap();
    assert_eq!(h.lines().nth(1), Some("bin_left,bin_right,count,density_estimate"));
    let doc = json(&out);
    let counts: u64 = doc["result"]["histogram"]["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(counts, 900);

    let corr = dir.path().join("rho2.csv");
    let out = run(&["sun", "--N", "3", "--rho2", "--grid", "8", "--csv", corr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&corr).unwrap().lines().count(), 65);
}

#[test]
fn sun_covariance_and_bulk() {
    let doc = json(&run(&["sun", "--N", "4", "--cov", "--p", "2", "--q", "2"]));
    let c = doc["result"]["covariance"]["re"].as_f64().unwrap();
    let u = doc["result"]["unitary_baseline"]["re"].as_f64().unwrap();
    assert!((c - 1.5).abs() < 1e-10 && (u - 1.0).abs() < 1e-10);
    let doc = json(&run(&["sun", "--N", "8", "--bulk", "--grid", "40"]));
    assert!((doc["result"]["sup_remainder"].as_f64().unwrap() - 4.0 / 64.0).abs() < 1e-9);
}

#[test]
fn quick_verification_passes() {
    let out = run(&["verify", "--suite", "quick"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["result"]["passed"], true);
    assert_eq!(doc["result"]["criteria"].as_array().unwrap().len(), 11);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
