use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dstm(args: &[&str]) -> Output {
    dstm_env(args, &[])
}

fn dstm_env(args: &[&str], vars: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dstm"));
    cmd.args(args)
        .env_remove("DSTM_PRIME_BITS")
        .env_remove("DSTM_TRIALS");
    for (k, v) in vars {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const EXAMPLE: &str = r#"{"shape":[3,3],"degree":2,"entries":[1,1,1,2,2,1,2,2,3]}"#;

#[test]
fn classify_square_shape() {
    let out = dstm(&["classify", "--shape", "3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let c = &r["sections"][0]["detail"];
    assert_eq!(c["strict_n_hypergroupoid"], true);
    assert_eq!((c["k"].as_u64(), c["n"].as_u64()), (Some(2), Some(2)));
    assert_eq!(r["command"]["verb"], "classify");
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));

    let r = json(&dstm(&["classify", "--shape", "3,3,3,3"]));
    assert_eq!(r["sections"][0]["detail"]["strict_n_hypergroupoid"], false);
}

#[test]
fn rank_table_csv() {
    let out = dstm(&[
        "ranks", "--shape", "3,3", "--pmax", "3", "--j", "0", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,dimX,dimR,dimN,dimZ,fR,fZ,ok");
    assert_eq!(lines[3], "2,9,2,2,0,2,0,ok");
    let dim_r: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(dim_r, ["-", "3", "2", "0"]);
}

#[test]
fn verify_suites_pass() {
    let out = dstm(&[
        "verify",
        "--shape",
        "2,2",
        "--suite",
        "contraction",
        "--pmax",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    for suite in ["horn", "normalization", "spectral", "ranks"] {
        let out = dstm(&[
            "verify",
            "--shape",
            "3,3",
            "--suite",
            suite,
            "--samples",
            "10",
        ]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
    }
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "verify",
        "--shape",
        "2,3",
        "--suite",
        "all",
        "--seed",
        "17",
        "--samples",
        "5",
    ];
    let (a, b) = (dstm(&args), dstm(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 17);
    let args = ["generic-rank", "--shape", "3,3", "--p", "1", "--seed", "4"];
    assert_eq!(dstm(&args).stdout, dstm(&args).stdout);
    let r = json(&dstm(&["moduli", "--samples", "3"]));
    assert_eq!(r["seed"], 0);
    assert_eq!(r["pass"], true);
}

#[test]
fn realize_round_trips_tensor() {
    let path = temp_file("example.json", EXAMPLE);
    let out = dstm(&[
        "realize",
        "--shape",
        "3,3",
        "--tensor",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let tensor = &r["sections"][0]["detail"];
    assert_eq!(tensor["entries"][3], "2/1");
    let kernel = &r["sections"][1]["detail"];
    assert_eq!(kernel["ranks"], serde_json::json!([1, 4, 8]));
    assert_eq!(kernel["kernel"]["dims"], serde_json::json!([2, 2, 2]));

    let again = temp_file("example_again.json", &tensor.to_string());
    let out2 = dstm(&[
        "realize",
        "--shape",
        "3,3",
        "--tensor",
        again.to_str().unwrap(),
    ]);
    let r2 = json(&out2);
    assert_eq!(&r2["sections"][0]["detail"], tensor);
    assert_eq!(r2["sections"][1], r["sections"][1]);
}

#[test]
fn realize_with_base_change() {
    let path = temp_file("base_change.json", EXAMPLE);
    let out = dstm(&[
        "realize",
        "--shape",
        "3,3",
        "--tensor",
        path.to_str().unwrap(),
        "--primes",
        "2,3,2147483647",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let bc = r["sections"].as_array().unwrap().last().unwrap();
    assert_eq!(bc["name"], "base-change");
    assert_eq!(bc["detail"]["rational_dims"], serde_json::json!([2, 2, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(dstm(&["classify", "--shape", "3,0"]).status.code(), Some(3));
    assert_eq!(dstm(&["classify", "--shape", "a,b"]).status.code(), Some(3));
    assert_eq!(
        dstm(&["verify", "--shape", "2,2", "--suite", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(dstm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        dstm(&[
            "realize",
            "--shape",
            "3,3",
            "--tensor",
            "/nonexistent/t.json"
        ])
        .status
        .code(),
        Some(3)
    );
    let short = temp_file(
        "short.json",
        r#"{"shape":[3,3],"degree":2,"entries":[1,2,3]}"#,
    );
    let out = dstm(&[
        "realize",
        "--shape",
        "3,3",
        "--tensor",
        short.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension mismatch"));
    let path = temp_file("mismatch.json", EXAMPLE);
    let out = dstm(&[
        "realize",
        "--shape",
        "4,4",
        "--tensor",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(dstm(&["moduli", "--shape", "2,2"]).status.code(), Some(2));
}

#[test]
fn environment_overrides() {
    let args = ["generic-rank", "--shape", "2,2", "--p", "1"];
    let r = json(&dstm_env(
        &args,
        &[("DSTM_PRIME_BITS", "61"), ("DSTM_TRIALS", "3")],
    ));
    let d = &r["sections"][0]["detail"];
    assert_eq!(d["prime"].as_u64(), Some(2_305_843_009_213_693_951));
    assert_eq!(d["trials"], 3);
    assert_eq!(d["rank"], 2);
    assert_eq!(
        dstm_env(&args, &[("DSTM_PRIME_BITS", "40")]).status.code(),
        Some(2)
    );
    let r = json(&dstm(&[&args[..], &["--exact", "--trials", "2"]].concat()));
    assert_eq!(r["sections"][0]["detail"]["exact_rank"], 2);
}
