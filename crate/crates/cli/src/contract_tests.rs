use clap::Parser;
use serde_json::Value;

use crate::args::{Cli, Format};
use crate::{commands, exit_status, output};

/// Runs a command line in-process: exit status and rendered report.
fn run(args: &[&str]) -> (u8, String) {
    let cli = match Cli::try_parse_from(std::iter::once("spectral-bundles").chain(args.iter().copied())) {
        Ok(cli) => cli,
        Err(e) => return (u8::try_from(e.exit_code()).unwrap(), String::new()),
    };
    let result = commands::run(&cli);
    let text = match &result {
        Ok(env) => output::render(env, cli.global.format).unwrap(),
        Err(_) => String::new(),
    };
    (exit_status(&result.map(|env| env.pass)), text)
}

fn json(args: &[&str]) -> Value {
    let (code, text) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&text).unwrap()
}

fn code(args: &[&str]) -> u8 {
    run(args).0
}

fn rational(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_owned(), v["den"].as_str().unwrap().to_owned())
}

#[test]
fn hrr_examples() {
    let v = json(&["hrr", "-n", "2", "-B", "1", "-q", "1", "--all-methods"]);
    let row = &v["rows"][0];
    for key in ["exact_hrr", "closed_form", "n2_formula"] {
        assert_eq!(row[key], "15");
    }
    assert_eq!(v["pass"], true);
    assert_eq!(json(&["hrr", "-n", "1", "-B", "3", "-q", "0"])["rows"][0]["exact_hrr"], "4");
    assert_eq!(code(&["hrr", "-n", "2", "-B", "0", "-q", "1"]), 2);
    assert_eq!(code(&["hrr", "-n", "2"]), 2);
}

#[test]
fn envelope_shape() {
    let v = json(&["spectrum", "abelian", "-n", "1", "-B", "3", "--delta", "2", "--qmax", "2", "--seed", "11"]);
    assert_eq!(v["schema"], "spectral-bundles/v1");
    assert_eq!(v["command"], "spectrum abelian");
    assert_eq!(v["seed"], 11);
    assert!(v["params"].is_object() && v["residuals"].is_object());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (q, row) in rows.iter().enumerate() {
        assert_eq!(row["q"], q as u64);
        assert_eq!(rational(&row["eigenvalue"]), ((3 * q).to_string(), "1".to_owned()));
        assert_eq!(row["multiplicity"], "2");
        assert!(row["flags"].is_array());
    }
}

#[test]
fn projective_and_grassmann_tables() {
    let v = json(&["spectrum", "pn", "-n", "1", "-B", "3", "--qmax", "1"]);
    let rows: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (rational(&r["eigenvalue"]).0, r["multiplicity"].as_str().unwrap().to_owned()))
        .collect();
    assert_eq!(rows, [("0".into(), "4".into()), ("5".into(), "6".into())]);

    let v = json(&["spectrum", "grassmann", "--mu", "2", "--nu", "2", "-B", "-1"]);
    assert_eq!(rational(&v["rows"][1]["eigenvalue"]).0, "5");
    assert_eq!(v["rows"][1]["multiplicity"], "unknown");
    assert_eq!(code(&["spectrum", "grassmann", "--mu", "2", "--nu", "2", "-B", "1"]), 2);

    let half = json(&["spectrum", "abelian", "-n", "2", "-B", "3/2", "--delta", "1,2", "--qmax", "1"]);
    assert_eq!(rational(&half["rows"][1]["eigenvalue"]), ("3".into(), "2".into()));
    assert_eq!(half["rows"][1]["multiplicity"], "4");
}

#[test]
fn verification_exit_codes() {
    assert_eq!(code(&["verify", "identities", "--seeds", "20"]), 0);
    assert_eq!(code(&["verify", "p1", "-B", "2", "-m", "4", "-d", "12", "--levels", "3"]), 0);
    assert_eq!(code(&["verify", "ladder", "--delta", "2", "--qmax", "3"]), 0);
    let torus = ["verify", "torus", "--N", "24", "-B", "3", "--delta", "2", "--levels", "2"];
    assert_eq!(code(&torus), 0);
    // A tolerance no lattice can meet turns the same run into a failure.
    assert_eq!(code(&[&torus[..], &["--level-tol", "1e-9"]].concat()), 1);
    assert_eq!(code(&["verify", "torus", "-B", "3", "--level-tol", "0"]), 2);
    // The fourth curvature pattern has counterexamples once mu, nu >= 2.
    assert_eq!(code(&["verify", "grassmann", "--mu", "1", "--nu", "4"]), 0);
    assert_eq!(code(&["verify", "grassmann", "--mu", "2", "--nu", "2"]), 1);
}

#[test]
fn csv_and_pretty_output() {
    let (status, text) = run(&["spectrum", "pn", "-n", "2", "-B", "1", "--qmax", "2", "--format", "csv"]);
    assert_eq!(status, 0);
    assert_eq!(text, "q,eigenvalue,multiplicity,flags\n0,0,3,\n1,4,15,\n2,10,42,\n");

    let (status, text) = run(&["ladder", "-B", "1", "--delta", "2", "-q", "2", "--grid", "8", "--format", "csv"]);
    assert_eq!(status, 0);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,re,im,abs"));
    assert_eq!(lines.count(), 64);

    let cli = Cli::try_parse_from(["spectral-bundles", "--format", "pretty", "verify", "grassmann", "--mu", "2", "--nu", "2"]).unwrap();
    assert_eq!(cli.global.format, Format::Pretty);
    let text = output::render(&commands::run(&cli).unwrap(), Format::Pretty).unwrap();
    assert!(text.starts_with("verify grassmann  [FAIL]"));
}
