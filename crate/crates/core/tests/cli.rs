//! End-to-end runs of the `bchp` binary.

use std::process::{Command, Output};

use bchp::exactring::Poly4;
use bchp::verify::VerifyReport;

fn bchp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bchp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_prints_polynomial() {
    let o = bchp(&["gen", "1", "0", "0", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "H_(1,0,0,0) = (1)·z + (i)·w");
    let o = bchp(&["gen", "0,0,0,0", "--format", "json"]);
    let p = Poly4::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(p, Poly4::one());
}

#[test]
fn gen_routes_agree() {
    let outs: Vec<String> = ["compose", "rodrigues", "operational", "binomial"]
        .iter()
        .map(|r| stdout(&bchp(&["gen", "2", "1", "1", "2", "--route", r, "--format", "json"])))
        .collect();
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn eval_values() {
    let o = bchp(&["eval", "1", "1", "0", "0", "--z", "0", "--w", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"][0], -1.0);
    let o = bchp(&["eval", "1", "0", "0", "1", "--z", "1", "--w", "i", "--format", "csv"]);
    assert!(stdout(&o).ends_with("0e0,0e0\n"));
}

#[test]
fn table_rows_and_norms() {
    let o = bchp(&["table", "0", "--format", "csv"]);
    let lines: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("0,0,0,0,1,0,2.467401100272339"));
    let o = bchp(&["table", "1", "--format", "json"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = bchp(&["table", "2", "--format", "json"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let at = line.find("\"poly\":").unwrap() + 7;
        let s = &line[at..line.len() - 1];
        assert_eq!(Poly4::from_json(s).unwrap().to_json(), s);
        assert!(v["norm_sqr"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bchp(&["table", "13"]).status.code(), Some(2));
    assert_eq!(bchp(&["gen", "1", "x", "0", "0"]).status.code(), Some(2));
    assert_eq!(bchp(&["eval", "0", "0", "0", "0", "--z", "1+", "--w", "0"]).status.code(), Some(2));
    assert_eq!(bchp(&["frobnicate"]).status.code(), Some(2));
    let o = bchp(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("four-routes"));
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = bchp(&["verify", "raising", "--max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reps: Vec<VerifyReport> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reps.len(), 4);
    assert!(reps[2].erratum.is_some() && reps[2].passed());

    let o = bchp(&["verify", "raising", "--max", "2", "--format", "json", "--as-printed-only"]);
    assert_eq!(o.status.code(), Some(1));
    let reps: Vec<VerifyReport> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(reps.iter().filter(|r| !r.passed()).all(|r| r.witness.is_some()));
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ortho.csv");
    let o = bchp(&["verify", "ortho-uchp", "--max", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(VerifyReport::CSV_HEADER));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn wigner_and_ortho_commands() {
    let o = bchp(&["wigner", "1", "0", "1", "1", "--z", "0.2+0.1i", "--w", "-0.3i", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for (a, b) in [("direct", "wigner"), ("direct_scaled", "tensor_wigner")] {
        let d = (v[a][0].as_f64().unwrap() - v[b][0].as_f64().unwrap()).abs()
            + (v[a][1].as_f64().unwrap() - v[b][1].as_f64().unwrap()).abs();
        assert!(d < 1e-10, "{a} vs {b}");
    }
    let o = bchp(&["ortho", "1,1,0,0", "1,1,0,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let got = v["integral"][0].as_f64().unwrap();
    assert!((got - v["expected"].as_f64().unwrap()).abs() < 1e-10);
}
