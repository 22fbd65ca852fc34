mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use qenum::enumerators::DistributionTables;

const STEANE: &str = "n=7 format=ab
0001111|0000000
0110011|0000000
1010101|0000000
0000000|0001111
0000000|0110011
0000000|1010101
";

fn qenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qenum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qenum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn example_reports_all_identities() {
    let o = qenum(&["example", "513"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("B = X^5 + 15XY^4\n"));
    assert!(s.contains("D = W^5 + 5WX^2Y^2 + 5WX^2Z^2 + 5WY^2Z^2\n"));
    assert!(s.trim_end().ends_with("ALL IDENTITIES HOLD"));
    assert!(!s.contains("MISMATCH"));
}

#[test]
fn krawtchouk_value_and_table() {
    assert_eq!(stdout(&qenum(&["krawtchouk", "--n", "5", "--i", "1", "--x", "0"])), "5\n");
    assert_eq!(stdout(&qenum(&["krawtchouk", "--n", "5", "--i", "2", "--x", "1"])), "2\n");
    let t = stdout(&qenum(&["krawtchouk", "table", "--n", "2"]));
    assert_eq!(t, "i,x0,x1,x2\n0,1,1,1\n1,2,0,-2\n2,1,-1,1\n");
    let bad = qenum(&["krawtchouk", "--n", "3", "--i", "5", "--x", "0"]);
    assert_eq!(bad.status.code(), Some(7));
}

#[test]
fn asymptotic_lp_bound() {
    let o = qenum(&["bound", "lp", "--asymptotic", "--deltax", "0.1865", "--deltaz", "0.1865"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let first = s.lines().next().unwrap();
    let v: f64 = first.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((v - 0.0028).abs() < 5e-3, "{first}");
}

#[test]
fn finite_bounds() {
    let s = stdout(&qenum(&["bound", "singleton", "--n", "5", "--dx", "3", "--dz", "3", "--k", "1"]));
    assert!(s.starts_with("Singleton bound: K <= 2\n"));
    assert!(s.contains("is satisfied"));
    let s = stdout(&qenum(&["bound", "hamming", "--n", "5", "--dx", "3", "--dz", "3"]));
    assert!(s.starts_with("Hamming bound: K <= 128\n"));
    let o = qenum(&["bound", "lp", "--n", "10", "--dx", "3", "--dz", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("linear programming bound: K <= "));
}

#[test]
fn emit_curve_writes_csv() {
    let path = write_temp("curve.csv", "");
    let o = qenum(&["bound", "hamming", "--emit-curve", path.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "delta,bound");
    assert_eq!(lines.len(), 42);
    assert!(lines[1].starts_with("0.000,1.0000"));
}

#[test]
fn enumerate_json_round_trips_and_is_deterministic() {
    let code = write_temp("h2.txt", common::FIVE_QUBIT);
    let args = ["enumerate", "--code", code.to_str().unwrap(), "--format", "json"];
    let a = stdout(&qenum(&args));
    let b = stdout(&qenum(&args));
    assert_eq!(a, b);
    let t = DistributionTables::from_json(a.trim(), false).unwrap();
    assert_eq!(t.to_json(), a.trim());
    assert_eq!(t.k, 2);

    let proj = stdout(&qenum(&[
        "enumerate", "--code", code.to_str().unwrap(), "--format", "json", "--method", "projector",
    ]));
    assert_eq!(proj, a);
}

#[test]
fn dual_and_distances() {
    let code = write_temp("h2d.txt", common::FIVE_QUBIT);
    let p = code.to_str().unwrap();
    let s = stdout(&qenum(&["dual", "--code", p]));
    assert!(s.contains("B⊥ = X^5 + 30X^2Y^3 + 15XY^4 + 18Y^5"));
    let s = stdout(&qenum(&["dual", "--code", p, "--code-only"]));
    assert!(s.starts_with("n=5 format=ab\n"));
    assert_eq!(s.lines().count(), 7);
    let s = stdout(&qenum(&["distances", "--code", p]));
    assert_eq!(s, "symmetric distance: 3\nasymmetric frontier (t_x, t_z): (1, 5) (2, 2) (5, 1)\n");
    let s = stdout(&qenum(&["distances", "--code", p, "--format", "json"]));
    assert_eq!(s, "{\"symmetric_d\":3,\"asymmetric_frontier\":[[1,5],[2,2],[5,1]]}\n");
}

#[test]
fn macwilliams_check_exit_codes() {
    let good = write_temp("good.txt", common::FIVE_QUBIT);
    let o = qenum(&["macwilliams-check", "--code", good.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("ALL IDENTITIES HOLD\n"));

    // XX and ZI anticommute; XX has no counterpart in the dual, so C <= C⊥ fails
    let bad = write_temp("bad.txt", "n=2 format=ab\n11|00\n00|10\n");
    let o = qenum(&["macwilliams-check", "--code", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(6));
    let s = stdout(&o);
    assert!(s.starts_with("warning: code is not symplectic self-orthogonal\n"));
    assert!(s.contains("FAIL C⊥ >= C >= 0"));
    assert!(s.contains("ok   MacWilliams C from C⊥"));

    let overfull = write_temp("overfull.txt", "n=1 format=ab\n1|0\n0|1\n");
    let o = qenum(&["macwilliams-check", "--code", overfull.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(7));
}

#[test]
fn error_exit_codes() {
    let o = qenum(&["enumerate", "--code", "/nonexistent/code.txt"]);
    assert_eq!(o.status.code(), Some(3));
    let junk = write_temp("junk.txt", "n=2 format=f4\n1 q\n");
    assert_eq!(qenum(&["enumerate", "--code", junk.to_str().unwrap()]).status.code(), Some(4));
    let big = write_temp("steane.txt", STEANE);
    let o = qenum(&["enumerate", "--code", big.to_str().unwrap(), "--method", "projector"]);
    assert_eq!(o.status.code(), Some(5));
    let o = Command::new(env!("CARGO_BIN_EXE_qenum"))
        .args(["enumerate", "--code", big.to_str().unwrap(), "--method", "projector"])
        .env("QENUM_MAX_N", "7")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("n = 7, K = 2\nB = X^7 + 21X^3Y^4 + 42XY^6\n"));
    assert_eq!(qenum(&["bound", "singleton", "--n", "5"]).status.code(), Some(7));
    assert_eq!(qenum(&["frobnicate"]).status.code(), Some(2));
}
