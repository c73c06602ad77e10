use std::process::Command;

use maya_jacobi::algebra::{int, rat};
use maya_jacobi::cli::{MayaReport, PolyReport, ReduceReport, SpectrumReport, VerifyReport};
use maya_jacobi::maya::Equivalence;
use maya_jacobi::{AffineExp, ParamPoly, ParamRat};
use serde::de::DeserializeOwned;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_maya-jacobi"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Parses the JSON output and checks it re-serializes byte for byte.
fn json<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> T {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = run(&full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: T = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", r.stdout);
    v
}

fn lin(a: i64, b: i64, c: i64) -> ParamPoly {
    ParamPoly::linear(int(a), int(b), int(c))
}

#[test]
fn poly_three_state_example() {
    let r: PolyReport = json(&["poly", "I1,II2,III1"]);
    assert_eq!(r.degree, 5);
    assert_eq!(r.exp_s, AffineExp::new(-1, 0, int(1)));
    assert_eq!(r.exp_c, AffineExp::new(0, -1, int(1)));
    let product = [lin(2, 0, -1), lin(0, 2, 1), lin(1, -1, 2), lin(1, -1, -1), lin(1, -1, -3), lin(1, -1, -4), lin(1, 1, -3)]
        .iter()
        .fold(ParamPoly::constant(rat(1, 16)), |acc, f| &acc * f);
    // agrees with the closed form up to the factor -1/2 (see the acceptance suite)
    assert_eq!(r.coefficients.coeff(5), ParamRat::from(product.scale(&rat(-1, 2))));
}

#[test]
fn poly_ground_state() {
    let r: PolyReport = json(&["poly", "N0"]);
    assert_eq!((r.exp_s, r.exp_c, r.degree), (AffineExp::g(), AffineExp::h(), 0));
    assert_eq!(r.coefficients.coeff(0), ParamRat::from(ParamPoly::one()));
}

#[test]
fn poly_instantiated() {
    let r: PolyReport = json(&["--g", "37/10", "--h", "52/7", "poly", "I0,N1"]);
    let inst = r.instantiated.unwrap();
    assert_eq!(inst.coefficients.len(), r.degree + 1);
    let g = rat(37, 10);
    let h = rat(52, 7);
    for (k, c) in inst.coefficients.iter().enumerate() {
        let exact = r.coefficients.coeff(k).eval(&g, &h).unwrap();
        assert_eq!(c, &maya_jacobi::algebra::rational_to_string(&exact));
    }
}

#[test]
fn maya_diagrams() {
    let r: MayaReport = json(&["maya", "I1,II2,III1"]);
    assert_eq!(r.first.ascii, "...***o*|ooooo...");
    assert_eq!(r.second.ascii, "...**o**|o*ooo...");
    let r: MayaReport = json(&["maya", ""]);
    assert_eq!(r.first.ascii, "...*****|ooooo...");
    assert!(r.first.left_white.is_empty() && r.second.right_black.is_empty());
    let r: MayaReport = json(&["maya", "I2,I3,II0,II2,III3,N0,N1"]);
    assert_eq!((r.first.left_white, r.first.right_black), (vec![3], vec![0, 1]));
    assert_eq!((r.second.left_white, r.second.right_black), (vec![0, 2], vec![2, 3]));
}

#[test]
fn reduce_examples() {
    let r: ReduceReport = json(&["reduce", "I1,II2,III1", "--target", "IN", "--verify"]);
    assert_eq!(r.reduced.to_string(), "I1,I2,I4,N1");
    assert_eq!((r.ledger.dg, r.ledger.dh), (-5, 1));
    assert_eq!(r.ledger.pref_s, AffineExp::new(-5, 0, int(15)));
    assert_eq!(r.ledger.pref_c, AffineExp::h());
    assert!(r.verification.unwrap().proportional);

    let r: ReduceReport = json(&["reduce", "I2,I3,II0,II2,III3,N0,N1"]);
    assert_eq!(r.reduced.to_string(), "I1,I5,I6,N1,N2,N3,N4,N5");
    assert_eq!((r.ledger.dg, r.ledger.dh), (-7, -1));
    assert_eq!(r.ledger.pref_s, AffineExp::new(-7, 0, int(28)));
    assert_eq!(r.ledger.pref_c, AffineExp::new(0, -1, int(1)));

    for target in ["IN", "I3", "2N", "23"] {
        let r: ReduceReport = json(&["reduce", "", "--target", target]);
        assert!(r.reduced.is_empty() && r.ledger.is_fresh());
    }
}

#[test]
fn spectrum_examples() {
    let labels = |r: &SpectrumReport| -> Vec<i64> { r.levels.iter().map(|e| e.label.energy_index()).collect() };
    let r: SpectrumReport = json(&["spectrum", "I3,II2,III1,III4,III5,N1,N3"]);
    assert_eq!(labels(&r), vec![-6, -5, -2, 0, 2, 4, 5, 6]);
    let r: SpectrumReport = json(&["spectrum", "", "--up-to", "2"]);
    assert_eq!(labels(&r), vec![0, 1, 2]);
    let r: SpectrumReport = json(&["--g", "37/10", "--h", "52/7", "spectrum", "I1,II2,III1", "--verify", "--up-to", "3"]);
    let checks = r.checks.unwrap();
    assert!(checks.all_hold && checks.nonsingular);
}

#[test]
fn verify_identity_modes() {
    let r: VerifyReport = json(&["verify-identity", "I1,II2,III1", "--diagram", "second", "--dir", "left"]);
    assert_eq!(r.reports.len(), 1);
    assert_eq!(r.reports[0].after.to_string(), "I0,I2,II1,III1");
    assert!(r.all_proportional);
    let r: VerifyReport = json(&["verify-identity", "N2,III1", "--all"]);
    assert_eq!(r.reports.len(), 4);
    assert!(r.all_proportional);
    let a: VerifyReport = json(&["--seed", "3", "verify-identity", "--random", "2"]);
    let b: VerifyReport = json(&["--seed", "3", "verify-identity", "--random", "2"]);
    assert_eq!(a, b);
    assert_eq!(a.reports.len(), 8);
}

#[test]
fn equivalent_tuples() {
    let r: Equivalence = json(&["equivalent", "I1,II2,III1", "I1,I2,I4,N1"]);
    assert!(r.equivalent);
    let l = r.relation.unwrap();
    assert_eq!((l.dg, l.dh), (-5, 1));
    let r: Equivalence = json(&["equivalent", "I1", "N1"]);
    assert!(!r.equivalent && r.relation.is_none());
}

#[test]
fn text_and_latex_render() {
    let r = run(&["maya", "I1,II2,III1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("...***o*|ooooo..."));
    let r = run(&["--latex", "poly", "I0"]);
    assert!(r.stdout.contains("\\tilde{\\phi}^{\\mathrm{I}}_{0}"));
    let r = run(&["--latex", "reduce", "I1,II2,III1"]);
    assert!(r.stdout.contains("\\propto"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["poly", "I1,Q2"]).code, 2);
    assert_eq!(run(&["poly", "I-1"]).code, 2);
    assert_eq!(run(&["--g", "abc", "--h", "1/3", "poly", "I0"]).code, 2);
    assert_eq!(run(&["--g", "3/7", "poly", "I0"]).code, 2);
    let dup = run(&["poly", "N1,N1"]);
    assert_eq!(dup.code, 3);
    assert!(dup.stderr.contains("N1") && dup.stdout.is_empty());
    assert_eq!(run(&["--g", "5/2", "--h", "1/3", "poly", "I0"]).code, 5);
    assert_eq!(run(&["--g", "1/3", "--h", "4/3", "spectrum", "I0", "--verify"]).code, 5);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn json_is_deterministic() {
    let a = run(&["--json", "spectrum", "I1,III2", "--verify"]);
    let b = run(&["--json", "spectrum", "I1,III2", "--verify"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}
