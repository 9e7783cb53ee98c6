use std::path::{Path, PathBuf};
use std::process::Command;

use supercalc::check::Ops;
use supercalc::cli::run_with;
use supercalc::forms::Superform;

const BIN: &str = env!("CARGO_BIN_EXE_supercalc");

fn config(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn supercalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn eval(cfg: &Path, expr: &str) -> (i32, String, String) {
    supercalc(&["eval", "--config", cfg.to_str().unwrap(), expr])
}

const SCALING: &str = "n = 1\nm = 1\ntransition R\n  z1\nend\n";

#[test]
fn eval_prints_one_canonical_line() {
    let cfg = config("chart22.cfg", "n = 2\nm = 2\n");
    assert_eq!(eval(&cfg, "D(D(c1*c2))"), (0, "0\n".into(), String::new()));
    assert_eq!(eval(&cfg, "c2*c1 + 2*c1*c2 + 1").1, "1 + c1*c2\n");
    let cfg = config("scaling.cfg", SCALING);
    assert_eq!(eval(&cfg, "Transform(c1; rho=R)").1, "(1/z1)*c1'\n");
}

#[test]
fn exit_codes() {
    let cfg = config("chart22b.cfg", "n = 2\nm = 2\n");
    let (code, out, err) = eval(&cfg, "c9");
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.starts_with("UnknownSymbol c9"), "{err}");
    assert_eq!(eval(&cfg, "c1**").0, 2);
    assert_eq!(eval(&cfg, "1/(z1 - z1)").0, 3);

    let bad = config("bad.cfg", "n = 1\nm = 1\nwhat = 3\n");
    let (code, _, err) = eval(&bad, "z1");
    assert_eq!(code, 1);
    assert!(err.starts_with("ConfigError line 3"), "{err}");
    let singular = config("singular.cfg", "n = 1\nm = 1\ntransition R\n  z1 - z1\nend\n");
    let (code, _, err) = eval(&singular, "z1");
    assert_eq!((code, err.as_str()), (3, "SingularMatrix\n"));
    assert_eq!(supercalc(&["check", "--suite", "nope"]).0, 2);
    assert_eq!(supercalc(&["frobnicate"]).0, 2);
}

#[test]
fn check_reports_every_identity() {
    let (code, out, _) = supercalc(&["check", "--suite", "wedge", "--seed", "3", "--cases", "10"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "wedge/associativity: PASS\nwedge/graded-commutativity: PASS\nwedge/distributivity: PASS\n"
    );
}

#[test]
fn check_with_identity_transitions() {
    let cfg = config("identity.cfg", "n = 2\nm = 2\ntransition I\n  1, 0\n  0, 1\nend\n");
    let (code, out, _) = supercalc(&["check", "--config", cfg.to_str().unwrap(), "--suite", "cocycle", "--cases", "20"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.ends_with(": PASS")));
}

/// `d` with the sign of every term flipped when its dz count is odd.
fn sign_flipped_d(phi: &Superform) -> Superform {
    let mut out = Superform::zero();
    for (b, f) in phi.terms() {
        let dt = Superform::term(f.clone(), b.clone()).exterior_differential();
        out += &if b.dz_len() % 2 == 1 { -dt } else { dt };
    }
    out
}

#[test]
fn sign_flipped_d_is_caught() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let ops = Ops { d: sign_flipped_d };
    let args = ["supercalc", "check", "--suite", "differential", "--seed", "1", "--cases", "50"];
    let code = run_with(args, &mut out, &mut err, ops);
    let out = String::from_utf8(out).unwrap();
    assert_eq!(code, 1);
    let line = out.lines().find(|l| l.starts_with("differential/dd=0")).unwrap();
    assert!(line.starts_with("differential/dd=0: FAIL phi = "), "{line}");
}
