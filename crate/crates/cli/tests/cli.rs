use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use minusord::linalg::{from_real_rows, real_diag};
use minusord::{mtx, Matrix};
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_minusord"));
    cmd.env_remove("MINUSORD_TOL_RANK");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn put(dir: &Path, name: &str, m: &Matrix) -> String {
    let path = dir.join(name);
    mtx::write(&path, m).unwrap();
    path.display().to_string()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_minus_on_diagonal_pair() {
    let dir = TempDir::new().unwrap();
    let a = put(dir.path(), "A.mtx", &real_diag(&[1.0, 0.0, 0.0]));
    let b = put(dir.path(), "B.mtx", &real_diag(&[1.0, 2.0, 0.0]));
    let out = run(&["check", "minus", &a, &b, "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["command"], "check");
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["inputs"][0]["rows"], 3);

    let out = run(&["check", "minus", &b, &a]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("fails"));
}

#[test]
fn check_star_is_reflexive() {
    let dir = TempDir::new().unwrap();
    let a = put(dir.path(), "A.mtx", &from_real_rows(2, 3, &[1.0, 2.0, 0.0, -1.0, 0.5, 3.0]));
    assert_eq!(code(&run(&["check", "star", &a, &a])), 0);
}

#[test]
fn malformed_and_mismatched_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.mtx");
    fs::write(&bad, "%%MatrixMarket matrix array complex general\n2 2\n1 0\n").unwrap();
    let bad = bad.display().to_string();
    let good = put(dir.path(), "A.mtx", &real_diag(&[1.0, 0.0]));
    let other = put(dir.path(), "C.mtx", &real_diag(&[1.0, 0.0, 0.0]));

    for args in [
        vec!["check", "minus", bad.as_str(), good.as_str()],
        vec!["check", "minus", good.as_str(), other.as_str()],
        vec!["check", "minus", good.as_str(), "/nonexistent/x.mtx"],
        vec!["check", "nonsense", good.as_str(), good.as_str()],
        vec!["check", "minus", good.as_str(), good.as_str(), "--tol-residual", "-1"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn gen_rejects_infeasible_ranks() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().display().to_string();
    let out = run(&["gen", "minus", "--dims", "4x4", "--ranks", "3,3", "--out", &out_dir]);
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("A.mtx").exists());
}

#[test]
fn generated_pairs_pass_their_checks() {
    for (kind, dims) in [("minus", "4x4"), ("star", "5x3"), ("sharp", "4x4"), ("core", "5x5")] {
        let dir = TempDir::new().unwrap();
        let d = dir.path().display().to_string();
        let out = run(&["gen", kind, "--dims", dims, "--ranks", "1,2", "--seed", "7", "--out", &d]);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        let a = dir.path().join("A.mtx").display().to_string();
        let apb = dir.path().join("ApB.mtx").display().to_string();
        let out = run(&["check", kind, &a, &apb]);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn pinv_sum_and_lsq_on_generated_pair() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().display().to_string();
    assert_eq!(
        code(&run(&["gen", "minus", "--dims", "5x4", "--ranks", "1,2", "--seed", "3", "--out", &d])),
        0
    );
    let a = dir.path().join("A.mtx").display().to_string();
    let b = dir.path().join("B.mtx").display().to_string();
    let x_path = dir.path().join("X.mtx");
    let x = x_path.display().to_string();

    let out = run(&["pinv-sum", &a, &b, "--out", &x, "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["result"]["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(mtx::read(&x_path).unwrap().shape(), (4, 5));

    let c = put(dir.path(), "c.mtx", &from_real_rows(5, 1, &[1.0, -2.0, 0.5, 3.0, 1.0]));
    let out = run(&["lsq", &a, &b, &c, "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["result"]["residuals"]["max"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["result"]["x_joint"].as_array().unwrap().len(), 4);
}

#[test]
fn pinv_sum_reports_order_failure() {
    let dir = TempDir::new().unwrap();
    // A and B have the same range, so R(A + B) is not R(A) ∔ R(B).
    let a = put(dir.path(), "A.mtx", &real_diag(&[1.0, 0.0]));
    let b = put(dir.path(), "B.mtx", &from_real_rows(2, 2, &[1.0, 1.0, 0.0, 0.0]));
    let out = run(&["pinv-sum", &a, &b, "--json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["result"]["order"]["holds"], false);
    let c = put(dir.path(), "c.mtx", &from_real_rows(2, 1, &[1.0, 1.0]));
    assert_eq!(code(&run(&["lsq", &a, &b, &c])), 1);
}

#[test]
fn json_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().display().to_string();
    let gen = |seed: &str| run(&["gen", "core", "--dims", "4x4", "--ranks", "2,1", "--seed", seed, "--out", &d, "--json"]);
    let first = gen("11");
    let a1 = fs::read(dir.path().join("A.mtx")).unwrap();
    let second = gen("11");
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(a1, fs::read(dir.path().join("A.mtx")).unwrap());

    let a = dir.path().join("A.mtx").display().to_string();
    let apb = dir.path().join("ApB.mtx").display().to_string();
    let r1 = run(&["check", "core", &a, &apb, "--json"]);
    let r2 = run(&["check", "core", &a, &apb, "--json"]);
    assert_eq!(code(&r1), 0);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn rank_tolerance_flag_overrides_environment() {
    let dir = TempDir::new().unwrap();
    let a = put(dir.path(), "A.mtx", &real_diag(&[1.0, 1e-6]));
    let b = put(dir.path(), "B.mtx", &real_diag(&[1.0, 1e-6]));
    let rtol = |out: &Output| stdout_json(out)["tolerance"]["rank_rtol"].clone();

    let out = bin()
        .env("MINUSORD_TOL_RANK", "1e-3")
        .args(["check", "minus", &a, &b, "--json"])
        .output()
        .unwrap();
    assert_eq!(rtol(&out).as_f64(), Some(1e-3));
    assert_eq!(stdout_json(&out)["result"]["rank_data"]["rank_a"], 1);
    assert_eq!(stdout_json(&out)["result"]["verdicts_agree"], true);

    let out = bin()
        .env("MINUSORD_TOL_RANK", "1e-3")
        .args(["check", "minus", &a, &b, "--json", "--tol-rank", "1e-9"])
        .output()
        .unwrap();
    assert_eq!(rtol(&out).as_f64(), Some(1e-9));
    assert_eq!(stdout_json(&out)["result"]["rank_data"]["rank_a"], 2);

    let out = run(&["check", "minus", &a, &b, "--json"]);
    assert!(rtol(&out).is_null());
}
