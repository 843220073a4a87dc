//! End-to-end tests of the command-line interface: exit codes, artifact
//! contracts, and byte-stable reruns.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chaplygin-piston"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.cfg");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_emits_summary_and_profiles() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("artifacts");
    let cfg = write_config(
        tmp.path(),
        &format!(
            "gamma = 1.0\nmach = 0.6\ndirection = advance\n\
             t_samples = 0.5\nx_samples = -1.5:0:16\noutput = {}\n",
            out.display()
        ),
    );
    let res = run(&["solve", "--config", &cfg]);
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));

    let summary: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(out.join("solution_g1_m0.6_advance.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summary["branch"], "shock");
    let rho1 = summary["rho1"].as_f64().unwrap();
    let sigma = summary["sigma"].as_f64().unwrap();
    assert!((rho1 - 2.5).abs() < 1e-12);
    assert!((sigma + 2.0 / 3.0).abs() < 1e-12);
    // serialized precision preserves the shock relation on re-read
    assert!((sigma + 1.0 / (rho1 - 1.0)).abs() < 1e-12);

    let profile =
        std::fs::read_to_string(out.join("profile_g1_m0.6_advance_t0.5.csv")).unwrap();
    let mut lines = profile.lines();
    assert_eq!(lines.next().unwrap(), "eta,x,t,rho,u,p");
    assert_eq!(lines.count(), 16);
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("artifacts");
    let cfg = write_config(
        tmp.path(),
        &format!(
            "gamma = 0.5\nmach = 0.8,1.3\ndirection = advance\n\
             t_samples = 0.25,0.75\nx_samples = -2:0:64\nseed = 9\noutput = {}\n",
            out.display()
        ),
    );
    assert!(run(&["solve", "--config", &cfg]).status.success());
    let mut first = std::collections::BTreeMap::new();
    for entry in std::fs::read_dir(&out).unwrap() {
        let path = entry.unwrap().path();
        first.insert(path.clone(), std::fs::read(&path).unwrap());
    }
    assert!(!first.is_empty());

    assert!(run(&["solve", "--config", &cfg]).status.success());
    for (path, bytes) in &first {
        assert_eq!(
            &std::fs::read(path).unwrap(),
            bytes,
            "rerun changed {}",
            path.display()
        );
    }
}

#[test]
fn bad_gamma_exits_two_and_names_constraint() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "gamma = 1.5\nmach = 0.6\n");
    let res = run(&["solve", "--config", &cfg]);
    assert_eq!(res.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&res.stderr);
    assert!(stderr.contains("(0, 1]"), "stderr: {stderr}");
    assert!(stderr.contains("line 1"), "stderr: {stderr}");
}

#[test]
fn unknown_subcommand_exits_two() {
    let res = run(&["frobnicate"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn verify_passes_on_exact_solutions() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("artifacts");
    let cfg = write_config(
        tmp.path(),
        &format!(
            "gamma = 1.0\nmach = 2.0\ndirection = advance\n\
             verify_weak = true\nn_test_functions = 6\nquadrature = 64\n\
             x_samples = -1:0:8\noutput = {}\n",
            out.display()
        ),
    );
    let res = run(&["verify", "--config", &cfg]);
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));

    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(out.join("weak_g1_m2_advance.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["branch"], "measure");
    assert_eq!(report["n_test_functions"], 6);
    assert_eq!(report["seed"], 42);
    assert!(report["max_mass_res"].as_f64().unwrap() < 5e-6);
}

#[test]
fn verify_failure_exits_one_with_report_path() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("artifacts");
    // a tolerance that no finite quadrature can meet
    let cfg = write_config(
        tmp.path(),
        &format!(
            "gamma = 0.5\nmach = 1.0\ndirection = recede\n\
             verify_weak = true\nweak_tol = 1e-300\n\
             n_test_functions = 4\nquadrature = 32\nx_samples = -1:0:8\noutput = {}\n",
            out.display()
        ),
    );
    let res = run(&["verify", "--config", &cfg]);
    assert_eq!(res.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&res.stderr);
    assert!(stderr.contains("weak_g0.5_m1_recede.json"), "stderr: {stderr}");
}

#[test]
fn missing_config_exits_two() {
    let res = run(&["solve", "--config", "/nonexistent/nowhere.cfg"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn fvm_subcommand_writes_comparison() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("artifacts");
    let cfg = write_config(
        tmp.path(),
        &format!(
            "gamma = 0.5\nmach = 0.8\ndirection = advance\n\
             fvm_n_cells = 32\nfvm_t_end = 0.25\nx_samples = -1:0:8\noutput = {}\n",
            out.display()
        ),
    );
    let res = run(&["fvm", "--config", &cfg]);
    assert!(res.status.success(), "stderr: {}", String::from_utf8_lossy(&res.stderr));

    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(out.join("fvm_g0.5_m0.8_advance.json")).unwrap(),
    )
    .unwrap();
    let runs = report["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 3);
    assert_eq!(runs[2]["n_cells"], 128);

    let csv = std::fs::read_to_string(out.join("fvm_g0.5_m0.8_advance_n32.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x,rho,u,rho_exact,u_exact");
    assert_eq!(lines.count(), 32);
}

#[test]
fn phase_diagram_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("phase.csv");
    let res = run(&[
        "phase-diagram",
        "--gamma",
        "0.5:1.0:2",
        "--mach",
        "0.9:1.1:3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "gamma,mach,branch");
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines.contains(&"1,0.9,shock"));
    assert!(lines.contains(&"1,1,measure"));

    // receding direction: every row is a rarefaction
    let res = run(&[
        "phase-diagram",
        "--gamma",
        "0.5:1.0:2",
        "--mach",
        "0.9:1.1:3",
        "--direction",
        "recede",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().skip(1).filter(|l| l.ends_with("rarefaction")).count(), 6);
}
