//! Binary-level contract: flags parse, reports land on stdout as JSON, the
//! human summary lands on stderr, and failures map to the documented exit
//! codes (0 ok, 1 failed check, 2 invalid input, 3 enumeration guard).

use std::process::{Command, Output};

fn epiihs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epiihs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON report")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn sum_finite_prints_exact_rational() {
    let out = epiihs(&["sum", "-a", "2", "-k", "2", "-N", "2"]);
    let rep = report(&out);
    assert_eq!(rep["command"], "sum");
    assert_eq!(rep["result"]["type"], "rational");
    assert_eq!(rep["result"]["value"], "21/16");
    assert_eq!(rep["seed"], serde_json::Value::Null);
    assert_eq!(rep["checks"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ok"));
}

#[test]
fn sum_empty_index_is_one() {
    let out = epiihs(&["sum", "-a", "1", "-k", "0", "-N", "5"]);
    assert_eq!(report(&out)["result"]["value"], "1/1");
}

#[test]
fn sum_infinite_uses_series_route() {
    let out = epiihs(&["sum", "-a", "2", "-k", "3", "-N", "inf", "--method", "series"]);
    let rep = report(&out);
    assert_eq!(rep["inputs"]["N"], "inf");
    assert_eq!(rep["result"]["type"], "float");
    let value = rep["result"]["value"].as_f64().unwrap();
    assert!((value - 1.9711021825948702).abs() <= 1e-12);
}

#[test]
fn sum_divergent_infinite_is_rejected() {
    let out = epiihs(&["sum", "-a", "1", "-k", "1", "-N", "inf", "--method", "series"]);
    assert_eq!(exit_code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn sum_enumeration_guard_has_its_own_exit_code() {
    let out = epiihs(&["sum", "-a", "1", "-k", "8", "-N", "200", "--method", "brute"]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration guard"));
}

#[test]
fn sum_invalid_arguments_exit_two() {
    assert_eq!(exit_code(&epiihs(&["sum", "-a", "0", "-k", "1", "-N", "5"])), 2);
    // Both clap-level parse failures and domain failures share the code.
    assert_eq!(exit_code(&epiihs(&["sum", "-a", "2", "-k", "1", "-N", "abc"])), 2);
    assert_eq!(exit_code(&epiihs(&["sum", "-a", "2", "-k", "1", "-N", "5", "--method", "x"])), 2);
    assert_eq!(exit_code(&epiihs(&[])), 2);
}

#[test]
fn genfunc_cross_checks_all_routes() {
    let out = epiihs(&["genfunc", "-m", "2", "-t", "0.5"]);
    let rep = report(&out);
    assert_eq!(rep["result"]["type"], "complex");
    let re = rep["result"]["re"].as_f64().unwrap();
    assert!((re - std::f64::consts::FRAC_PI_2).abs() <= 1e-12);
    let checks = rep["checks"].as_array().unwrap();
    // One imaginary-part check plus three pairwise comparisons.
    assert_eq!(checks.len(), 4);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn genfunc_domain_is_enforced() {
    assert_eq!(exit_code(&epiihs(&["genfunc", "-m", "2", "-t", "1.5"])), 2);
    assert_eq!(exit_code(&epiihs(&["genfunc", "-m", "1", "-t", "0.5"])), 2);
    assert_eq!(
        exit_code(&epiihs(&["genfunc", "-m", "2", "-t", "0.5", "--route", "warp"])),
        2
    );
}

#[test]
fn integrate_quad_reports_passing_check() {
    let out = epiihs(&["integrate", "-m", "2", "-k", "1", "--engine", "quad"]);
    let rep = report(&out);
    assert_eq!(rep["result"]["type"], "float");
    let value = rep["result"]["value"].as_f64().unwrap();
    assert!((value - 1.6449340668482264).abs() <= 1e-10);
    assert_eq!(rep["checks"][0]["name"], "integrate/quad-vs-series");
    assert_eq!(rep["checks"][0]["status"], "pass");
}

#[test]
fn integrate_quad_requires_m_two() {
    assert_eq!(
        exit_code(&epiihs(&["integrate", "-m", "3", "-k", "1", "--engine", "quad"])),
        2
    );
}

#[test]
fn integrate_mc_echoes_seed_and_metadata() {
    let out = epiihs(&[
        "integrate", "-m", "2", "-k", "1", "--engine", "mc", "-n", "100000", "--seed", "7",
    ]);
    let rep = report(&out);
    assert_eq!(rep["result"]["type"], "estimate");
    assert_eq!(rep["result"]["seed"], 7);
    assert_eq!(rep["result"]["n_samples"], 100000);
    assert_eq!(rep["result"]["n_rejected"], 0);
    assert_eq!(rep["seed"], 7);
    let checks = rep["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn integrate_mc_rejects_tiny_sample_counts() {
    let out = epiihs(&[
        "integrate", "-m", "2", "-k", "1", "--engine", "mc", "-n", "10", "--seed", "7",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn thread_env_does_not_change_results() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_epiihs"));
        cmd.args([
            "integrate", "-m", "3", "-k", "1", "--engine", "mc", "-n", "70000", "--seed", "11",
        ]);
        cmd.env_remove("EPIIHS_THREADS");
        if let Some(v) = env {
            cmd.env("EPIIHS_THREADS", v);
        }
        let out = cmd.output().expect("binary runs");
        report(&out)["result"].to_string()
    };
    let default = run(None);
    assert_eq!(default, run(Some("1")));
    assert_eq!(default, run(Some("3")));
}

#[test]
fn verify_suite_summarizes_checks() {
    let out = epiihs(&["verify", "--suite", "exact"]);
    let rep = report(&out);
    assert_eq!(rep["result"]["type"], "summary");
    assert_eq!(rep["result"]["failed"], 0);
    assert!(rep["result"]["passed"].as_u64().unwrap() > 0);
    assert_eq!(rep["seed"], 42);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
}

#[test]
fn verify_unknown_suite_exits_two() {
    assert_eq!(exit_code(&epiihs(&["verify", "--suite", "nope"])), 2);
}

/// Deterministic commands reproduce the stored reports byte-for-byte up to
/// the wall-clock field.
#[test]
fn golden_reports_are_stable() {
    let cases: [(&[&str], &str); 2] = [
        (
            &["sum", "-a", "2", "-k", "2", "-N", "2"],
            include_str!("golden/sum_a2_k2_n2.json"),
        ),
        (
            &["sum", "-a", "1", "-k", "3", "-N", "4", "--method", "partition"],
            include_str!("golden/sum_a1_k3_n4.json"),
        ),
    ];
    for (args, golden) in cases {
        let mut got = report(&epiihs(args));
        got["elapsed_ms"] = serde_json::json!(0);
        let want: serde_json::Value = serde_json::from_str(golden).expect("golden parses");
        assert_eq!(got, want, "args: {args:?}");
    }
}
