//! End-to-end tests of the `jsdm` binary: flag surfaces, exit codes, JSON
//! and CSV contracts, and byte-level determinism of artifacts.

// Reference values below are frozen at full oracle precision.
#![allow(clippy::excessive_precision)]

use std::path::Path;
use std::process::{Command, Output};

fn jsdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jsdm"))
        .args(args)
        .env_remove("JSDM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is JSON")
}

#[test]
fn divergence_jsd_values() {
    let out = jsdm(&["divergence", "--jsd", "--p", "0.5,0.5", "--q", "0.5,0.5"]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim().parse::<f64>().unwrap(), 0.0);

    let out = jsdm(&["divergence", "--jsd", "--p", "1,0", "--q", "0,1"]);
    assert_eq!(stdout_str(&out).trim().parse::<f64>().unwrap(), 1.0);

    let out = jsdm(&["divergence", "--jsd", "--p", "1,0", "--q", "0.5,0.5"]);
    let v: f64 = stdout_str(&out).trim().parse().unwrap();
    assert!((v - 0.31127812445913286).abs() < 1e-14);
}

#[test]
fn divergence_other_measures() {
    let out = jsdm(&["divergence", "--entropy", "--p", "0.8,0.2"]);
    let v: f64 = stdout_str(&out).trim().parse().unwrap();
    assert!((v - 0.72192809488736235).abs() < 1e-14);

    let out = jsdm(&[
        "divergence",
        "--kld",
        "--p",
        "0.5,0.5",
        "--q",
        "0.25,0.75",
    ]);
    let v: f64 = stdout_str(&out).trim().parse().unwrap();
    assert!((v - 0.20751874963942191).abs() < 1e-14);

    let out = jsdm(&[
        "divergence",
        "--alpha",
        "0.5",
        "--p",
        "1,0",
        "--q",
        "0.5,0.5",
    ]);
    let v: f64 = stdout_str(&out).trim().parse().unwrap();
    assert!((v - 0.55792304528414388).abs() < 1e-14);

    let out = jsdm(&[
        "divergence",
        "--weights",
        "0.3,0.7",
        "--p",
        "1,0",
        "--q",
        "0,1",
    ]);
    let v: f64 = stdout_str(&out).trim().parse().unwrap();
    assert!((v - 0.88129089923069262).abs() < 1e-14);
}

#[test]
fn divergence_error_paths() {
    // Domain error: KLD off support.
    let out = jsdm(&["divergence", "--kld", "--p", "1,0", "--q", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).starts_with("error: "));
    assert_eq!(stderr_str(&out).lines().count(), 1);

    // Usage error: measure needs --q.
    let out = jsdm(&["divergence", "--jsd", "--p", "1,0"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error: unknown flag (clap).
    let out = jsdm(&["divergence", "--jsd", "--p", "1,0", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error: two measures at once.
    let out = jsdm(&["divergence", "--jsd", "--kld", "--p", "1,0", "--q", "0,1"]);
    assert_eq!(out.status.code(), Some(2));

    // Domain error: invalid distribution.
    let out = jsdm(&["divergence", "--jsd", "--p", "0.9,0.9", "--q", "0.5,0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn metric_scan_reports_probe_counterexample() {
    let out = jsdm(&[
        "metric-scan",
        "--alpha",
        "1.0",
        "--samples",
        "0",
        "--grid-points",
        "500",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["classification"], "NotMetric");
    assert_eq!(v["nonincreasing"], false);
    let gap = v["counterexample"]["gap"].as_f64().unwrap();
    assert!((gap - 0.37744375108173427).abs() < 1e-9);
    assert_eq!(v["counterexample"]["p"][0].as_f64().unwrap(), 1.0);
}

#[test]
fn metric_scan_metric_band_finds_nothing() {
    let out = jsdm(&[
        "metric-scan",
        "--alpha",
        "0.5",
        "--samples",
        "2000",
        "--grid-points",
        "500",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["classification"], "Metric");
    assert_eq!(v["nonincreasing"], true);
    assert!(v.get("counterexample").is_none());
}

#[test]
fn metric_scan_emits_figure_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("fig2.csv");
    let out = jsdm(&[
        "metric-scan",
        "--alpha",
        "0.75",
        "--samples",
        "0",
        "--grid-points",
        "200",
        "--fig",
        "2",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("u,alpha,value\n"));
    assert!(csv.lines().count() > 200);
    // ConjecturedNotMetric band in the summary.
    let v = stdout_json(&out);
    assert_eq!(v["classification"], "ConjecturedNotMetric");

    // --fig without --out streams the CSV to stdout instead of the summary.
    let out = jsdm(&[
        "metric-scan",
        "--alpha",
        "0.75",
        "--grid-points",
        "50",
        "--fig",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.starts_with("u,alpha,value\n"));
    assert_eq!(text, csv_of(&["metric-scan", "--alpha", "0.75", "--grid-points", "50", "--fig", "2"]));
}

fn csv_of(args: &[&str]) -> String {
    stdout_str(&jsdm(args))
}

#[test]
fn segment_finds_the_deterministic_cut() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("seq.txt");
    std::fs::write(&input, format!("{}{}\n", "0".repeat(500), "1".repeat(500))).unwrap();
    let out = jsdm(&["segment", "--in", input.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["alpha"], 0.5);
    assert_eq!(v["threshold"], 0.95);
    assert_eq!(v["cuts"][0]["pos"], 500);
    assert!(v["cuts"][0]["significance"].as_f64().unwrap() > 0.999);
    assert_eq!(v["cuts"].as_array().unwrap().len(), 1);
}

#[test]
fn segment_handles_multiple_sequences_and_alphabet() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("seqs.txt");
    let two_change = format!("{}{}{}", "a".repeat(300), "b".repeat(400), "a".repeat(300));
    let constant = "a".repeat(100);
    std::fs::write(&input, format!("{two_change}\n{constant}\n")).unwrap();
    let out = jsdm(&[
        "segment",
        "--in",
        input.to_str().unwrap(),
        "--alphabet",
        "ab",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let arr = v.as_array().expect("array for multi-sequence input");
    assert_eq!(arr.len(), 2);
    let cuts: Vec<i64> = arr[0]["cuts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["pos"].as_i64().unwrap())
        .collect();
    assert_eq!(cuts, vec![300, 700]);
    assert!(arr[1]["cuts"].as_array().unwrap().is_empty());
}

#[test]
fn segment_missing_file_is_a_run_error() {
    let out = jsdm(&["segment", "--in", "/nonexistent/file.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).starts_with("error: "));
}

fn assert_same_bytes(a: &Path, b: &Path) {
    assert_eq!(
        std::fs::read(a).unwrap(),
        std::fs::read(b).unwrap(),
        "{a:?} and {b:?} differ"
    );
}

#[test]
fn simulate_is_deterministic_and_emits_tables() {
    let dir = tempfile::tempdir().unwrap();
    let prefix1 = dir.path().join("run1");
    let prefix2 = dir.path().join("run2");
    for prefix in [&prefix1, &prefix2] {
        let out = jsdm(&[
            "simulate",
            "--count",
            "30",
            "--length",
            "200",
            "--blocks",
            "0.8,0.2@0;0.2,0.8@100",
            "--seed",
            "7",
            "--alpha-list",
            "0.5,1.0",
            "--out-prefix",
            prefix.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr_str(&out));
    }
    for suffix in ["_fig3a_alpha0.5.csv", "_fig3a_alpha1.csv", "_fig3b.csv"] {
        let a = dir.path().join(format!("run1{suffix}"));
        let b = dir.path().join(format!("run2{suffix}"));
        assert_same_bytes(&a, &b);
    }

    let profile = std::fs::read_to_string(dir.path().join("run1_fig3a_alpha0.5.csv")).unwrap();
    assert!(profile.starts_with("ell,mean_dprime\n"));
    assert_eq!(profile.lines().count(), 200); // header + 199 cursor positions

    let maxima = std::fs::read_to_string(dir.path().join("run1_fig3b.csv")).unwrap();
    let lines: Vec<&str> = maxima.lines().collect();
    assert_eq!(lines[0], "alpha,mean_max_dprime");
    assert_eq!(lines.len(), 3);
    // Larger exponent, smaller mean maximum.
    let at = |i: usize| lines[i].split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!(at(1) > at(2));
}

#[test]
fn simulate_reads_seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |prefix: &Path, seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_jsdm"))
            .args([
                "simulate",
                "--count",
                "10",
                "--length",
                "100",
                "--blocks",
                "0.7,0.3@0;0.3,0.7@50",
                "--alpha-list",
                "0.5",
                "--out-prefix",
                prefix.to_str().unwrap(),
            ])
            .env("JSDM_SEED", seed)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr_str(&out));
    };
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    run(&a, "11");
    run(&b, "11");
    run(&c, "12");
    assert_same_bytes(
        &dir.path().join("a_fig3b.csv"),
        &dir.path().join("b_fig3b.csv"),
    );
    assert_ne!(
        std::fs::read(dir.path().join("a_fig3b.csv")).unwrap(),
        std::fs::read(dir.path().join("c_fig3b.csv")).unwrap()
    );

    // Unparseable env seed is a usage error.
    let out = Command::new(env!("CARGO_BIN_EXE_jsdm"))
        .args([
            "simulate",
            "--count",
            "2",
            "--length",
            "50",
            "--blocks",
            "1,0@0",
            "--out-prefix",
            dir.path().join("z").to_str().unwrap(),
        ])
        .env("JSDM_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quantum_jsd_bloch_inputs() {
    let out = jsdm(&[
        "quantum-jsd",
        "--rho",
        "bloch:0,0,1",
        "--sigma",
        "bloch:0,0,-1",
    ]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let v = stdout_json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((v["alpha_value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["converged"], true);
    assert_eq!(v["bound"], "lower");
    let n = v["best_povm_bloch_direction"].as_array().unwrap();
    assert!(n[2].as_f64().unwrap().abs() > 1.0 - 1e-6);
}

#[test]
fn quantum_jsd_json_input_matches_classical() {
    // diag(0.8, 0.2) vs diag(0.2, 0.8) through the JSON surface.
    let rho = r#"{"d":2,"entries":[[0.8,0],[0,0],[0,0],[0.2,0]]}"#;
    let dir = tempfile::tempdir().unwrap();
    let sigma_path = dir.path().join("sigma.json");
    std::fs::write(
        &sigma_path,
        r#"{"d":2,"entries":[[0.2,0],[0,0],[0,0],[0.8,0]]}"#,
    )
    .unwrap();
    let sigma_arg = format!("@{}", sigma_path.display());
    let out = jsdm(&[
        "quantum-jsd",
        "--rho",
        rho,
        "--sigma",
        &sigma_arg,
        "--alpha",
        "0.5",
    ]);
    assert!(out.status.success(), "{}", stderr_str(&out));
    let v = stdout_json(&out);
    assert!((v["value"].as_f64().unwrap() - 0.27807190511263765).abs() < 1e-6);
    assert!((v["alpha_value"].as_f64().unwrap() - 0.52732523655959957).abs() < 1e-6);
}

#[test]
fn quantum_jsd_rejects_invalid_states() {
    let out = jsdm(&[
        "quantum-jsd",
        "--rho",
        "bloch:0,0,2",
        "--sigma",
        "bloch:0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).starts_with("error: "));

    let out = jsdm(&["quantum-jsd", "--rho", "bloch:0,0", "--sigma", "bloch:0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
}
