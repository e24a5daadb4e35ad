use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_effort-audit"))
}

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    out
}

fn ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn synthetic_config() -> String {
    repo().join("configs/synthetic.toml").display().to_string()
}

fn read_csv(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path)
        .unwrap()
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn audit_writes_full_grid_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = synthetic_config();
    for out in [&a, &b] {
        ok(&[
            "audit",
            "--config",
            &cfg,
            "--alpha",
            "2",
            "--seeds",
            "0..2",
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    let bytes_a = std::fs::read(a.join("curves.csv")).unwrap();
    assert_eq!(bytes_a, std::fs::read(b.join("curves.csv")).unwrap());
    assert_eq!(
        std::fs::read(a.join("report.json")).unwrap(),
        std::fs::read(b.join("report.json")).unwrap()
    );

    let rows = read_csv(&a.join("curves.csv"));
    for group in ["protected", "unprotected"] {
        for metric in [
            "acr",
            "rd",
            "phi_pos",
            "phi_neg",
            "ratio_protected",
            "subset_size_pos",
            "subset_size_neg",
        ] {
            let n = rows.iter().filter(|r| &r[0] == group && &r[2] == metric).count();
            assert_eq!(n, 13, "{group} {metric}");
        }
    }

    // every CSV number is the report's value in 9 significant digits
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("report.json")).unwrap()).unwrap();
    let curves = report["pooled_curves"].as_array().unwrap();
    assert_eq!(curves.len(), rows.len());
    for (row, c) in rows.iter().zip(curves) {
        if let Some(mean) = c["band"]["mean"].as_f64() {
            assert_eq!(&row[3], format!("{mean:.8e}"));
        } else {
            assert_eq!(&row[3], "");
        }
    }
    assert_eq!(report["runs"].as_array().unwrap().len(), 2);
}

#[test]
fn missing_german_data_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = repo().join("configs/german.toml");
    let out = run(&[
        "audit",
        "--config",
        cfg.to_str().unwrap(),
        "--data",
        "/nonexistent/german.data",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--data"), "{err}");
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn config_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "experiment = \"synthetic\"\n[synthetic]\nalpha = []\n").unwrap();
    let out = run(&[
        "sweep-alpha",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha"));

    std::fs::write(&cfg, "experiment = \"synthetic\"\nquantiles = [0.5,\n  oops]\n").unwrap();
    let out = run(&["audit", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = run(&["audit", "--config", dir.path().join("none.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_at_alpha_zero() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "sweep-alpha",
        "--config",
        &synthetic_config(),
        "--alpha",
        "0",
        "--seeds",
        "0..5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let rows = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(rows.len(), 5);
    for r in &rows {
        let v: f64 = r[3].parse().unwrap();
        match &r[1] {
            "cfr" => assert_eq!(v, 1.0),
            _ => assert!((v - 1.0).abs() < 0.15, "{r:?}"),
        }
    }
}

#[test]
fn cf_compare_emits_two_boxplots() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "cf-compare",
        "--config",
        &synthetic_config(),
        "--alpha",
        "2",
        "--seed",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("cf_compare.json")).unwrap()).unwrap();
    let fair = v["comparison"]["fair"]["median"].as_f64().unwrap();
    let unfair = v["comparison"]["unfair"]["median"].as_f64().unwrap();
    assert!(unfair < fair);
    assert!(v["comparison"]["cfr"]["ratio"].as_f64().unwrap() < 1.0);
    let costs = read_csv(&dir.path().join("cf_costs.csv"));
    assert!(costs.iter().any(|r| &r[0] == "fair") && costs.iter().any(|r| &r[0] == "unfair"));
}

#[test]
fn gen_data_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/s.csv");
    ok(&[
        "gen-data",
        "--n",
        "50",
        "--alpha",
        "2",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(read_csv(&path).len(), 50);
}
