use std::path::{Path, PathBuf};

use effort_audit::data::{
    generate_synthetic, load_german_credit, load_german_credit_with, split_by_sensitive, GermanFormat, GermanOptions,
};
use effort_audit::stats::{mean, pearson, sample_sd};
use effort_audit::Error;

fn german_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/german.data")
}

#[test]
fn german_counts_and_decoding() {
    let d = load_german_credit(&german_path()).unwrap();
    assert_eq!(d.len(), 1000);
    assert_eq!(d.column_names(), vec!["sex", "age", "amount", "duration"]);
    let good = d.outcome().iter().filter(|&&y| y == 1).count();
    assert_eq!((good, 1000 - good), (700, 300));

    // count personal-status codes straight from the raw file
    let text = std::fs::read_to_string(german_path()).unwrap();
    let codes: Vec<&str> = text.lines().map(|l| l.split_whitespace().nth(8).unwrap()).collect();
    let female = codes.iter().filter(|c| matches!(**c, "A92" | "A95")).count();
    let split = split_by_sensitive(&d);
    assert_eq!(split.protected.len(), female);
    assert_eq!(split.unprotected.len(), 1000 - female);
    for (i, c) in codes.iter().enumerate() {
        assert_eq!(d.is_protected(i), *c == "A92", "row {i} code {c}");
    }
    // first row of the canonical file: A11 6 A34 ... A93 ... 67 ... label 1
    assert_eq!(d.row(0), &[1.0, 67.0, 1169.0, 6.0]);
    assert_eq!(d.outcome()[0], 1);
}

#[test]
fn german_provenance_records_digest() {
    let d = load_german_credit(&german_path()).unwrap();
    let json = serde_json::to_value(d.provenance()).unwrap();
    assert_eq!(
        json["sha256"],
        "b21f3d81db8071257d5ff1deaeba1fd4303b62712e6fcc9715c7a86202cb5871"
    );
}

#[test]
fn german_csv_format_matches_uci() {
    let text = std::fs::read_to_string(german_path()).unwrap();
    let mut csv = String::from("duration,personal_status_and_sex,age,credit_amount,class\n");
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        csv.push_str(&format!("{},{},{},{},{}\n", f[1], f[8], f[12], f[4], f[20]));
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("german.csv");
    std::fs::write(&path, csv).unwrap();
    let options = GermanOptions {
        format: GermanFormat::Csv,
        ..GermanOptions::default()
    };
    let a = load_german_credit_with(&path, &options).unwrap();
    let b = load_german_credit(&german_path()).unwrap();
    assert_eq!(a.rows(), b.rows());
    assert_eq!(a.outcome(), b.outcome());
}

#[test]
fn malformed_rows_name_row_and_column() {
    let text = std::fs::read_to_string(german_path()).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[4] = lines[4].replacen("A93", "A99", 1).replacen("A92", "A99", 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.data");
    std::fs::write(&path, lines.join("\n")).unwrap();
    match load_german_credit(&path) {
        Err(Error::Ingestion { row, column, .. }) => assert_eq!((row, column), (5, 9)),
        other => panic!("expected ingestion error, got {other:?}"),
    }
    assert!(matches!(
        load_german_credit(&dir.path().join("absent.data")),
        Err(Error::MissingInput { .. })
    ));
}

#[test]
fn synthetic_matches_its_equations() {
    let d = generate_synthetic(1000, 2.0, 42).unwrap();
    let split = split_by_sensitive(&d);
    let x2: Vec<f64> = d.column(1);
    let g1: Vec<f64> = split.unprotected.iter().map(|&i| x2[i]).collect();
    let g0: Vec<f64> = split.protected.iter().map(|&i| x2[i]).collect();
    let diff = mean(&g1) - mean(&g0);
    let se = (sample_sd(&g1).powi(2) / g1.len() as f64 + sample_sd(&g0).powi(2) / g0.len() as f64).sqrt();
    assert!((diff - 2.0).abs() < 3.0 * se, "diff {diff} se {se}");
    // x3 is independent of x1
    assert!(pearson(&d.column(0), &d.column(2)).abs() < 0.1);
    // outcome is the sign of standardized x2 + x3
    let s: Vec<f64> = d.rows().iter().map(|r| r[1] + r[2]).collect();
    let m = mean(&s);
    for (v, &y) in s.iter().zip(d.outcome()) {
        assert_eq!(y == 1, *v >= m);
    }
}

#[test]
fn synthetic_alpha_zero_has_no_dependence() {
    let d = generate_synthetic(1000, 0.0, 1).unwrap();
    assert!(pearson(&d.column(0), &d.column(1)).abs() < 0.1);
}

#[test]
fn generated_csv_round_trips_through_the_csv_crate() {
    let d = generate_synthetic(20, 1.0, 2).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    d.write_csv(&path).unwrap();
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, vec!["x1", "x2", "x3", "y"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    for (r, (x, &y)) in rows.iter().zip(d.rows().iter().zip(d.outcome())) {
        for k in 0..3 {
            let v: f64 = r[k].parse().unwrap();
            assert!((v - x[k]).abs() <= 1e-8 * (1.0 + x[k].abs()));
        }
        assert_eq!(r[3].parse::<u8>().unwrap(), y);
    }
}

#[test]
fn missing_input_for_absent_german_file() {
    let err = load_german_credit(Path::new("/nonexistent/german.data")).unwrap_err();
    assert!(matches!(err, Error::MissingInput { .. }));
}
