//! Datasets: the synthetic generator, the German credit loader, and the
//! common in-memory representation consumed by the rest of the crate.
//!
//! Outcomes are always stored with `1` as the favorable label. The sensitive
//! column is a binary covariate whose protected value (`s0`) is recorded on
//! the dataset.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Bernoulli, Distribution, Normal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scm::CausalGraph;
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Continuous,
    Ordinal,
    Categorical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub kind: FeatureKind,
}

impl Column {
    pub fn continuous(name: &str) -> Self {
        Self {
            name: name.to_string(),
            kind: FeatureKind::Continuous,
        }
    }
}

/// Where a dataset came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Synthetic { n: usize, alpha: f64, seed: u64 },
    File { path: String, sha256: String },
    Derived { description: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    columns: Vec<Column>,
    rows: Vec<Vec<f64>>,
    outcome_name: String,
    outcome: Vec<u8>,
    sensitive: usize,
    protected_value: f64,
    provenance: Provenance,
}

impl Dataset {
    /// Builds a dataset and checks its invariants: rectangular finite rows,
    /// binary outcome, binary sensitive column with both values present.
    pub fn new(
        columns: Vec<Column>,
        rows: Vec<Vec<f64>>,
        outcome_name: impl Into<String>,
        outcome: Vec<u8>,
        sensitive: &str,
        protected_value: f64,
        provenance: Provenance,
    ) -> Result<Self> {
        let sensitive_idx = columns
            .iter()
            .position(|c| c.name == sensitive)
            .ok_or_else(|| Error::MissingColumn(sensitive.to_string()))?;
        if rows.len() != outcome.len() {
            return Err(Error::Schema(format!(
                "{} rows but {} outcome values",
                rows.len(),
                outcome.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::Schema(format!(
                    "row {i} has {} values, expected {}",
                    row.len(),
                    columns.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Schema(format!(
                    "row {i} column `{}` is not finite",
                    columns[j].name
                )));
            }
        }
        if let Some(i) = outcome.iter().position(|&y| y > 1) {
            return Err(Error::Schema(format!("outcome at row {i} is not binary")));
        }
        let mut other = None;
        let mut seen_protected = false;
        for (i, row) in rows.iter().enumerate() {
            let s = row[sensitive_idx];
            if s == protected_value {
                seen_protected = true;
            } else {
                match other {
                    None => other = Some(s),
                    Some(o) if o == s => {}
                    Some(o) => {
                        return Err(Error::Schema(format!(
                            "sensitive column `{sensitive}` is not binary: saw {protected_value}, {o} and {s} (row {i})"
                        )))
                    }
                }
            }
        }
        if !seen_protected || other.is_none() {
            return Err(Error::Schema(format!(
                "sensitive column `{sensitive}` must contain both groups"
            )));
        }
        Ok(Self {
            columns,
            rows,
            outcome_name: outcome_name.into(),
            outcome,
            sensitive: sensitive_idx,
            protected_value,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn outcome(&self) -> &[u8] {
        &self.outcome
    }

    pub fn outcome_name(&self) -> &str {
        &self.outcome_name
    }

    pub fn sensitive_index(&self) -> usize {
        self.sensitive
    }

    pub fn sensitive_name(&self) -> &str {
        &self.columns[self.sensitive].name
    }

    /// The protected value `s0`.
    pub fn protected_value(&self) -> f64 {
        self.protected_value
    }

    /// The unprotected value `s1`.
    pub fn unprotected_value(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r[self.sensitive])
            .find(|&s| s != self.protected_value)
            .expect("dataset invariant: both sensitive values present")
    }

    pub fn is_protected(&self, i: usize) -> bool {
        self.rows[i][self.sensitive] == self.protected_value
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Observed `(min, max)` of a column.
    pub fn column_bounds(&self, j: usize) -> (f64, f64) {
        self.rows
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r[j]), hi.max(r[j]))
            })
    }

    /// Observed range `max - min` of a column.
    pub fn column_range(&self, j: usize) -> f64 {
        let (lo, hi) = self.column_bounds(j);
        hi - lo
    }

    /// A copy with the sensitive column replaced; used by permutation tests.
    pub fn with_sensitive_values(&self, values: &[f64]) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::Schema("sensitive replacement has wrong length".into()));
        }
        let mut rows = self.rows.clone();
        for (row, &v) in rows.iter_mut().zip(values) {
            row[self.sensitive] = v;
        }
        Dataset::new(
            self.columns.clone(),
            rows,
            self.outcome_name.clone(),
            self.outcome.clone(),
            &self.columns[self.sensitive].name,
            self.protected_value,
            Provenance::Derived {
                description: "sensitive column replaced".into(),
            },
        )
    }

    /// A copy with outcome labels inverted, for data whose favorable label is 0.
    pub fn with_inverted_outcome(&self) -> Self {
        let mut out = self.clone();
        for y in &mut out.outcome {
            *y = 1 - *y;
        }
        out
    }

    /// Writes `columns..., outcome` as a comma-separated file with a header.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut writer = csv::Writer::from_path(path).map_err(csv_err)?;
        let mut header: Vec<&str> = self.column_names();
        header.push(&self.outcome_name);
        writer.write_record(&header).map_err(csv_err)?;
        for (row, y) in self.rows.iter().zip(&self.outcome) {
            let mut record: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            record.push(y.to_string());
            writer.write_record(&record).map_err(csv_err)?;
        }
        writer.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Protected and unprotected row indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensitivePartition {
    pub protected: Vec<usize>,
    pub unprotected: Vec<usize>,
}

pub fn split_by_sensitive(dataset: &Dataset) -> SensitivePartition {
    let (protected, unprotected) = (0..dataset.len()).partition(|&i| dataset.is_protected(i));
    SensitivePartition { protected, unprotected }
}

// ---------------------------------------------------------------------------
// Synthetic generator

pub const SYNTHETIC_SENSITIVE: &str = "x1";
pub const SYNTHETIC_PROXY: &str = "x2";
pub const SYNTHETIC_INDEPENDENT: &str = "x3";

// Per-column ChaCha stream ids; new columns get new ids.
const STREAM_U1: u64 = 1;
const STREAM_U2: u64 = 2;
const STREAM_U3: u64 = 3;

fn substream(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples the three-variable synthetic population:
/// `x1 ~ Bernoulli(0.5)`, `x2 = alpha * x1 + u2` with `u2 ~ N(3, 1)`,
/// `x3 ~ N(0, 1)`, and `y = 1` iff `sigmoid(standardize(x2 + x3)) >= 0.5`.
/// Protected group is `x1 = 0`.
pub fn generate_synthetic(n: usize, alpha: f64, seed: u64) -> Result<Dataset> {
    if n < 2 {
        return Err(Error::Precondition("synthetic data needs n >= 2".into()));
    }
    if !alpha.is_finite() {
        return Err(Error::Precondition("alpha must be finite".into()));
    }
    let coin = Bernoulli::new(0.5).expect("valid probability");
    let u2 = Normal::new(3.0, 1.0).expect("valid normal");
    let u3 = Normal::new(0.0, 1.0).expect("valid normal");

    let mut rng1 = substream(seed, STREAM_U1);
    let mut rng2 = substream(seed, STREAM_U2);
    let mut rng3 = substream(seed, STREAM_U3);
    let x1: Vec<f64> = (0..n).map(|_| f64::from(u8::from(coin.sample(&mut rng1)))).collect();
    let x2: Vec<f64> = x1.iter().map(|&s| alpha * s + u2.sample(&mut rng2)).collect();
    let x3: Vec<f64> = (0..n).map(|_| u3.sample(&mut rng3)).collect();

    let total: Vec<f64> = x2.iter().zip(&x3).map(|(a, b)| a + b).collect();
    let standardized = stats::standardize(&total);
    let outcome: Vec<u8> = standardized
        .iter()
        .map(|&z| u8::from(stats::sigmoid(z) >= 0.5))
        .collect();

    let rows = (0..n).map(|i| vec![x1[i], x2[i], x3[i]]).collect();
    let columns = vec![
        Column::continuous(SYNTHETIC_SENSITIVE),
        Column::continuous(SYNTHETIC_PROXY),
        Column::continuous(SYNTHETIC_INDEPENDENT),
    ];
    Dataset::new(
        columns,
        rows,
        "y",
        outcome,
        SYNTHETIC_SENSITIVE,
        0.0,
        Provenance::Synthetic { n, alpha, seed },
    )
}

/// The data-generating graph of [`generate_synthetic`]. `x1 -> x2` exists only
/// when `alpha != 0`.
pub fn synthetic_graph(alpha: f64) -> CausalGraph {
    let mut parents = BTreeMap::new();
    if alpha != 0.0 {
        parents.insert(SYNTHETIC_PROXY.to_string(), vec![SYNTHETIC_SENSITIVE.to_string()]);
    }
    CausalGraph::new(
        vec![
            SYNTHETIC_SENSITIVE.to_string(),
            SYNTHETIC_PROXY.to_string(),
            SYNTHETIC_INDEPENDENT.to_string(),
        ],
        parents,
    )
    .expect("synthetic graph is acyclic")
}

// ---------------------------------------------------------------------------
// German credit

pub const GERMAN_SEX: &str = "sex";
pub const GERMAN_AGE: &str = "age";
pub const GERMAN_AMOUNT: &str = "amount";
pub const GERMAN_DURATION: &str = "duration";
pub const GERMAN_OUTCOME: &str = "low_risk";
pub const GERMAN_ROWS: usize = 1000;
const GERMAN_FIELDS: usize = 21;

// 0-based UCI attribute positions.
const UCI_DURATION: usize = 1;
const UCI_AMOUNT: usize = 4;
const UCI_PERSONAL_STATUS: usize = 8;
const UCI_AGE: usize = 12;
const UCI_LABEL: usize = 20;

const DEFAULT_SEX_CODES: &str = include_str!("../data/german_personal_status.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GermanFormat {
    /// Whitespace-separated `german.data`, 21 fields per row, no header.
    #[default]
    Uci,
    /// Comma-separated with a header row naming the columns.
    Csv,
}

/// Maps personal-status codes (UCI attribute 9) to sex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SexCodeTable {
    /// code -> (description, is_female)
    pub codes: BTreeMap<String, (String, bool)>,
}

impl SexCodeTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut codes = BTreeMap::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(csv_err)?;
            if record.len() != 3 {
                return Err(Error::Ingestion {
                    row: i + 1,
                    column: record.len(),
                    message: "sex code table rows need code,description,sex".into(),
                });
            }
            let female = match record[2].trim() {
                "female" => true,
                "male" => false,
                other => {
                    return Err(Error::Ingestion {
                        row: i + 1,
                        column: 3,
                        message: format!("unknown sex `{other}`"),
                    })
                }
            };
            codes.insert(record[0].trim().to_string(), (record[1].trim().to_string(), female));
        }
        Ok(Self { codes })
    }

    pub fn is_female(&self, code: &str) -> Option<bool> {
        self.codes.get(code).map(|(_, f)| *f)
    }
}

impl Default for SexCodeTable {
    fn default() -> Self {
        Self::parse(DEFAULT_SEX_CODES).expect("bundled sex code table parses")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GermanOptions {
    pub format: GermanFormat,
    pub sex_codes: SexCodeTable,
    pub expected_rows: Option<usize>,
}

impl Default for GermanOptions {
    fn default() -> Self {
        Self {
            format: GermanFormat::Uci,
            sex_codes: SexCodeTable::default(),
            expected_rows: Some(GERMAN_ROWS),
        }
    }
}

/// Loads the UCI German credit file into `sex, age, amount, duration` plus
/// `low_risk`. Sex is 0 for female (protected) and 1 for male.
pub fn load_german_credit(path: &Path) -> Result<Dataset> {
    load_german_credit_with(path, &GermanOptions::default())
}

pub fn load_german_credit_with(path: &Path, options: &GermanOptions) -> Result<Dataset> {
    let bytes = fs::read(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::MissingInput {
                path: path.to_path_buf(),
                hint: "German credit data".into(),
            }
        } else {
            Error::Io(e)
        }
    })?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| Error::Schema(format!("{} is not UTF-8: {e}", path.display())))?;
    let records = match options.format {
        GermanFormat::Uci => parse_uci(&text)?,
        GermanFormat::Csv => parse_german_csv(&text)?,
    };
    if let Some(expected) = options.expected_rows {
        if records.len() != expected {
            return Err(Error::Ingestion {
                row: records.len(),
                column: 0,
                message: format!("expected {expected} rows, found {}", records.len()),
            });
        }
    }

    let mut rows = Vec::with_capacity(records.len());
    let mut outcome = Vec::with_capacity(records.len());
    for record in &records {
        let female = options
            .sex_codes
            .is_female(&record.status)
            .ok_or_else(|| Error::Ingestion {
                row: record.line,
                column: UCI_PERSONAL_STATUS + 1,
                message: format!("unknown personal-status code `{}`", record.status),
            })?;
        let sex = if female { 0.0 } else { 1.0 };
        rows.push(vec![sex, record.age, record.amount, record.duration]);
        outcome.push(u8::from(record.good));
    }

    let columns = vec![
        Column::continuous(GERMAN_SEX),
        Column::continuous(GERMAN_AGE),
        Column::continuous(GERMAN_AMOUNT),
        Column::continuous(GERMAN_DURATION),
    ];
    Dataset::new(
        columns,
        rows,
        GERMAN_OUTCOME,
        outcome,
        GERMAN_SEX,
        0.0,
        Provenance::File {
            path: path.display().to_string(),
            sha256: digest,
        },
    )
}

/// The causal graph used for the German credit experiment.
pub fn german_graph() -> CausalGraph {
    let mut parents = BTreeMap::new();
    parents.insert(
        GERMAN_AMOUNT.to_string(),
        vec![GERMAN_SEX.to_string(), GERMAN_AGE.to_string()],
    );
    parents.insert(GERMAN_DURATION.to_string(), vec![GERMAN_AMOUNT.to_string()]);
    CausalGraph::new(
        vec![
            GERMAN_SEX.to_string(),
            GERMAN_AGE.to_string(),
            GERMAN_AMOUNT.to_string(),
            GERMAN_DURATION.to_string(),
        ],
        parents,
    )
    .expect("German graph is acyclic")
}

struct GermanRecord {
    line: usize,
    status: String,
    age: f64,
    amount: f64,
    duration: f64,
    good: bool,
}

fn parse_number(field: &str, line: usize, column: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Ingestion {
            row: line,
            column,
            message: format!("expected a number, found `{field}`"),
        })
}

fn parse_label(field: &str, line: usize, column: usize) -> Result<bool> {
    match field.trim().to_ascii_lowercase().as_str() {
        "1" | "good" => Ok(true),
        "2" | "bad" => Ok(false),
        other => Err(Error::Ingestion {
            row: line,
            column,
            message: format!("unknown credit-risk label `{other}`"),
        }),
    }
}

fn parse_uci(text: &str) -> Result<Vec<GermanRecord>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.len() != GERMAN_FIELDS {
            return Err(Error::Ingestion {
                row: line,
                column: fields.len(),
                message: format!("expected {GERMAN_FIELDS} fields, found {}", fields.len()),
            });
        }
        out.push(GermanRecord {
            line,
            status: fields[UCI_PERSONAL_STATUS].to_string(),
            age: parse_number(fields[UCI_AGE], line, UCI_AGE + 1)?,
            amount: parse_number(fields[UCI_AMOUNT], line, UCI_AMOUNT + 1)?,
            duration: parse_number(fields[UCI_DURATION], line, UCI_DURATION + 1)?,
            good: parse_label(fields[UCI_LABEL], line, UCI_LABEL + 1)?,
        });
    }
    Ok(out)
}

const CSV_STATUS: &[&str] = &["personal_status_and_sex", "personal_status_sex", "attribute9"];
const CSV_AGE: &[&str] = &["age_in_years", "age", "attribute13"];
const CSV_AMOUNT: &[&str] = &["credit_amount", "amount", "attribute5"];
const CSV_DURATION: &[&str] = &["duration_in_month", "duration", "attribute2"];
const CSV_LABEL: &[&str] = &["credit_risk", "class", "risk", "attribute21"];

fn parse_german_csv(text: &str) -> Result<Vec<GermanRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    let find = |aliases: &[&str]| -> Result<usize> {
        header
            .iter()
            .position(|h| aliases.contains(&h.as_str()))
            .ok_or_else(|| Error::Ingestion {
                row: 1,
                column: 0,
                message: format!("header lacks a column named one of {aliases:?}"),
            })
    };
    let (status, age, amount, duration, label) = (
        find(CSV_STATUS)?,
        find(CSV_AGE)?,
        find(CSV_AMOUNT)?,
        find(CSV_DURATION)?,
        find(CSV_LABEL)?,
    );
    let mut out = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| Error::Ingestion {
            row: line,
            column: 0,
            message: e.to_string(),
        })?;
        if record.len() != header.len() {
            return Err(Error::Ingestion {
                row: line,
                column: record.len(),
                message: format!("expected {} fields, found {}", header.len(), record.len()),
            });
        }
        out.push(GermanRecord {
            line,
            status: record[status].to_string(),
            age: parse_number(&record[age], line, age + 1)?,
            amount: parse_number(&record[amount], line, amount + 1)?,
            duration: parse_number(&record[duration], line, duration + 1)?,
            good: parse_label(&record[label], line, label + 1)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(rows: Vec<Vec<f64>>, outcome: Vec<u8>) -> Result<Dataset> {
        Dataset::new(
            vec![Column::continuous("s"), Column::continuous("a")],
            rows,
            "y",
            outcome,
            "s",
            0.0,
            Provenance::Derived {
                description: "test".into(),
            },
        )
    }

    #[test]
    fn rejects_single_group() {
        let err = tiny(vec![vec![0.0, 1.0], vec![0.0, 2.0]], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn rejects_nonbinary_sensitive() {
        let err = tiny(vec![vec![0.0, 1.0], vec![1.0, 2.0], vec![2.0, 2.0]], vec![0, 1, 1]).unwrap_err();
        assert!(err.to_string().contains("not binary"));
    }

    #[test]
    fn rejects_nonbinary_outcome_and_nan() {
        assert!(tiny(vec![vec![0.0, 1.0], vec![1.0, 2.0]], vec![0, 2]).is_err());
        assert!(tiny(vec![vec![0.0, f64::NAN], vec![1.0, 2.0]], vec![0, 1]).is_err());
    }

    #[test]
    fn synthetic_is_deterministic_and_shaped() {
        let a = generate_synthetic(200, 2.0, 7).unwrap();
        let b = generate_synthetic(200, 2.0, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 200);
        assert_eq!(a.column_names(), vec!["x1", "x2", "x3"]);
        let c = generate_synthetic(200, 2.0, 8).unwrap();
        assert_ne!(a.rows(), c.rows());
    }

    #[test]
    fn alpha_does_not_perturb_noise_streams() {
        let a = generate_synthetic(100, 0.0, 3).unwrap();
        let b = generate_synthetic(100, 5.0, 3).unwrap();
        for (ra, rb) in a.rows().iter().zip(b.rows()) {
            assert_eq!(ra[0], rb[0]);
            assert_eq!(ra[2], rb[2]);
            assert!((rb[1] - ra[1] - 5.0 * ra[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn synthetic_rejects_tiny_n() {
        assert!(generate_synthetic(1, 1.0, 0).is_err());
    }

    #[test]
    fn split_partitions_rows() {
        let d = generate_synthetic(500, 1.0, 11).unwrap();
        let p = split_by_sensitive(&d);
        assert_eq!(p.protected.len() + p.unprotected.len(), 500);
        assert!(p.protected.iter().all(|&i| d.row(i)[0] == 0.0));
        assert!(p.unprotected.iter().all(|&i| d.row(i)[0] == 1.0));
        // Bernoulli(0.5): both halves within 5 sd of n/2
        let sd = (500.0f64 * 0.25).sqrt();
        assert!((p.protected.len() as f64 - 250.0).abs() < 5.0 * sd);
    }

    #[test]
    fn synthetic_graph_edge_follows_alpha() {
        assert!(synthetic_graph(0.0).parents_of("x2").is_empty());
        assert_eq!(synthetic_graph(2.0).parents_of("x2"), ["x1".to_string()]);
    }

    #[test]
    fn default_sex_table_decodes_female_codes() {
        let t = SexCodeTable::default();
        assert_eq!(t.is_female("A92"), Some(true));
        assert_eq!(t.is_female("A95"), Some(true));
        assert_eq!(t.is_female("A91"), Some(false));
        assert_eq!(t.is_female("A93"), Some(false));
        assert_eq!(t.is_female("A94"), Some(false));
        assert_eq!(t.is_female("A99"), None);
    }

    #[test]
    fn uci_parser_reports_row_and_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.data");
        std::fs::write(&path, "A11 6 A34\n").unwrap();
        let opts = GermanOptions {
            expected_rows: None,
            ..GermanOptions::default()
        };
        let err = load_german_credit_with(&path, &opts).unwrap_err();
        assert!(matches!(err, Error::Ingestion { row: 1, .. }), "{err}");

        let line = "A11 6 A34 A43 1169 A65 A75 4 A77 A101 4 A121 67 A143 A152 2 A173 1 A192 A201 1\n";
        std::fs::write(&path, line).unwrap();
        let err = load_german_credit_with(&path, &opts).unwrap_err();
        assert!(err.to_string().contains("A77"), "{err}");
    }

    #[test]
    fn missing_file_is_a_missing_input() {
        let err = load_german_credit(Path::new("/nonexistent/german.data")).unwrap_err();
        assert!(matches!(err, Error::MissingInput { .. }));
    }
}
