//! Command-line front end: `audit`, `sweep-alpha`, `cf-compare`, `gen-data`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::audit::{
    aggregate, audit_fitted, AuditReport, CenterRecord, CfCostComparison, CfrReport, CurvePoint, FittedSystem, Group,
    Metric,
};
use crate::config::{Experiment, RunConfig};
use crate::data::{generate_synthetic, load_german_credit_with, Dataset};
use crate::error::{Error, Result};
use crate::similarity::Norm;
use crate::stats::{fmt_sig9, MeanBand};

#[derive(Debug, Parser)]
#[command(
    name = "effort-audit",
    version,
    about = "Equality-of-effort fairness audits via causal recourse"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Audit one dataset over the quantile grid.
    Audit(RunArgs),
    /// Audit synthetic data across alpha values and report ACR and CFR.
    SweepAlpha(RunArgs),
    /// Compare recourse costs of counterfactually fair and unfair individuals.
    CfCompare(RunArgs),
    /// Write a synthetic dataset to CSV.
    GenData(GenArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Single seed.
    #[arg(long, conflicts_with = "seeds")]
    pub seed: Option<u64>,
    /// Seed range `N..M` (end exclusive) or a comma list.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Comma-separated quantile grid.
    #[arg(long)]
    pub quantiles: Option<String>,
    /// Comma-separated alpha values (synthetic only).
    #[arg(long)]
    pub alpha: Option<String>,
    /// Neighborhood distance: `l1` or `l2`
    #[arg(long, value_parser = parse_norm)]
    pub norm: Option<Norm>,
    /// German credit data file.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Also write per-center records to `records.csv`.
    #[arg(long)]
    pub records: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_norm(s: &str) -> std::result::Result<Norm, String> {
    match s {
        "l1" | "L1" => Ok(Norm::L1),
        "l2" | "L2" => Ok(Norm::L2),
        _ => Err(format!("unknown norm `{s}` (expected l1 or l2)")),
    }
}

pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::Config(format!("cannot parse seeds `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a >= b {
            return Err(bad());
        }
        return Ok((a..b).collect());
    }
    s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

fn parse_floats(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Config(format!("cannot parse {what} value `{p}`")))
        })
        .collect()
}

/// Exit status for an error: 2 for missing inputs, 1 otherwise.
pub fn exit_code(error: &Error) -> i32 {
    match error.root() {
        Error::MissingInput { .. } => 2,
        _ => 1,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Audit(args) => cmd_audit(&args),
        Command::SweepAlpha(args) => cmd_sweep(&args),
        Command::CfCompare(args) => cmd_cf_compare(&args),
        Command::GenData(args) => {
            let d = generate_synthetic(args.n, args.alpha, args.seed)?;
            if let Some(dir) = args.out.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)?;
                }
            }
            d.write_csv(&args.out)
        }
    }
}

/// The config file with command-line overrides applied.
pub fn resolve_config(args: &RunArgs) -> Result<(RunConfig, PathBuf)> {
    let mut config = RunConfig::load(&args.config)?;
    if let Some(s) = args.seed {
        config.seeds = vec![s];
    }
    if let Some(s) = &args.seeds {
        config.seeds = parse_seeds(s)?;
    }
    if let Some(q) = &args.quantiles {
        config.quantiles = parse_floats(q, "quantile")?;
        if !config.quantiles.contains(&config.individual_quantile) {
            config.individual_quantile = config.quantiles[0];
        }
    }
    if let Some(a) = &args.alpha {
        config.synthetic.alpha = parse_floats(a, "alpha")?;
    }
    if let Some(n) = args.norm {
        config.norm = n;
    }
    if let Some(d) = &args.data {
        match config.german.as_mut() {
            Some(g) => g.path = d.clone(),
            None => return Err(Error::Config("--data only applies to the german experiment".into())),
        }
    }
    config.validate()?;
    let out = args
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    Ok((config, out))
}

/// Loads or generates the dataset of one run.
pub fn load_dataset(config: &RunConfig, alpha: f64, seed: u64) -> Result<Dataset> {
    match config.experiment {
        Experiment::Synthetic => generate_synthetic(config.synthetic.n, alpha, seed),
        Experiment::German => {
            let g = config
                .german
                .as_ref()
                .ok_or_else(|| Error::Config("missing [german] section".into()))?;
            load_german_credit_with(&g.path, &config.german_options()?).map_err(|e| match e {
                Error::MissingInput { path, .. } => Error::MissingInput {
                    path,
                    hint: "German credit data (pass its location with --data)".into(),
                },
                other => other,
            })
        }
    }
}

/// One audited dataset with its counterfactual fairness.
pub struct Run {
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
    pub system: FittedSystem,
    pub report: AuditReport,
    pub cfr: CfrReport,
}

/// Fits and audits every seed (synthetic) or the single dataset (German).
pub fn audit_runs(config: &RunConfig, alpha: f64) -> Result<Vec<Run>> {
    let audit_config = config.audit_config();
    let seeds: Vec<Option<u64>> = match config.experiment {
        Experiment::Synthetic => config.seeds.iter().copied().map(Some).collect(),
        Experiment::German => vec![None],
    };
    seeds
        .into_iter()
        .map(|seed| {
            let dataset = load_dataset(config, alpha, seed.unwrap_or(0))?;
            let graph = config.graph_for(alpha)?;
            let system = FittedSystem::fit(&dataset, &graph, &audit_config)?;
            let report = audit_fitted(&system, &audit_config)?;
            let cfr = system.counterfactual_fairness()?;
            log::info!(
                "audited {} rows (seed {:?}, alpha {alpha}): {} unfavorable, {} without recourse",
                dataset.len(),
                seed,
                report.recourse.unfavorable,
                report.recourse.unfavorable - report.recourse.found
            );
            Ok(Run {
                seed,
                alpha: (config.experiment == Experiment::Synthetic).then_some(alpha),
                system,
                report,
                cfr,
            })
        })
        .collect()
}

/// Curves pooled over the centers of all runs.
pub fn pooled_curves(runs: &[Run], quantiles: &[f64]) -> Vec<CurvePoint> {
    let records: Vec<CenterRecord> = runs.iter().flat_map(|r| r.report.records.iter().cloned()).collect();
    aggregate(&records, quantiles)
}

#[derive(Serialize)]
struct RunSummary<'a> {
    seed: Option<u64>,
    alpha: Option<f64>,
    cfr: &'a CfrReport,
    report: AuditReportView<'a>,
}

/// A report without its per-center records, which go to CSV instead.
#[derive(Serialize)]
struct AuditReportView<'a> {
    provenance: &'a crate::data::Provenance,
    model: &'a crate::audit::ModelEcho,
    distance_features: &'a [String],
    centers: &'a std::collections::BTreeMap<Group, usize>,
    recourse: &'a crate::audit::RecourseCounts,
    curves: &'a [CurvePoint],
    system: &'a [crate::audit::SystemLevel],
    absent_acr: usize,
}

impl<'a> From<&'a AuditReport> for AuditReportView<'a> {
    fn from(r: &'a AuditReport) -> Self {
        Self {
            provenance: &r.provenance,
            model: &r.model,
            distance_features: &r.distance_features,
            centers: &r.centers,
            recourse: &r.recourse,
            curves: &r.curves,
            system: &r.system,
            absent_acr: r.absent_acr,
        }
    }
}

#[derive(Serialize)]
struct AuditOutput<'a> {
    config: &'a RunConfig,
    audit_config: crate::audit::AuditConfig,
    runs: Vec<RunSummary<'a>>,
    pooled_curves: &'a [CurvePoint],
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("partial");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn csv_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| Error::Schema(format!("csv: {e}"));
    w.write_record(header).map_err(ser)?;
    for r in rows {
        w.write_record(&r).map_err(ser)?;
    }
    w.into_inner().map_err(|e| Error::Schema(format!("csv: {e}")))
}

fn band_cells(band: Option<&MeanBand>) -> [String; 3] {
    match band {
        Some(b) => [fmt_sig9(b.mean), fmt_sig9(b.ci_low), fmt_sig9(b.ci_high)],
        None => [String::new(), String::new(), String::new()],
    }
}

pub fn curves_csv(curves: &[CurvePoint]) -> Result<Vec<u8>> {
    let rows = curves
        .iter()
        .map(|c| {
            let [m, lo, hi] = band_cells(c.band.as_ref());
            vec![
                c.group.as_str().to_string(),
                fmt_sig9(c.quantile),
                c.metric.as_str().to_string(),
                m,
                lo,
                hi,
            ]
        })
        .collect();
    csv_bytes(
        &["center_group", "quantile", "metric", "mean", "ci_low", "ci_high"],
        rows,
    )
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(fmt_sig9).unwrap_or_default()
}

fn records_csv(runs: &[Run]) -> Result<Vec<u8>> {
    let mut rows = Vec::new();
    for run in runs {
        for r in &run.report.records {
            rows.push(vec![
                run.seed.map(|s| s.to_string()).unwrap_or_default(),
                r.center.to_string(),
                r.group.as_str().to_string(),
                fmt_sig9(r.quantile),
                r.pos.members.to_string(),
                r.neg.members.to_string(),
                opt_cell(r.pos.phi),
                opt_cell(r.neg.phi),
                opt_cell(r.acr),
                fmt_sig9(r.rd),
                serde_json::to_value(r.decision)?
                    .as_str()
                    .unwrap_or_default()
                    .to_string(),
            ]);
        }
    }
    csv_bytes(
        &[
            "seed",
            "center",
            "center_group",
            "quantile",
            "size_pos",
            "size_neg",
            "phi_pos",
            "phi_neg",
            "acr",
            "rd",
            "decision",
        ],
        rows,
    )
}

fn cmd_audit(args: &RunArgs) -> Result<()> {
    let (config, out) = resolve_config(args)?;
    let alpha = config.synthetic.alpha[0];
    if config.experiment == Experiment::Synthetic && config.synthetic.alpha.len() > 1 {
        log::info!("audit uses the first alpha ({alpha}); use sweep-alpha for the rest");
    }
    let runs = audit_runs(&config, alpha)?;
    let pooled = pooled_curves(&runs, &config.quantiles);
    fs::create_dir_all(&out)?;
    let output = AuditOutput {
        config: &config,
        audit_config: config.audit_config(),
        runs: runs
            .iter()
            .map(|r| RunSummary {
                seed: r.seed,
                alpha: r.alpha,
                cfr: &r.cfr,
                report: (&r.report).into(),
            })
            .collect(),
        pooled_curves: &pooled,
    };
    write_json(&out.join("report.json"), &output)?;
    write_atomic(&out.join("curves.csv"), &curves_csv(&pooled)?)?;
    if args.records {
        write_atomic(&out.join("records.csv"), &records_csv(&runs)?)?;
    }
    for group in [Group::Protected, Group::Unprotected] {
        let at = |q: f64| {
            pooled
                .iter()
                .find(|c| c.group == group && c.quantile == q && c.metric == Metric::Acr)
                .and_then(|c| c.band.as_ref())
                .map(|b| format!("{:.4}", b.mean))
                .unwrap_or_else(|| "n/a".into())
        };
        println!(
            "{:<11} ACR(q={}) = {}  ACR(q=1) = {}",
            group.as_str(),
            config.individual_quantile,
            at(config.individual_quantile),
            at(1.0)
        );
    }
    for run in &runs {
        println!("CFR = {:.4} (seed {:?})", run.cfr.ratio, run.seed);
    }
    println!("wrote {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct SweepPoint {
    alpha: f64,
    metric: &'static str,
    group: &'static str,
    band: Option<MeanBand>,
}

fn cmd_sweep(args: &RunArgs) -> Result<()> {
    let (config, out) = resolve_config(args)?;
    if config.experiment != Experiment::Synthetic {
        return Err(Error::Config("sweep-alpha needs the synthetic experiment".into()));
    }
    let mut points = Vec::new();
    for &alpha in &config.synthetic.alpha {
        let runs = audit_runs(&config, alpha)?;
        let pooled = pooled_curves(&runs, &config.quantiles);
        for group in [Group::Protected, Group::Unprotected] {
            for (metric, q) in [("acr_system", 1.0), ("acr_individual", config.individual_quantile)] {
                let band = pooled
                    .iter()
                    .find(|c| c.group == group && c.quantile == q && c.metric == Metric::Acr)
                    .and_then(|c| c.band);
                points.push(SweepPoint {
                    alpha,
                    metric,
                    group: group.as_str(),
                    band,
                });
            }
        }
        let cfrs: Vec<f64> = runs.iter().map(|r| r.cfr.ratio).collect();
        points.push(SweepPoint {
            alpha,
            metric: "cfr",
            group: "all",
            band: MeanBand::from_values(&cfrs),
        });
        log::info!("alpha {alpha}: CFR {:?}", cfrs);
    }
    fs::create_dir_all(&out)?;
    let rows = points
        .iter()
        .map(|p| {
            let [m, lo, hi] = band_cells(p.band.as_ref());
            vec![fmt_sig9(p.alpha), p.metric.to_string(), p.group.to_string(), m, lo, hi]
        })
        .collect();
    write_atomic(
        &out.join("sweep.csv"),
        &csv_bytes(&["alpha", "metric", "group", "mean", "ci_low", "ci_high"], rows)?,
    )?;
    write_json(&out.join("sweep.json"), &points)?;
    for p in &points {
        if let Some(b) = &p.band {
            println!("alpha={:<4} {:<15} {:<11} {:.4}", p.alpha, p.metric, p.group, b.mean);
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}

#[derive(Serialize)]
struct CfOutput {
    seed: Option<u64>,
    alpha: Option<f64>,
    comparison: CfCostComparison,
}

fn cmd_cf_compare(args: &RunArgs) -> Result<()> {
    let (config, out) = resolve_config(args)?;
    let alpha = config.synthetic.alpha[0];
    let seed = config.seeds[0];
    let dataset = load_dataset(&config, alpha, seed)?;
    let system = FittedSystem::fit(&dataset, &config.graph_for(alpha)?, &config.audit_config())?;
    let comparison = system.cost_by_cf_group()?;
    fs::create_dir_all(&out)?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (label, costs) in [("fair", &comparison.fair_costs), ("unfair", &comparison.unfair_costs)] {
        rows.extend(costs.iter().map(|c| vec![label.to_string(), fmt_sig9(*c)]));
    }
    write_atomic(&out.join("cf_costs.csv"), &csv_bytes(&["cf_group", "cost"], rows)?)?;
    let synthetic = config.experiment == Experiment::Synthetic;
    write_json(
        &out.join("cf_compare.json"),
        &CfOutput {
            seed: synthetic.then_some(seed),
            alpha: synthetic.then_some(alpha),
            comparison: comparison.clone(),
        },
    )?;
    println!(
        "CFR = {:.4}; {} fair and {} unfair individuals with recourse",
        comparison.cfr.ratio,
        comparison.fair_costs.len(),
        comparison.unfair_costs.len()
    );
    for (label, b) in [("fair", &comparison.fair), ("unfair", &comparison.unfair)] {
        if let Some(b) = b {
            println!("{label:<6} median cost {:.4} (IQR {:.4}..{:.4})", b.median, b.q1, b.q3);
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}
