//! Acceptance checks, one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use effort_audit::audit::{run_audit, CurvePoint, Group, Metric, Plausibility};
use effort_audit::cli::{audit_runs, curves_csv, pooled_curves, Run};
use effort_audit::config::RunConfig;
use effort_audit::data::{generate_synthetic, synthetic_graph, Dataset};
use effort_audit::models::penalized_nll;
use effort_audit::recourse::Action;
use effort_audit::scm::fit_causal_model;
use effort_audit::similarity::{instance_distance, DistanceProfile, FeatureSchema, Norm};
use effort_audit::stats::MeanBand;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn config(name: &str) -> RunConfig {
    RunConfig::load(&repo().join("configs").join(name)).expect("bundled config loads")
}

type Criterion = (&'static str, fn() -> Check);

struct Check {
    lines: Vec<String>,
    ok: bool,
}

impl Check {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn expect(&mut self, pass: bool, what: String) {
        self.lines
            .push(format!("    [{}] {what}", if pass { "ok" } else { "MISS" }));
        self.ok &= pass;
    }

    fn within(&mut self, label: &str, value: Option<f64>, lo: f64, hi: f64) {
        match value {
            Some(v) => self.expect((lo..=hi).contains(&v), format!("{label} = {v:.4} in [{lo}, {hi}]")),
            None => self.expect(false, format!("{label} undefined, wanted [{lo}, {hi}]")),
        }
    }
}

fn mean_at(curves: &[CurvePoint], group: Group, q: f64, metric: Metric) -> Option<f64> {
    band_at(curves, group, q, metric).map(|b| b.mean)
}

fn band_at(curves: &[CurvePoint], group: Group, q: f64, metric: Metric) -> Option<MeanBand> {
    curves
        .iter()
        .find(|c| c.group == group && c.quantile == q && c.metric == metric)
        .and_then(|c| c.band)
}

fn cfr_band(runs: &[Run]) -> MeanBand {
    MeanBand::from_values(&runs.iter().map(|r| r.cfr.ratio).collect::<Vec<_>>()).unwrap()
}

fn criterion_1() -> Check {
    let mut c = Check::new();
    let start = Instant::now();
    let cfg = config("synthetic.toml");
    let runs = audit_runs(&cfg, 0.0).unwrap();
    let curves = pooled_curves(&runs, &cfg.quantiles);
    let secs = start.elapsed().as_secs_f64();
    c.expect(
        runs.len() == 5 && cfg.synthetic.n == 1000,
        format!("{} seeds of n = {}", runs.len(), cfg.synthetic.n),
    );
    for g in [Group::Protected, Group::Unprotected] {
        c.within(
            &format!("{} system ACR", g.as_str()),
            mean_at(&curves, g, 1.0, Metric::Acr),
            0.85,
            1.15,
        );
    }
    let cfrs: Vec<f64> = runs.iter().map(|r| r.cfr.ratio).collect();
    c.expect(
        cfrs.iter().all(|&v| v == 1.0),
        format!("CFR per seed {cfrs:?} all exactly 1"),
    );
    c.expect(secs < 120.0, format!("runtime {secs:.1}s < 120s"));
    c
}

fn criterion_2() -> Check {
    let mut c = Check::new();
    let cfg = config("synthetic.toml");
    let runs = audit_runs(&cfg, 2.0).unwrap();
    let curves = pooled_curves(&runs, &cfg.quantiles);
    c.within(
        "protected ACR(0.2)",
        mean_at(&curves, Group::Protected, 0.2, Metric::Acr),
        1.2,
        1.9,
    );
    c.within(
        "protected ACR(1)",
        mean_at(&curves, Group::Protected, 1.0, Metric::Acr),
        1.6,
        2.4,
    );
    c.within(
        "unprotected ACR(1)",
        mean_at(&curves, Group::Unprotected, 1.0, Metric::Acr),
        0.35,
        0.65,
    );
    c
}

fn criterion_3() -> Check {
    let mut c = Check::new();
    let cfg = config("synthetic.toml");
    let mut acr = Vec::new();
    let mut cfr = Vec::new();
    for alpha in [0.0, 1.0, 2.0, 3.0, 4.0, 6.0] {
        let runs = audit_runs(&cfg, alpha).unwrap();
        let curves = pooled_curves(&runs, &cfg.quantiles);
        let a = band_at(&curves, Group::Protected, 1.0, Metric::Acr).unwrap();
        let f = cfr_band(&runs);
        c.lines.push(format!(
            "    alpha {alpha}: system ACR {:.4} (width {:.4}), CFR {:.4} (width {:.4})",
            a.mean,
            a.width(),
            f.mean,
            f.width()
        ));
        acr.push(a);
        cfr.push((alpha, f));
    }
    let violations = |bands: &[MeanBand], up: bool| {
        bands
            .windows(2)
            .filter(|w| {
                let step = if up {
                    w[1].mean - w[0].mean
                } else {
                    w[0].mean - w[1].mean
                };
                step < 0.0
            })
            .map(|w| (w[1].mean - w[0].mean).abs() > w[0].width().max(w[1].width()))
            .collect::<Vec<bool>>()
    };
    let acr_v = violations(&acr, true);
    let cfr_bands: Vec<MeanBand> = cfr.iter().map(|(_, b)| *b).collect();
    let cfr_v = violations(&cfr_bands, false);
    c.expect(
        acr_v.iter().all(|&beyond| !beyond) && acr_v.len() <= 1,
        format!(
            "system ACR non-decreasing ({} reversals, none beyond a CI width)",
            acr_v.len()
        ),
    );
    c.expect(
        cfr_v.iter().all(|&beyond| !beyond) && cfr_v.len() <= 1,
        format!("CFR non-increasing ({} reversals, none beyond a CI width)", cfr_v.len()),
    );
    c.within(
        "CFR(alpha = 2)",
        cfr.iter().find(|(a, _)| *a == 2.0).map(|(_, b)| b.mean),
        0.66,
        0.78,
    );
    c
}

fn criterion_4() -> Check {
    let mut c = Check::new();
    let start = Instant::now();
    let cfg = config("german.toml");
    let runs = audit_runs(&cfg, 0.0).unwrap();
    let curves = pooled_curves(&runs, &cfg.quantiles);
    c.within(
        "protected ACR(0.2)",
        mean_at(&curves, Group::Protected, 0.2, Metric::Acr),
        2.2,
        3.8,
    );
    c.within(
        "protected ACR(1)",
        mean_at(&curves, Group::Protected, 1.0, Metric::Acr),
        1.15,
        1.45,
    );
    let worst = cfg
        .quantiles
        .iter()
        .filter_map(|&q| mean_at(&curves, Group::Unprotected, q, Metric::Acr).map(|v| (q, v)))
        .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    c.expect(
        worst.1 < 0.8,
        format!(
            "unprotected ACR(q) < 0.8 on the grid (max {:.4} at q = {})",
            worst.1, worst.0
        ),
    );
    c.within(
        "unprotected ACR(1)",
        mean_at(&curves, Group::Unprotected, 1.0, Metric::Acr),
        0.70,
        0.85,
    );
    c.within("CFR", Some(runs[0].cfr.ratio), 0.09, 0.17);
    c.lines.push(format!(
        "    (label agreement under the flip: {:.4})",
        runs[0].cfr.label_agreement
    ));
    let secs = start.elapsed().as_secs_f64();
    c.expect(secs < 600.0, format!("runtime {secs:.1}s < 600s"));
    c
}

fn criterion_5() -> Check {
    let mut c = Check::new();
    for (name, alpha) in [("german.toml", 0.0), ("synthetic.toml", 2.0)] {
        let mut cfg = config(name);
        cfg.plausibility = Plausibility::Unbounded;
        let runs = audit_runs(&cfg, alpha).unwrap();
        let records: usize = runs.iter().map(|r| r.report.records.len()).sum();
        let nonzero: usize = runs
            .iter()
            .map(|r| r.report.records.iter().filter(|x| x.rd != 0.0).count())
            .sum();
        c.expect(
            nonzero == 0,
            format!("{name}: RD = 0 on {records} center/quantile records ({nonzero} nonzero)"),
        );
    }
    c
}

fn criterion_6() -> Check {
    let mut c = Check::new();
    let cmp = common::compare_solver_and_oracle(200, 11, 40);
    c.expect(
        cmp.problems == 200,
        format!("{} random problems with 1-3 actionable features", cmp.problems),
    );
    c.expect(
        cmp.cost_violations == 0,
        format!(
            "solver cost <= oracle + 1e-3 + one grid step (worst excess {:.2e})",
            cmp.worst_excess
        ),
    );
    c.expect(
        cmp.absence_disagreements == 0,
        format!(
            "absence agrees: {} both found, {} both absent, {} disagreements",
            cmp.both_found, cmp.both_absent, cmp.absence_disagreements
        ),
    );
    c
}

fn criterion_7() -> Check {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let d = generate_synthetic(1000, 2.0, 7).unwrap();
    let m = fit_causal_model(&d, &synthetic_graph(2.0)).unwrap();
    let identity = d
        .rows()
        .iter()
        .all(|x| m.counterfactual(x, &Action::empty()).unwrap() == *x);
    c.expect(identity, "counterfactual identity under the empty action".into());
    let round_trip = d.rows().iter().all(|x| {
        let back = m.reconstruct(&m.abduct(x).unwrap(), &Action::empty(), x).unwrap();
        back.iter().zip(x).all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + b.abs()))
    });
    c.expect(round_trip, "SCM round-trip within 1e-9 on 1000 instances".into());

    let schema = FeatureSchema::for_dataset(&d, Norm::L1);
    let mut axioms = true;
    for _ in 0..10_000 {
        let (x, y, z) = (
            d.row(rng.random_range(0..1000)),
            d.row(rng.random_range(0..1000)),
            d.row(rng.random_range(0..1000)),
        );
        let dist = |a: &[f64], b: &[f64]| instance_distance(a, b, &schema).unwrap();
        axioms &= dist(x, y) >= 0.0
            && dist(x, x) == 0.0
            && dist(x, y) == dist(y, x)
            && dist(x, y) <= dist(x, z) + dist(z, y) + 1e-12;
    }
    c.expect(axioms, "metric axioms on 10000 random triples".into());

    let mut nested = true;
    for _ in 0..50 {
        let center = rng.random_range(0..1000);
        let p = DistanceProfile::new(&d, center, &schema);
        let (q1, q2): (f64, f64) = (rng.random_range(0.01..1.0), rng.random_range(0.01..1.0));
        let members = |q: f64| {
            let n = p.neighborhood(&d, q).unwrap();
            n.protected
                .iter()
                .chain(&n.unprotected)
                .map(|m| m.0)
                .collect::<std::collections::BTreeSet<_>>()
        };
        nested &= members(q1.min(q2)).is_subset(&members(q1.max(q2)));
    }
    c.expect(nested, "neighborhoods nested in q (50 random centers)".into());

    let rows: Vec<Vec<f64>> = d.rows()[..200].to_vec();
    let labels = &d.outcome()[..200];
    let mut grad_ok = true;
    for _ in 0..50 {
        let w: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b = rng.random_range(-1.0..1.0);
        let (_, gw, _) = penalized_nll(&rows, labels, &w, b, 1e-6);
        for k in 0..3 {
            let (mut up, mut dn) = (w.clone(), w.clone());
            up[k] += 1e-6;
            dn[k] -= 1e-6;
            let fd =
                (penalized_nll(&rows, labels, &up, b, 1e-6).0 - penalized_nll(&rows, labels, &dn, b, 1e-6).0) / 2e-6;
            grad_ok &= (fd - gw[k]).abs() <= 1e-4 * gw[k].abs().max(1e-3);
        }
    }
    c.expect(
        grad_ok,
        "logistic gradient vs central differences (1e-4 relative)".into(),
    );

    let base = generate_synthetic(500, 2.0, 21).unwrap();
    let mut audit_cfg = config("synthetic.toml").audit_config();
    audit_cfg.quantiles = vec![1.0];
    let mut ratios = Vec::new();
    let mut prng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..20 {
        let mut s = base.column(0);
        s.shuffle(&mut prng);
        let permuted: Dataset = base.with_sensitive_values(&s).unwrap();
        let report = run_audit(&permuted, &synthetic_graph(2.0), &audit_cfg).unwrap();
        ratios.push(report.system_level(Group::Protected).unwrap().acr.unwrap());
    }
    let band = MeanBand::from_values(&ratios).unwrap();
    c.expect(
        band.ci_low <= 1.0 && 1.0 <= band.ci_high,
        format!(
            "permutation null: mean ACR {:.4}, 95% band [{:.4}, {:.4}] contains 1",
            band.mean, band.ci_low, band.ci_high
        ),
    );

    let mut cfg = config("synthetic.toml");
    cfg.seeds = vec![0, 1];
    let a = curves_csv(&pooled_curves(&audit_runs(&cfg, 2.0).unwrap(), &cfg.quantiles)).unwrap();
    let b = curves_csv(&pooled_curves(&audit_runs(&cfg, 2.0).unwrap(), &cfg.quantiles)).unwrap();
    c.expect(
        a == b,
        format!("repeat runs give byte-identical curves ({} bytes)", a.len()),
    );
    c
}

fn criterion_8() -> Check {
    let mut c = Check::new();
    let cfg = config("german.toml");
    let runs = audit_runs(&cfg, 0.0).unwrap();
    let curves = pooled_curves(&runs, &cfg.quantiles);
    let csv = String::from_utf8(curves_csv(&curves).unwrap()).unwrap();
    let mut rows = 0;
    let mut spread = BTreeMap::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[1] == "1.00000000e0" && !f[3].is_empty() {
            rows += 1;
            if f[3] != f[4] || f[3] != f[5] {
                *spread.entry(format!("{} {}", f[0], f[2])).or_insert(0) += 1;
            }
        }
    }
    for g in [Group::Protected, Group::Unprotected] {
        let b = band_at(&curves, g, 1.0, Metric::Acr).unwrap();
        c.expect(
            b.sd == 0.0,
            format!("{} ACR at q = 1: sd {} over {} centers", g.as_str(), b.sd, b.n),
        );
    }
    c.expect(
        spread.is_empty(),
        format!("{rows} q = 1 rows in curves.csv have mean = ci_low = ci_high {spread:?}"),
    );
    c
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("synthetic null case (alpha = 0)", criterion_1),
        ("synthetic alpha = 2 bands", criterion_2),
        ("alpha-sweep monotonicity and CFR(2)", criterion_3),
        ("German credit bands", criterion_4),
        ("recourse discrepancy under unbounded feasibility", criterion_5),
        ("solver optimality vs grid oracle", criterion_6),
        ("property suites", criterion_7),
        ("zero variance at q = 1 (German curves)", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let check = f();
        println!("{} criterion {}: {name}", if check.ok { "PASS" } else { "FAIL" }, i + 1);
        for l in &check.lines {
            println!("{l}");
        }
        if !check.ok {
            failed.push(i + 1);
        }
    }
    println!();
    println!(
        "acceptance: {} of {} criteria pass; failing: {failed:?}",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
