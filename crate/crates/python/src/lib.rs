//! Python bindings for the effort audit.

use std::collections::BTreeMap;
use std::path::PathBuf;

use effort_audit::audit::{self, AuditReport, CurvePoint, FittedSystem, Group, Metric};
use effort_audit::cli;
use effort_audit::config::RunConfig;
use effort_audit::data;
use effort_audit::recourse::{Action, RecourseOutcome};
use effort_audit::Error;
use pyo3::exceptions::{PyFileNotFoundError, PyKeyError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e.root() {
        Error::MissingInput { .. } => PyFileNotFoundError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_group(name: &str) -> PyResult<Group> {
    match name {
        "protected" => Ok(Group::Protected),
        "unprotected" => Ok(Group::Unprotected),
        _ => Err(PyValueError::new_err(format!("unknown group `{name}`"))),
    }
}

fn parse_metric(name: &str) -> PyResult<Metric> {
    Metric::ALL
        .into_iter()
        .find(|m| m.as_str() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown metric `{name}`")))
}

/// An immutable tabular dataset with a binary sensitive column.
#[pyclass(name = "Dataset", module = "effort_audit", frozen)]
struct PyDataset(data::Dataset);

#[pymethods]
impl PyDataset {
    #[staticmethod]
    #[pyo3(signature = (n, alpha, seed=0))]
    fn synthetic(n: usize, alpha: f64, seed: u64) -> PyResult<Self> {
        data::generate_synthetic(n, alpha, seed).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn german(path: PathBuf) -> PyResult<Self> {
        data::load_german_credit(&path).map(Self).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn columns(&self) -> Vec<String> {
        self.0.column_names().into_iter().map(String::from).collect()
    }

    #[getter]
    fn sensitive(&self) -> String {
        self.0.sensitive_name().to_string()
    }

    #[getter]
    fn outcome(&self) -> Vec<u8> {
        self.0.outcome().to_vec()
    }

    fn row(&self, i: usize) -> PyResult<Vec<f64>> {
        if i >= self.0.len() {
            return Err(PyValueError::new_err(format!("row {i} out of range")));
        }
        Ok(self.0.row(i).to_vec())
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.0.rows().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Dataset(rows={}, columns={:?})", self.0.len(), self.0.column_names())
    }
}

/// A parsed run configuration.
#[pyclass(name = "RunConfig", module = "effort_audit", skip_from_py_object)]
#[derive(Clone)]
struct PyRunConfig(RunConfig);

#[pymethods]
impl PyRunConfig {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        RunConfig::load(&path).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        RunConfig::from_toml(text).map(Self).map_err(to_py)
    }

    #[getter]
    fn quantiles(&self) -> Vec<f64> {
        self.0.quantiles.clone()
    }

    #[setter]
    fn set_quantiles(&mut self, q: Vec<f64>) -> PyResult<()> {
        let mut next = self.0.clone();
        next.quantiles = q;
        if !next.quantiles.contains(&next.individual_quantile) {
            next.individual_quantile = next.quantiles.first().copied().unwrap_or(1.0);
        }
        next.validate().map_err(to_py)?;
        self.0 = next;
        Ok(())
    }

    #[getter]
    fn seeds(&self) -> Vec<u64> {
        self.0.seeds.clone()
    }

    #[setter]
    fn set_seeds(&mut self, seeds: Vec<u64>) -> PyResult<()> {
        if seeds.is_empty() {
            return Err(PyValueError::new_err("at least one seed is required"));
        }
        self.0.seeds = seeds;
        Ok(())
    }

    #[getter]
    fn alphas(&self) -> Vec<f64> {
        self.0.synthetic.alpha.clone()
    }

    /// Replaces the German data path.
    fn with_data(&self, path: PathBuf) -> PyResult<Self> {
        let mut next = self.0.clone();
        match next.german.as_mut() {
            Some(g) => g.path = path,
            None => return Err(PyValueError::new_err("not a german configuration")),
        }
        Ok(Self(next))
    }
}

/// `(group, quantile, metric, mean, ci_low, ci_high)`
type CurveRow = (String, f64, String, Option<f64>, Option<f64>, Option<f64>);

/// Audit results pooled over every seed of one configuration.
#[pyclass(name = "AuditResult", module = "effort_audit", frozen)]
struct PyAuditResult {
    reports: Vec<AuditReport>,
    cfr: Vec<f64>,
    curves: Vec<CurvePoint>,
}

#[pymethods]
impl PyAuditResult {
    /// Pooled mean of `metric` over centers of `group` at quantile `q`.
    fn mean(&self, group: &str, q: f64, metric: &str) -> PyResult<Option<f64>> {
        let (g, m) = (parse_group(group)?, parse_metric(metric)?);
        let point = self
            .curves
            .iter()
            .find(|c| c.group == g && c.quantile == q && c.metric == m)
            .ok_or_else(|| PyKeyError::new_err(format!("no curve point at q = {q}")))?;
        Ok(point.band.as_ref().map(|b| b.mean))
    }

    /// Rows `(group, quantile, metric, mean, ci_low, ci_high)`.
    fn curves(&self) -> Vec<CurveRow> {
        self.curves
            .iter()
            .map(|c| {
                let b = c.band.as_ref();
                (
                    c.group.as_str().to_string(),
                    c.quantile,
                    c.metric.as_str().to_string(),
                    b.map(|b| b.mean),
                    b.map(|b| b.ci_low),
                    b.map(|b| b.ci_high),
                )
            })
            .collect()
    }

    /// Counterfactual fairness ratio of each run.
    #[getter]
    fn cfr(&self) -> Vec<f64> {
        self.cfr.clone()
    }

    /// System-level ACR of each run for centers of `group`.
    fn system_acr(&self, group: &str) -> PyResult<Vec<Option<f64>>> {
        let g = parse_group(group)?;
        Ok(self
            .reports
            .iter()
            .map(|r| r.system_level(g).and_then(|s| s.acr))
            .collect())
    }

    fn curves_csv(&self) -> PyResult<String> {
        let bytes = cli::curves_csv(&self.curves).map_err(to_py)?;
        String::from_utf8(bytes).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.reports).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// Runs the configured audit; `alpha` picks the synthetic alpha (defaults to
/// the first configured value).
#[pyfunction]
#[pyo3(signature = (config, alpha=None))]
fn run_audit(py: Python<'_>, config: &PyRunConfig, alpha: Option<f64>) -> PyResult<PyAuditResult> {
    let alpha = alpha.unwrap_or(config.0.synthetic.alpha[0]);
    let cfg = config.0.clone();
    let runs = py.detach(move || cli::audit_runs(&cfg, alpha)).map_err(to_py)?;
    let curves = cli::pooled_curves(&runs, &config.0.quantiles);
    let cfr = runs.iter().map(|r| r.cfr.ratio).collect();
    Ok(PyAuditResult {
        reports: runs.into_iter().map(|r| r.report).collect(),
        cfr,
        curves,
    })
}

/// A fitted causal model, classifier and constraints for one dataset.
#[pyclass(name = "FittedSystem", module = "effort_audit", frozen)]
struct PyFittedSystem(FittedSystem);

#[pymethods]
impl PyFittedSystem {
    #[new]
    #[pyo3(signature = (dataset, config, alpha=None))]
    fn new(dataset: &PyDataset, config: &PyRunConfig, alpha: Option<f64>) -> PyResult<Self> {
        let alpha = alpha.unwrap_or(config.0.synthetic.alpha[0]);
        let graph = config.0.graph_for(alpha).map_err(to_py)?;
        FittedSystem::fit(&dataset.0, &graph, &config.0.audit_config())
            .map(Self)
            .map_err(to_py)
    }

    /// Classifier score of `x`.
    fn score(&self, x: Vec<f64>) -> PyResult<f64> {
        self.0.classifier.score(&x).map_err(to_py)
    }

    /// Structural counterfactual of `x` under additive `deltas` keyed by column name.
    fn counterfactual(&self, x: Vec<f64>, deltas: BTreeMap<String, f64>) -> PyResult<Vec<f64>> {
        let mut action = Action::empty();
        for (name, d) in deltas {
            action.insert(self.0.dataset.column_index(&name).map_err(to_py)?, d);
        }
        self.0.model.counterfactual(&x, &action).map_err(to_py)
    }

    /// Minimal-cost recourse for an unfavorably classified `x`: a dict of
    /// deltas by column name and the cost, or `None` when no action works.
    fn recourse(&self, x: Vec<f64>) -> PyResult<Option<(BTreeMap<String, f64>, f64)>> {
        let s = &self.0;
        let out = effort_audit::recourse::solve_mint(&s.model, &s.classifier, &x, &s.constraints, &s.cost_spec)
            .map_err(to_py)?;
        Ok(match out {
            RecourseOutcome::Found(r) => {
                let names = s.dataset.column_names();
                let deltas = r
                    .action
                    .deltas()
                    .iter()
                    .map(|(&c, &d)| (names[c].to_string(), d))
                    .collect();
                Some((deltas, r.cost))
            }
            RecourseOutcome::Absent(_) => None,
        })
    }

    /// Counterfactual fairness ratio over the fitted dataset.
    fn counterfactual_fairness(&self) -> PyResult<f64> {
        self.0.counterfactual_fairness().map(|c| c.ratio).map_err(to_py)
    }

    /// Median recourse cost of counterfactually fair and unfair individuals.
    fn cf_cost_medians(&self) -> PyResult<(Option<f64>, Option<f64>)> {
        let cmp = self.0.cost_by_cf_group().map_err(to_py)?;
        Ok((cmp.fair.map(|b| b.median), cmp.unfair.map(|b| b.median)))
    }
}

/// `phi_pos / phi_neg` for two lists of per-member costs (`None` = no recourse).
#[pyfunction]
fn average_cost_ratio(pos: Vec<Option<f64>>, neg: Vec<Option<f64>>) -> Option<f64> {
    let summary = |v: Vec<Option<f64>>| audit::EffortSummary::from_outcomes(v.into_iter().map(Some));
    audit::acr(&summary(pos), &summary(neg)).ok()
}

#[pymodule(name = "effort_audit")]
fn effort_audit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDataset>()?;
    m.add_class::<PyRunConfig>()?;
    m.add_class::<PyAuditResult>()?;
    m.add_class::<PyFittedSystem>()?;
    m.add_function(wrap_pyfunction!(run_audit, m)?)?;
    m.add_function(wrap_pyfunction!(average_cost_ratio, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
