//! Equality-of-effort audit.
//!
//! For every center individual and every quantile the neighborhood is split
//! into the center's own group (`pos`, I⁺) and the other group (`neg`, I⁻).
//! Each side gets an [`EffortSummary`]: the mean minimal recourse cost `phi`
//! over its unfavorably predicted members that admit recourse, and the share
//! `rho` of those members without recourse. The average cost ratio is
//! `phi_pos / phi_neg` and the recourse discrepancy is `rho_neg - rho_pos`.
//!
//! Recourse depends only on the individual, so it is solved once per
//! unfavorably predicted row and shared by every neighborhood.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{split_by_sensitive, Dataset, Provenance};
use crate::error::{Error, Result};
use crate::models::{fit_classifier, Classifier, FitOptions, FitReport, Prediction};
use crate::recourse::{
    check_recourse, solve_mint, Action, Actionability, ConstraintSet, CostSpec, Direction, FeatureConstraint,
    NoRecourse, RecourseOutcome,
};
use crate::scm::{fit_causal_model, CausalGraph, CausalModel, StructuralEquation};
use crate::similarity::{DistanceProfile, FeatureSchema, Norm};
use crate::stats::{BoxplotStats, MeanBand};

pub const DEFAULT_QUANTILES: [f64; 13] = [
    0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.40, 0.50, 0.60, 0.70, 0.80, 0.90, 1.00,
];
pub const DEFAULT_TAU: f64 = 1.2;
pub const DEFAULT_EPSILON: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Protected,
    Unprotected,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Protected => "protected",
            Group::Unprotected => "unprotected",
        }
    }

    pub fn other(self) -> Group {
        match self {
            Group::Protected => Group::Unprotected,
            Group::Unprotected => Group::Protected,
        }
    }
}

/// Which individuals serve as audit centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterFilter {
    /// Unfavorable prediction `h(x)`.
    #[default]
    Prediction,
    /// Unfavorable observed outcome `Y`.
    Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Plausibility {
    /// Observed `[min, max]` of every column.
    #[default]
    Observed,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintDecl {
    pub class: Actionability,
    #[serde(default)]
    pub direction: Direction,
    #[serde(default)]
    pub delta_min: Option<f64>,
    #[serde(default)]
    pub delta_max: Option<f64>,
}

impl ConstraintDecl {
    pub fn new(class: Actionability, direction: Direction) -> Self {
        Self {
            class,
            direction,
            delta_min: None,
            delta_max: None,
        }
    }

    fn to_constraint(&self) -> FeatureConstraint {
        match self.class {
            Actionability::Immutable => FeatureConstraint::immutable(),
            Actionability::MutableNonActionable => FeatureConstraint::mutable(),
            Actionability::Actionable => FeatureConstraint::actionable(self.direction).with_box(
                self.delta_min.unwrap_or(f64::NEG_INFINITY),
                self.delta_max.unwrap_or(f64::INFINITY),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub classifier_features: Vec<String>,
    pub fit: FitOptions,
    /// Per-column feasibility; unlisted columns are mutable but not
    /// actionable, the sensitive column is always immutable.
    pub constraints: BTreeMap<String, ConstraintDecl>,
    pub plausibility: Plausibility,
    /// Explicit plausibility bounds overriding the mode for single columns.
    pub plausibility_overrides: BTreeMap<String, (f64, f64)>,
    /// Cost weights per column (default 1).
    pub cost_weights: BTreeMap<String, f64>,
    pub quantiles: Vec<f64>,
    pub tau: f64,
    pub epsilon: f64,
    pub norm: Norm,
    pub center_filter: CenterFilter,
    /// Outcome label treated as unfavorable (0 or 1).
    pub unfavorable_label: u8,
}

impl AuditConfig {
    pub fn new(classifier_features: Vec<String>, constraints: BTreeMap<String, ConstraintDecl>) -> Self {
        Self {
            classifier_features,
            fit: FitOptions::default(),
            constraints,
            plausibility: Plausibility::Observed,
            plausibility_overrides: BTreeMap::new(),
            cost_weights: BTreeMap::new(),
            quantiles: DEFAULT_QUANTILES.to_vec(),
            tau: DEFAULT_TAU,
            epsilon: DEFAULT_EPSILON,
            norm: Norm::L1,
            center_filter: CenterFilter::Prediction,
            unfavorable_label: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.quantiles.is_empty() {
            return Err(Error::Config("quantile grid is empty".into()));
        }
        if self.quantiles.iter().any(|&q| !(q > 0.0 && q <= 1.0)) {
            return Err(Error::Config("quantiles must lie in (0, 1]".into()));
        }
        if self.quantiles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("quantiles must be strictly increasing".into()));
        }
        if self.tau.is_nan() || self.tau <= 0.0 || self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::Config("thresholds tau and epsilon must be positive".into()));
        }
        if self.unfavorable_label > 1 {
            return Err(Error::Config("unfavorable label must be 0 or 1".into()));
        }
        if self.classifier_features.is_empty() {
            return Err(Error::Config("classifier needs at least one feature".into()));
        }
        Ok(())
    }
}

/// Everything fitted once per dataset and shared by all audit queries.
pub struct FittedSystem {
    pub dataset: Dataset,
    pub model: CausalModel,
    pub classifier: Classifier,
    pub fit_report: FitReport,
    pub constraints: ConstraintSet,
    pub cost_spec: CostSpec,
    pub predictions: Vec<Prediction>,
}

impl FittedSystem {
    pub fn fit(dataset: &Dataset, graph: &CausalGraph, config: &AuditConfig) -> Result<Self> {
        config.validate()?;
        let dataset = if config.unfavorable_label == 1 {
            dataset.with_inverted_outcome()
        } else {
            dataset.clone()
        };
        if graph.index_of(dataset.sensitive_name()).is_none() {
            return Err(Error::Schema(format!(
                "sensitive column `{}` must be a node of the causal graph",
                dataset.sensitive_name()
            )));
        }
        if !graph.is_root(dataset.sensitive_name()) {
            return Err(Error::Schema("the sensitive attribute must be a root node".into()));
        }
        let model = fit_causal_model(&dataset, graph).map_err(|e| e.context("fitting structural equations"))?;
        let features: Vec<&str> = config.classifier_features.iter().map(String::as_str).collect();
        let (classifier, fit_report) =
            fit_classifier(&dataset, &features, &config.fit).map_err(|e| e.context("fitting classifier"))?;
        let constraints = build_constraints(&dataset, config)?;
        let mut cost_spec = CostSpec::from_dataset(&dataset);
        for (name, &w) in &config.cost_weights {
            let j = dataset.column_index(name)?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::Config(format!("cost weight for `{name}` must be positive")));
            }
            cost_spec.weights[j] = w;
        }
        let predictions = dataset
            .rows()
            .iter()
            .map(|r| classifier.predict(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dataset,
            model,
            classifier,
            fit_report,
            constraints,
            cost_spec,
            predictions,
        })
    }

    pub fn is_unfavorable(&self, row: usize) -> bool {
        !self.predictions[row].favorable
    }

    /// Solves recourse for every unfavorably predicted row (in parallel) and
    /// replays each solution. Favorable rows map to `None`.
    pub fn solve_all(&self) -> Result<Vec<Option<RecourseOutcome>>> {
        (0..self.dataset.len())
            .into_par_iter()
            .map(|i| {
                if !self.is_unfavorable(i) {
                    return Ok(None);
                }
                let x = self.dataset.row(i);
                let outcome = solve_mint(&self.model, &self.classifier, x, &self.constraints, &self.cost_spec)
                    .map_err(|e| e.context(format!("recourse for row {i}")))?;
                if let RecourseOutcome::Found(r) = &outcome {
                    check_recourse(&self.model, &self.classifier, x, &self.constraints, r)
                        .map_err(|e| e.context(format!("recourse for row {i}")))?;
                }
                Ok(Some(outcome))
            })
            .collect()
    }
}

fn build_constraints(dataset: &Dataset, config: &AuditConfig) -> Result<ConstraintSet> {
    let mut cs = ConstraintSet::new(dataset.columns().len(), dataset.sensitive_index())?;
    for (name, decl) in &config.constraints {
        let j = dataset.column_index(name)?;
        cs.set(j, decl.to_constraint())
            .map_err(|e| e.context(format!("constraint on `{name}`")))?;
    }
    if config.plausibility == Plausibility::Observed {
        cs = cs.with_observed_bounds(dataset)?;
    }
    for (name, &(lo, hi)) in &config.plausibility_overrides {
        cs.set_plausibility(dataset.column_index(name)?, lo, hi)?;
    }
    Ok(cs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffortSummary {
    /// All members of this side of the neighborhood.
    pub members: usize,
    /// Members with an unfavorable prediction (`|I*|`).
    pub unfavorable: usize,
    /// Unfavorable members that admit recourse.
    pub solvable: usize,
    /// Mean recourse cost over solvable members.
    pub phi: Option<f64>,
    /// Share of unfavorable members without recourse; 0 when there are none.
    pub rho: f64,
}

impl EffortSummary {
    /// `outcomes` yields one entry per member: `None` for a favorable
    /// prediction, `Some(None)` for no recourse, `Some(Some(cost))` otherwise.
    pub fn from_outcomes<I>(outcomes: I) -> Self
    where
        I: IntoIterator<Item = Option<Option<f64>>>,
    {
        let (mut members, mut unfavorable, mut solvable, mut total) = (0, 0, 0, 0.0);
        for o in outcomes {
            members += 1;
            if let Some(c) = o {
                unfavorable += 1;
                if let Some(c) = c {
                    solvable += 1;
                    total += c;
                }
            }
        }
        let phi = (solvable > 0).then(|| total / solvable as f64);
        let rho = if unfavorable > 0 {
            (unfavorable - solvable) as f64 / unfavorable as f64
        } else {
            0.0
        };
        Self {
            members,
            unfavorable,
            solvable,
            phi,
            rho,
        }
    }

    /// No unfavorable members at all: nothing to measure.
    pub fn is_absent(&self) -> bool {
        self.unfavorable == 0
    }
}

/// Solves recourse for each member of one side and summarizes it.
pub fn effort_summary(
    members: &[usize],
    dataset: &Dataset,
    model: &CausalModel,
    h: &Classifier,
    constraints: &ConstraintSet,
    spec: &CostSpec,
) -> Result<EffortSummary> {
    let mut outcomes = Vec::with_capacity(members.len());
    for &i in members {
        let x = dataset.row(i);
        if h.predict(x)?.favorable {
            outcomes.push(None);
        } else {
            outcomes.push(Some(solve_mint(model, h, x, constraints, spec)?.cost()));
        }
    }
    Ok(EffortSummary::from_outcomes(outcomes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcrAbsence {
    NoSolvableOwnGroup,
    NoSolvableOtherGroup,
    ZeroOtherCost,
}

impl fmt::Display for AcrAbsence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AcrAbsence::NoSolvableOwnGroup => "no solvable neighbors in the center's group",
            AcrAbsence::NoSolvableOtherGroup => "no solvable neighbors in the comparison group",
            AcrAbsence::ZeroOtherCost => "comparison group has zero average cost",
        })
    }
}

/// `phi_pos / phi_neg`.
pub fn acr(pos: &EffortSummary, neg: &EffortSummary) -> std::result::Result<f64, AcrAbsence> {
    let own = pos.phi.ok_or(AcrAbsence::NoSolvableOwnGroup)?;
    let other = neg.phi.ok_or(AcrAbsence::NoSolvableOtherGroup)?;
    if other <= 0.0 {
        return Err(AcrAbsence::ZeroOtherCost);
    }
    Ok(own / other)
}

/// `rho_neg - rho_pos`.
pub fn recourse_discrepancy(pos: &EffortSummary, neg: &EffortSummary) -> f64 {
    neg.rho - pos.rho
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Equal,
    Unequal,
    Indeterminate,
}

/// Unequal when `|rd| >= epsilon`; otherwise equal iff `|acr| <= tau`.
pub fn decide(acr_value: Option<f64>, rd_value: f64, tau: f64, epsilon: f64) -> Decision {
    if rd_value.abs() >= epsilon {
        return Decision::Unequal;
    }
    match acr_value {
        None => Decision::Indeterminate,
        Some(a) if a.abs() <= tau => Decision::Equal,
        Some(_) => Decision::Unequal,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterRecord {
    pub center: usize,
    pub group: Group,
    pub quantile: f64,
    /// The center's own group (I⁺).
    pub pos: EffortSummary,
    /// The other group (I⁻).
    pub neg: EffortSummary,
    pub acr: Option<f64>,
    pub acr_absence: Option<AcrAbsence>,
    pub rd: f64,
    pub decision: Decision,
    /// Share of protected members in the whole neighborhood.
    pub ratio_protected: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Acr,
    Rd,
    PhiPos,
    PhiNeg,
    RatioProtected,
    SubsetSizePos,
    SubsetSizeNeg,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::Acr,
        Metric::Rd,
        Metric::PhiPos,
        Metric::PhiNeg,
        Metric::RatioProtected,
        Metric::SubsetSizePos,
        Metric::SubsetSizeNeg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Acr => "acr",
            Metric::Rd => "rd",
            Metric::PhiPos => "phi_pos",
            Metric::PhiNeg => "phi_neg",
            Metric::RatioProtected => "ratio_protected",
            Metric::SubsetSizePos => "subset_size_pos",
            Metric::SubsetSizeNeg => "subset_size_neg",
        }
    }

    fn value(self, r: &CenterRecord) -> Option<f64> {
        match self {
            Metric::Acr => r.acr,
            Metric::Rd => Some(r.rd),
            Metric::PhiPos => r.pos.phi,
            Metric::PhiNeg => r.neg.phi,
            Metric::RatioProtected => Some(r.ratio_protected),
            Metric::SubsetSizePos => Some(r.pos.members as f64),
            Metric::SubsetSizeNeg => Some(r.neg.members as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub group: Group,
    pub quantile: f64,
    pub metric: Metric,
    /// Mean and 95% band across centers; `None` when no center defines it.
    pub band: Option<MeanBand>,
    /// Centers whose value was undefined and left out.
    pub absent: usize,
}

/// Per-group mean and band of every metric at every quantile.
pub fn aggregate(records: &[CenterRecord], quantiles: &[f64]) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for group in [Group::Protected, Group::Unprotected] {
        for &q in quantiles {
            let rows: Vec<&CenterRecord> = records.iter().filter(|r| r.group == group && r.quantile == q).collect();
            for metric in Metric::ALL {
                let values: Vec<f64> = rows.iter().filter_map(|r| metric.value(r)).collect();
                out.push(CurvePoint {
                    group,
                    quantile: q,
                    metric,
                    band: MeanBand::from_values(&values),
                    absent: rows.len() - values.len(),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemLevel {
    pub group: Group,
    pub pos: EffortSummary,
    pub neg: EffortSummary,
    pub acr: Option<f64>,
    pub rd: f64,
    pub decision: Decision,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RecourseCounts {
    pub unfavorable: usize,
    pub found: usize,
    pub infeasible: usize,
    pub search_limit: usize,
    /// Found solutions replayed through the model and classifier.
    pub soundness_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelEcho {
    pub equations: Vec<StructuralEquation>,
    pub classifier: Classifier,
    pub fit: FitReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub provenance: Provenance,
    pub config: AuditConfig,
    pub model: ModelEcho,
    pub distance_features: Vec<String>,
    pub centers: BTreeMap<Group, usize>,
    pub recourse: RecourseCounts,
    pub records: Vec<CenterRecord>,
    pub curves: Vec<CurvePoint>,
    pub system: Vec<SystemLevel>,
    pub absent_acr: usize,
}

impl AuditReport {
    pub fn curve(&self, group: Group, quantile: f64, metric: Metric) -> Option<&CurvePoint> {
        self.curves
            .iter()
            .find(|c| c.group == group && c.quantile == quantile && c.metric == metric)
    }

    pub fn system_level(&self, group: Group) -> Option<&SystemLevel> {
        self.system.iter().find(|s| s.group == group)
    }
}

fn group_of(dataset: &Dataset, row: usize) -> Group {
    if dataset.is_protected(row) {
        Group::Protected
    } else {
        Group::Unprotected
    }
}

fn summarize(rows: &[usize], outcomes: &[Option<RecourseOutcome>]) -> EffortSummary {
    EffortSummary::from_outcomes(rows.iter().map(|&i| outcomes[i].as_ref().map(RecourseOutcome::cost)))
}

fn record(
    center: usize,
    group: Group,
    quantile: f64,
    protected: &[usize],
    unprotected: &[usize],
    outcomes: &[Option<RecourseOutcome>],
    config: &AuditConfig,
) -> CenterRecord {
    let (own, other) = match group {
        Group::Protected => (protected, unprotected),
        Group::Unprotected => (unprotected, protected),
    };
    let pos = summarize(own, outcomes);
    let neg = summarize(other, outcomes);
    let ratio = acr(&pos, &neg);
    let rd = recourse_discrepancy(&pos, &neg);
    let total = protected.len() + unprotected.len();
    CenterRecord {
        center,
        group,
        quantile,
        acr: ratio.ok(),
        acr_absence: ratio.err(),
        rd,
        decision: decide(ratio.ok(), rd, config.tau, config.epsilon),
        ratio_protected: protected.len() as f64 / total as f64,
        pos,
        neg,
    }
}

/// Fits the system and runs the audit over every center and quantile.
pub fn run_audit(dataset: &Dataset, graph: &CausalGraph, config: &AuditConfig) -> Result<AuditReport> {
    let system = FittedSystem::fit(dataset, graph, config)?;
    audit_fitted(&system, config)
}

pub fn audit_fitted(system: &FittedSystem, config: &AuditConfig) -> Result<AuditReport> {
    let dataset = &system.dataset;
    let outcomes = system.solve_all()?;

    let mut counts = RecourseCounts::default();
    for o in outcomes.iter().flatten() {
        counts.unfavorable += 1;
        match o {
            RecourseOutcome::Found(_) => {
                counts.found += 1;
                counts.soundness_checked += 1;
            }
            RecourseOutcome::Absent(NoRecourse::Infeasible) => counts.infeasible += 1,
            RecourseOutcome::Absent(NoRecourse::SearchLimit) => counts.search_limit += 1,
        }
    }

    let schema = FeatureSchema::for_dataset(dataset, config.norm);
    let centers: Vec<usize> = (0..dataset.len())
        .filter(|&i| match config.center_filter {
            CenterFilter::Prediction => system.is_unfavorable(i),
            CenterFilter::Outcome => dataset.outcome()[i] == 0,
        })
        .collect();

    // Whole-dataset comparison, shared by every center of a group at q = 1.
    let partition = split_by_sensitive(dataset);
    let system_records: BTreeMap<Group, CenterRecord> = [Group::Protected, Group::Unprotected]
        .into_iter()
        .map(|g| {
            let r = record(
                usize::MAX,
                g,
                1.0,
                &partition.protected,
                &partition.unprotected,
                &outcomes,
                config,
            );
            (g, r)
        })
        .collect();

    let per_center: Vec<Vec<CenterRecord>> = centers
        .par_iter()
        .map(|&c| {
            let group = group_of(dataset, c);
            let profile = DistanceProfile::new(dataset, c, &schema);
            config
                .quantiles
                .iter()
                .map(|&q| {
                    if q == 1.0 {
                        let mut r = system_records[&group].clone();
                        r.center = c;
                        return Ok(r);
                    }
                    let hood = profile
                        .neighborhood(dataset, q)
                        .map_err(|e| e.context(format!("center {c}, q = {q}")))?;
                    let protected: Vec<usize> = hood.protected.iter().map(|m| m.0).collect();
                    let unprotected: Vec<usize> = hood.unprotected.iter().map(|m| m.0).collect();
                    Ok(record(c, group, q, &protected, &unprotected, &outcomes, config))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let records: Vec<CenterRecord> = per_center.into_iter().flatten().collect();

    let curves = aggregate(&records, &config.quantiles);
    let absent_acr = records.iter().filter(|r| r.acr.is_none()).count();
    let mut center_counts = BTreeMap::new();
    for &c in &centers {
        *center_counts.entry(group_of(dataset, c)).or_insert(0) += 1;
    }
    let system_level = system_records
        .into_values()
        .map(|r| SystemLevel {
            group: r.group,
            acr: r.acr,
            rd: r.rd,
            decision: r.decision,
            pos: r.pos,
            neg: r.neg,
        })
        .collect();

    Ok(AuditReport {
        provenance: dataset.provenance().clone(),
        config: config.clone(),
        model: ModelEcho {
            equations: system.model.equations().cloned().collect(),
            classifier: system.classifier.clone(),
            fit: system.fit_report,
        },
        distance_features: schema.names.clone(),
        centers: center_counts,
        recourse: counts,
        records,
        curves,
        system: system_level,
        absent_acr,
    })
}

// ---------------------------------------------------------------------------
// Counterfactual fairness

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfrReport {
    pub n: usize,
    /// Share of individuals not counterfactually unfair, where unfair means
    /// an unfavorable prediction that flipping the sensitive attribute
    /// (and propagating the flip) turns favorable.
    pub ratio: f64,
    /// Rows judged counterfactually unfair.
    pub unfair: Vec<usize>,
    /// Rows whose predicted label changes in either direction.
    pub label_changes: usize,
    /// Share of rows whose predicted label is unchanged.
    pub label_agreement: f64,
}

impl CfrReport {
    pub fn is_unfair(&self, row: usize) -> bool {
        self.unfair.binary_search(&row).is_ok()
    }
}

/// Flips the sensitive attribute of every row through the causal model and
/// compares predictions of the factual and twin instances.
pub fn counterfactual_fairness_ratio(dataset: &Dataset, model: &CausalModel, h: &Classifier) -> Result<CfrReport> {
    let s = dataset.sensitive_index();
    let node = model
        .node_of_column(s)
        .ok_or_else(|| Error::Precondition("sensitive attribute is not a node of the causal graph".into()))?;
    if model.mechanism(node).is_some() {
        return Err(Error::Precondition("sensitive attribute must be a root node".into()));
    }
    let (s0, s1) = (dataset.protected_value(), dataset.unprotected_value());
    let mut unfair = Vec::new();
    let mut changes = 0;
    for (i, x) in dataset.rows().iter().enumerate() {
        let flipped = if x[s] == s0 { s1 } else { s0 };
        let twin = model.counterfactual(x, &Action::from_pairs(&[(s, flipped - x[s])]))?;
        let (fact, cf) = (h.predict(x)?.favorable, h.predict(&twin)?.favorable);
        if fact != cf {
            changes += 1;
            if !fact {
                unfair.push(i);
            }
        }
    }
    let n = dataset.len();
    Ok(CfrReport {
        n,
        ratio: 1.0 - unfair.len() as f64 / n as f64,
        unfair,
        label_changes: changes,
        label_agreement: 1.0 - changes as f64 / n as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfCostComparison {
    pub cfr: CfrReport,
    pub fair_costs: Vec<f64>,
    pub unfair_costs: Vec<f64>,
    pub fair: Option<BoxplotStats>,
    pub unfair: Option<BoxplotStats>,
}

/// Recourse costs of unfavorably predicted individuals with recourse, split
/// by counterfactual fairness.
pub fn cost_by_cf_group(
    dataset: &Dataset,
    model: &CausalModel,
    h: &Classifier,
    constraints: &ConstraintSet,
    spec: &CostSpec,
) -> Result<CfCostComparison> {
    let cfr = counterfactual_fairness_ratio(dataset, model, h)?;
    let costs: Vec<(usize, Option<f64>)> = (0..dataset.len())
        .into_par_iter()
        .map(|i| {
            let x = dataset.row(i);
            if h.predict(x)?.favorable {
                return Ok((i, None));
            }
            Ok((i, solve_mint(model, h, x, constraints, spec)?.cost()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(split_costs(cfr, &costs))
}

fn split_costs(cfr: CfrReport, costs: &[(usize, Option<f64>)]) -> CfCostComparison {
    let mut fair_costs = Vec::new();
    let mut unfair_costs = Vec::new();
    for &(i, c) in costs {
        if let Some(c) = c {
            if cfr.is_unfair(i) {
                unfair_costs.push(c);
            } else {
                fair_costs.push(c);
            }
        }
    }
    CfCostComparison {
        fair: BoxplotStats::from_values(&fair_costs),
        unfair: BoxplotStats::from_values(&unfair_costs),
        cfr,
        fair_costs,
        unfair_costs,
    }
}

impl FittedSystem {
    pub fn counterfactual_fairness(&self) -> Result<CfrReport> {
        counterfactual_fairness_ratio(&self.dataset, &self.model, &self.classifier)
    }

    pub fn cost_by_cf_group(&self) -> Result<CfCostComparison> {
        let cfr = self.counterfactual_fairness()?;
        let outcomes = self.solve_all()?;
        let costs: Vec<(usize, Option<f64>)> = outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| (i, o.as_ref().and_then(RecourseOutcome::cost)))
            .collect();
        Ok(split_costs(cfr, &costs))
    }
}
