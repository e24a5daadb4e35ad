//! Recourse through minimal structural interventions.
//!
//! With linear structural equations and a logistic `h`, the counterfactual of
//! an action on a fixed intervention set `J` is affine in the deltas, and the
//! flip condition `h(x_cf) >= 0.5 + margin` is a half-space. Each `J` is
//! therefore a weighted-L1 linear program over a polyhedron (delta boxes,
//! plausibility rows, flip half-space). [`solve_mint`] solves every `J`
//! exactly by inspecting the vertices of that polyhedron split along the
//! coordinate hyperplanes, and keeps the cheapest.
//!
//! [`brute_force_oracle`] answers the same question by exhaustive grid
//! search through [`CausalModel::counterfactual`] and [`Classifier::predict`]
//! only, and exists to check the solver.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::models::Classifier;
use crate::scm::CausalModel;
use crate::stats;

/// Score margin above 0.5 required for a flip.
pub const FLIP_MARGIN: f64 = 1e-6;
/// Solutions needing a larger |delta| than this count as a search limit.
pub const MAX_DELTA: f64 = 1e9;
const FEAS_TOL: f64 = 1e-9;
const COST_TIE: f64 = 1e-12;

/// Interventions keyed by dataset column; the key set is `J`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Action {
    deltas: BTreeMap<usize, f64>,
}

impl Action {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(usize, f64)]) -> Self {
        Self {
            deltas: pairs.iter().copied().collect(),
        }
    }

    pub fn insert(&mut self, column: usize, delta: f64) {
        self.deltas.insert(column, delta);
    }

    pub fn deltas(&self) -> &BTreeMap<usize, f64> {
        &self.deltas
    }

    pub fn delta(&self, column: usize) -> Option<f64> {
        self.deltas.get(&column).copied()
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn intervened(&self) -> Vec<usize> {
        self.deltas.keys().copied().collect()
    }

    pub fn l2_norm(&self) -> f64 {
        self.deltas.values().map(|d| d * d).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actionability {
    Immutable,
    MutableNonActionable,
    Actionable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[default]
    Free,
    IncreaseOnly,
    DecreaseOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureConstraint {
    pub actionability: Actionability,
    pub direction: Direction,
    pub delta_min: f64,
    pub delta_max: f64,
}

impl FeatureConstraint {
    pub fn immutable() -> Self {
        Self {
            actionability: Actionability::Immutable,
            direction: Direction::Free,
            delta_min: 0.0,
            delta_max: 0.0,
        }
    }

    pub fn mutable() -> Self {
        Self {
            actionability: Actionability::MutableNonActionable,
            ..Self::immutable()
        }
    }

    pub fn actionable(direction: Direction) -> Self {
        Self {
            actionability: Actionability::Actionable,
            direction,
            delta_min: f64::NEG_INFINITY,
            delta_max: f64::INFINITY,
        }
    }

    pub fn with_box(mut self, delta_min: f64, delta_max: f64) -> Self {
        self.delta_min = delta_min;
        self.delta_max = delta_max;
        self
    }

    /// Delta interval after applying the direction restriction.
    pub fn delta_bounds(&self) -> (f64, f64) {
        let (mut lo, mut hi) = (self.delta_min, self.delta_max);
        match self.direction {
            Direction::Free => {}
            Direction::IncreaseOnly => lo = lo.max(0.0),
            Direction::DecreaseOnly => hi = hi.min(0.0),
        }
        (lo, hi)
    }
}

/// Feasibility (which columns may be acted on, and how far) and
/// plausibility (box bounds on every column of the counterfactual).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSet {
    features: Vec<FeatureConstraint>,
    plausibility: Vec<(f64, f64)>,
    sensitive: usize,
}

impl ConstraintSet {
    /// Every column mutable-but-not-actionable, the sensitive column
    /// immutable, no plausibility bounds.
    pub fn new(width: usize, sensitive: usize) -> Result<Self> {
        if sensitive >= width {
            return Err(Error::Constraint(format!("sensitive column {sensitive} out of range")));
        }
        let mut features = vec![FeatureConstraint::mutable(); width];
        features[sensitive] = FeatureConstraint::immutable();
        Ok(Self {
            features,
            plausibility: vec![(f64::NEG_INFINITY, f64::INFINITY); width],
            sensitive,
        })
    }

    pub fn set(&mut self, column: usize, constraint: FeatureConstraint) -> Result<()> {
        if column >= self.features.len() {
            return Err(Error::Constraint(format!("column {column} out of range")));
        }
        if column == self.sensitive && constraint.actionability == Actionability::Actionable {
            return Err(Error::Constraint("the sensitive attribute cannot be actionable".into()));
        }
        let (lo, hi) = constraint.delta_bounds();
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Constraint(format!(
                "empty or invalid delta box on column {column}"
            )));
        }
        self.features[column] = constraint;
        Ok(())
    }

    pub fn set_plausibility(&mut self, column: usize, lo: f64, hi: f64) -> Result<()> {
        if column >= self.plausibility.len() {
            return Err(Error::Constraint(format!("column {column} out of range")));
        }
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::Constraint(format!(
                "invalid plausibility bounds on column {column}"
            )));
        }
        self.plausibility[column] = (lo, hi);
        Ok(())
    }

    /// Plausibility bounds set to the observed `[min, max]` of each column.
    pub fn with_observed_bounds(mut self, dataset: &Dataset) -> Result<Self> {
        for j in 0..self.features.len() {
            let (lo, hi) = dataset.column_bounds(j);
            self.set_plausibility(j, lo, hi)?;
        }
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.features.len()
    }

    pub fn sensitive(&self) -> usize {
        self.sensitive
    }

    pub fn feature(&self, column: usize) -> &FeatureConstraint {
        &self.features[column]
    }

    pub fn plausibility(&self, column: usize) -> (f64, f64) {
        self.plausibility[column]
    }

    pub fn actionable(&self) -> Vec<usize> {
        (0..self.features.len())
            .filter(|&j| self.features[j].actionability == Actionability::Actionable)
            .collect()
    }

    pub fn is_plausible(&self, x: &[f64], tol: f64) -> bool {
        x.iter().zip(&self.plausibility).all(|(&v, &(lo, hi))| {
            let slack = tol * (1.0 + v.abs());
            v >= lo - slack && v <= hi + slack
        })
    }

    /// Whether an action only touches actionable columns within their boxes.
    pub fn permits(&self, action: &Action, tol: f64) -> bool {
        action.deltas().iter().all(|(&c, &d)| {
            c < self.features.len() && self.features[c].actionability == Actionability::Actionable && d.is_finite() && {
                let (lo, hi) = self.features[c].delta_bounds();
                let slack = tol * (1.0 + d.abs());
                d >= lo - slack && d <= hi + slack
            }
        })
    }
}

/// Normalized weighted-L1 cost: `sum weight_j |delta_j| / R_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSpec {
    pub ranges: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CostSpec {
    pub fn uniform(ranges: Vec<f64>) -> Self {
        let weights = vec![1.0; ranges.len()];
        Self { ranges, weights }
    }

    /// Observed ranges of every column, unit weights.
    pub fn from_dataset(dataset: &Dataset) -> Self {
        Self::uniform((0..dataset.columns().len()).map(|j| dataset.column_range(j)).collect())
    }

    pub fn unit_cost(&self, column: usize) -> f64 {
        self.weights[column] / self.ranges[column]
    }

    fn validate(&self, columns: &[usize]) -> Result<()> {
        for &c in columns {
            let (r, w) = (self.ranges.get(c), self.weights.get(c));
            match (r, w) {
                (Some(&r), Some(&w)) if r > 0.0 && w > 0.0 && r.is_finite() && w.is_finite() => {}
                _ => {
                    return Err(Error::Constraint(format!(
                        "cost spec needs a positive range and weight for actionable column {c}"
                    )))
                }
            }
        }
        Ok(())
    }
}

pub fn cost(action: &Action, spec: &CostSpec) -> f64 {
    action
        .deltas()
        .iter()
        .map(|(&c, &d)| spec.weights[c] * d.abs() / spec.ranges[c])
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recourse {
    pub action: Action,
    pub cost: f64,
    pub counterfactual: Vec<f64>,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoRecourse {
    /// No feasible, plausible action flips the decision.
    Infeasible,
    /// A flip needs deltas beyond the search limit.
    SearchLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RecourseOutcome {
    Found(Recourse),
    Absent(NoRecourse),
}

impl RecourseOutcome {
    pub fn recourse(&self) -> Option<&Recourse> {
        match self {
            RecourseOutcome::Found(r) => Some(r),
            RecourseOutcome::Absent(_) => None,
        }
    }

    pub fn cost(&self) -> Option<f64> {
        self.recourse().map(|r| r.cost)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub flip_margin: f64,
    pub max_delta: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            flip_margin: FLIP_MARGIN,
            max_delta: MAX_DELTA,
        }
    }
}

fn check_inputs(
    model: &CausalModel,
    h: &Classifier,
    x: &[f64],
    constraints: &ConstraintSet,
    spec: &CostSpec,
) -> Result<Vec<usize>> {
    if constraints.width() != x.len() || model.width() != x.len() {
        return Err(Error::Schema(format!(
            "instance width {} does not match model ({}) or constraints ({})",
            x.len(),
            model.width(),
            constraints.width()
        )));
    }
    if h.predict(x)?.favorable {
        return Err(Error::Precondition("instance is already favorably classified".into()));
    }
    let actionable = constraints.actionable();
    for &c in &actionable {
        if model.node_of_column(c).is_none() {
            return Err(Error::Constraint(format!(
                "actionable column {c} is not a node of the causal graph"
            )));
        }
    }
    spec.validate(&actionable)?;
    Ok(actionable)
}

pub fn solve_mint(
    model: &CausalModel,
    h: &Classifier,
    x: &[f64],
    constraints: &ConstraintSet,
    spec: &CostSpec,
) -> Result<RecourseOutcome> {
    solve_mint_with(model, h, x, constraints, spec, &SolverOptions::default())
}

pub fn solve_mint_with(
    model: &CausalModel,
    h: &Classifier,
    x: &[f64],
    constraints: &ConstraintSet,
    spec: &CostSpec,
    options: &SolverOptions,
) -> Result<RecourseOutcome> {
    let actionable = check_inputs(model, h, x, constraints, spec)?;
    let target = stats::logit(0.5 + options.flip_margin);
    let (coef, _) = h.raw_linear_form(x.len());

    let mut best: Option<Candidate> = None;
    for subset in subsets_by_size(&actionable) {
        if let Some(found) = solve_subset(model, h, x, constraints, spec, &subset, &coef, target)? {
            if best.as_ref().is_none_or(|b| found.beats(b)) {
                best = Some(found);
            }
        }
    }
    let Some(best) = best else {
        return Ok(RecourseOutcome::Absent(NoRecourse::Infeasible));
    };
    if best.deltas.iter().any(|d| d.abs() > options.max_delta) {
        return Ok(RecourseOutcome::Absent(NoRecourse::SearchLimit));
    }
    let action = Action::from_pairs(
        &best
            .subset
            .iter()
            .copied()
            .zip(best.deltas.iter().copied())
            .collect::<Vec<_>>(),
    );
    let counterfactual = model.counterfactual(x, &action)?;
    let recourse = Recourse {
        cost: cost(&action, spec),
        score: h.score(&counterfactual)?,
        action,
        counterfactual,
    };
    verify(h, constraints, &recourse)?;
    Ok(RecourseOutcome::Found(recourse))
}

/// Replays a recourse and checks the flip and every bound.
pub fn check_recourse(
    model: &CausalModel,
    h: &Classifier,
    x: &[f64],
    constraints: &ConstraintSet,
    recourse: &Recourse,
) -> Result<()> {
    let replay = model.counterfactual(x, &recourse.action)?;
    let drift = replay
        .iter()
        .zip(&recourse.counterfactual)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs() / (1.0 + a.abs())));
    if drift > 1e-9 {
        return Err(Error::Soundness(format!(
            "replayed counterfactual drifts by {drift:.3e}"
        )));
    }
    verify(h, constraints, recourse)
}

fn verify(h: &Classifier, constraints: &ConstraintSet, recourse: &Recourse) -> Result<()> {
    if !h.predict(&recourse.counterfactual)?.favorable {
        return Err(Error::Soundness(format!(
            "counterfactual scores {} and does not flip the decision",
            recourse.score
        )));
    }
    if !constraints.permits(&recourse.action, FEAS_TOL) {
        return Err(Error::Soundness("action violates feasibility constraints".into()));
    }
    if !constraints.is_plausible(&recourse.counterfactual, FEAS_TOL) {
        return Err(Error::Soundness("counterfactual violates plausibility bounds".into()));
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Candidate {
    subset: Vec<usize>,
    deltas: Vec<f64>,
    cost: f64,
}

impl Candidate {
    /// Cheaper wins; ties go to fewer features, then lower column indices,
    /// then the smaller L2 norm.
    fn beats(&self, other: &Candidate) -> bool {
        let tie = COST_TIE * other.cost.abs().max(1.0);
        if self.cost < other.cost - tie {
            return true;
        }
        if self.cost > other.cost + tie {
            return false;
        }
        match self
            .subset
            .len()
            .cmp(&other.subset.len())
            .then_with(|| self.subset.cmp(&other.subset))
        {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => l2(&self.deltas) < l2(&other.deltas),
        }
    }
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|d| d * d).sum::<f64>().sqrt()
}

/// Nonempty subsets ordered by size, then lexicographically.
fn subsets_by_size(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=items.len() {
        for combo in Combinations::new(items.len(), k) {
            out.push(combo.iter().map(|&i| items[i]).collect());
        }
    }
    out
}

/// `a . delta <= b`
struct Halfspace {
    a: Vec<f64>,
    b: f64,
}

#[allow(clippy::too_many_arguments)]
fn solve_subset(
    model: &CausalModel,
    h: &Classifier,
    x: &[f64],
    constraints: &ConstraintSet,
    spec: &CostSpec,
    subset: &[usize],
    coef: &[f64],
    target: f64,
) -> Result<Option<Candidate>> {
    let k = subset.len();
    let width = x.len();
    let zero = Action::from_pairs(&subset.iter().map(|&c| (c, 0.0)).collect::<Vec<_>>());
    let base = model.counterfactual(x, &zero)?;

    // Columns of the affine map delta -> counterfactual, by unit probes.
    let mut jac = vec![vec![0.0; k]; width];
    for (i, &c) in subset.iter().enumerate() {
        let mut probe = zero.clone();
        probe.insert(c, 1.0);
        let moved = model.counterfactual(x, &probe)?;
        for m in 0..width {
            jac[m][i] = moved[m] - base[m];
        }
    }

    let mut rows = Vec::new();
    let gain: Vec<f64> = (0..k).map(|i| (0..width).map(|m| coef[m] * jac[m][i]).sum()).collect();
    let needed = target - h.logit(&base)?;
    rows.push(Halfspace {
        a: gain.iter().map(|g| -g).collect(),
        b: -needed,
    });
    for (i, &c) in subset.iter().enumerate() {
        let (lo, hi) = constraints.feature(c).delta_bounds();
        let mut unit = vec![0.0; k];
        unit[i] = 1.0;
        if hi.is_finite() {
            rows.push(Halfspace { a: unit.clone(), b: hi });
        }
        if lo.is_finite() {
            rows.push(Halfspace {
                a: unit.iter().map(|u| -u).collect(),
                b: -lo,
            });
        }
    }
    for m in 0..width {
        let (lo, hi) = constraints.plausibility(m);
        let row = &jac[m];
        if row.iter().all(|&v| v == 0.0) {
            let slack = FEAS_TOL * (1.0 + base[m].abs());
            if base[m] < lo - slack || base[m] > hi + slack {
                return Ok(None);
            }
            continue;
        }
        if hi.is_finite() {
            rows.push(Halfspace {
                a: row.clone(),
                b: hi - base[m],
            });
        }
        if lo.is_finite() {
            rows.push(Halfspace {
                a: row.iter().map(|v| -v).collect(),
                b: base[m] - lo,
            });
        }
    }

    let unit_costs: Vec<f64> = subset.iter().map(|&c| spec.unit_cost(c)).collect();
    let mut planes: Vec<(Vec<f64>, f64)> = rows.iter().map(|r| (r.a.clone(), r.b)).collect();
    for i in 0..k {
        let mut unit = vec![0.0; k];
        unit[i] = 1.0;
        planes.push((unit, 0.0));
    }

    let mut best: Option<Candidate> = None;
    for combo in Combinations::new(planes.len(), k) {
        let a: Vec<Vec<f64>> = combo.iter().map(|&p| planes[p].0.clone()).collect();
        let b: Vec<f64> = combo.iter().map(|&p| planes[p].1).collect();
        let Some(delta) = solve_square(a, b) else {
            continue;
        };
        let feasible = rows.iter().all(|r| {
            let lhs: f64 = r.a.iter().zip(&delta).map(|(a, d)| a * d).sum();
            lhs <= r.b + FEAS_TOL * (1.0 + r.b.abs())
        });
        if !feasible {
            continue;
        }
        let cand = Candidate {
            subset: subset.to_vec(),
            cost: delta.iter().zip(&unit_costs).map(|(d, c)| d.abs() * c).sum(),
            deltas: delta,
        };
        if best.as_ref().is_none_or(|b| cand.beats(b)) {
            best = Some(cand);
        }
    }
    Ok(best)
}

/// Gaussian elimination with partial pivoting on row-normalized input;
/// `None` when (numerically) singular.
#[allow(clippy::needless_range_loop)]
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for i in 0..n {
        let scale = a[i].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return None;
        }
        for v in &mut a[i] {
            *v /= scale;
        }
        b[i] /= scale;
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut out = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * out[j]).sum();
        out[i] = (b[i] - s) / a[i][i];
    }
    out.iter().all(|v| v.is_finite()).then_some(out)
}

/// k-combinations of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub const ORACLE_MAX_FEATURES: usize = 3;

/// Exhaustive grid search over every intervention subset: each actionable
/// delta box is cut into `steps` equal intervals (plus zero when inside the
/// box). Needs finite delta boxes and at most three actionable features.
pub fn brute_force_oracle(
    model: &CausalModel,
    h: &Classifier,
    x: &[f64],
    constraints: &ConstraintSet,
    spec: &CostSpec,
    steps: usize,
) -> Result<Option<(Action, f64)>> {
    let actionable = check_inputs(model, h, x, constraints, spec)?;
    if actionable.len() > ORACLE_MAX_FEATURES {
        return Err(Error::Precondition(format!(
            "oracle refuses {} actionable features (max {ORACLE_MAX_FEATURES})",
            actionable.len()
        )));
    }
    if steps == 0 {
        return Err(Error::Precondition("oracle needs at least one grid step".into()));
    }
    let mut axes = BTreeMap::new();
    for &c in &actionable {
        let (lo, hi) = constraints.feature(c).delta_bounds();
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Precondition(format!(
                "oracle needs a finite delta box on column {c}"
            )));
        }
        axes.insert(c, grid_axis(lo, hi, steps));
    }

    let threshold = 0.5 + FLIP_MARGIN;
    let mut best: Option<(Action, f64)> = None;
    for subset in subsets_by_size(&actionable) {
        let dims: Vec<&Vec<f64>> = subset.iter().map(|c| &axes[c]).collect();
        let mut counter = vec![0usize; subset.len()];
        'grid: loop {
            let action = Action::from_pairs(
                &subset
                    .iter()
                    .zip(&counter)
                    .zip(&dims)
                    .map(|((&c, &i), axis)| (c, axis[i]))
                    .collect::<Vec<_>>(),
            );
            let x_cf = model.counterfactual(x, &action)?;
            if h.predict(&x_cf)?.score >= threshold && constraints.is_plausible(&x_cf, FEAS_TOL) {
                let c = cost(&action, spec);
                let better = match &best {
                    None => true,
                    Some((_, b)) => c < *b - COST_TIE * b.max(1.0),
                };
                if better {
                    best = Some((action, c));
                }
            }
            for d in (0..counter.len()).rev() {
                counter[d] += 1;
                if counter[d] < dims[d].len() {
                    continue 'grid;
                }
                counter[d] = 0;
            }
            break;
        }
    }
    Ok(best)
}

fn grid_axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let mut axis: Vec<f64> = if hi > lo {
        (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect()
    } else {
        vec![lo]
    };
    if lo <= 0.0 && hi >= 0.0 && !axis.contains(&0.0) {
        axis.push(0.0);
        axis.sort_by(f64::total_cmp);
    }
    axis
}
