//! Structural causal models with additive noise.
//!
//! A [`CausalModel`] pairs a [`CausalGraph`] with one fitted structural
//! equation per non-root node. Instances are plain feature vectors in the
//! dataset's column layout; columns that are not graph nodes pass through
//! every operation untouched.
//!
//! Counterfactuals follow abduction, action and prediction. For additive
//! noise the three steps collapse to a closed form: an intervened node takes
//! `x_j + delta_j`, every other node takes
//! `x_j + f_j(pa_j(x_cf)) - f_j(pa_j(x))`. [`CausalModel::counterfactual`]
//! evaluates the closed form; [`CausalModel::counterfactual_via_abduction`]
//! runs the three steps explicitly, and the two must agree.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, FeatureKind};
use crate::error::{Error, Result};
use crate::recourse::Action;

/// Gram matrices worse conditioned than this are solved by pseudo-inverse.
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalGraph {
    nodes: Vec<String>,
    parents: BTreeMap<String, Vec<String>>,
    #[serde(skip)]
    order: Vec<usize>,
}

impl CausalGraph {
    /// `parents` maps a node to its ordered parent list; nodes without an
    /// entry are roots. Fails on unknown names, duplicates, or cycles.
    pub fn new(nodes: Vec<String>, parents: BTreeMap<String, Vec<String>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for n in &nodes {
            if !seen.insert(n.as_str()) {
                return Err(Error::Graph(format!("duplicate node `{n}`")));
            }
        }
        for (child, ps) in &parents {
            if !seen.contains(child.as_str()) {
                return Err(Error::Graph(format!("unknown node `{child}`")));
            }
            let mut local = BTreeSet::new();
            for p in ps {
                if !seen.contains(p.as_str()) {
                    return Err(Error::Graph(format!("node `{child}` names unknown parent `{p}`")));
                }
                if !local.insert(p.as_str()) {
                    return Err(Error::Graph(format!("node `{child}` lists parent `{p}` twice")));
                }
            }
        }
        let parents: BTreeMap<String, Vec<String>> = parents.into_iter().filter(|(_, ps)| !ps.is_empty()).collect();
        let order = topological_order(&nodes, &parents)?;
        Ok(Self { nodes, parents, order })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn parents_of(&self, name: &str) -> &[String] {
        self.parents.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn parent_map(&self) -> &BTreeMap<String, Vec<String>> {
        &self.parents
    }

    /// Node indices in a valid topological order; ties keep declaration order.
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_root(&self, name: &str) -> bool {
        self.parents_of(name).is_empty()
    }

    pub fn children_of(&self, name: &str) -> Vec<&str> {
        self.nodes
            .iter()
            .filter(|n| self.parents_of(n).iter().any(|p| p == name))
            .map(String::as_str)
            .collect()
    }
}

// Kahn's algorithm, always releasing the lowest-index ready node.
fn topological_order(nodes: &[String], parents: &BTreeMap<String, Vec<String>>) -> Result<Vec<usize>> {
    let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut indegree = vec![0usize; nodes.len()];
    let mut children = vec![Vec::new(); nodes.len()];
    for (child, ps) in parents {
        let c = index[child.as_str()];
        indegree[c] = ps.len();
        for p in ps {
            children[index[p.as_str()]].push(c);
        }
    }
    let mut ready: BTreeSet<usize> = (0..nodes.len()).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(&next) = ready.iter().next() {
        ready.remove(&next);
        order.push(next);
        for &c in &children[next] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.insert(c);
            }
        }
    }
    if order.len() != nodes.len() {
        let stuck: Vec<&str> = (0..nodes.len())
            .filter(|i| !order.contains(i))
            .map(|i| nodes[i].as_str())
            .collect();
        return Err(Error::Graph(format!("cycle through {stuck:?}")));
    }
    Ok(order)
}

/// A structural mechanism `f_j` mapping parent values to the noiseless part
/// of a node. Noise is additive.
pub trait Mechanism: Send + Sync {
    fn evaluate(&self, parents: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    NormalEquations,
    PseudoInverse,
    Given,
}

/// Linear equation `child = intercept + sum(coefficients * parents) + u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralEquation {
    pub child: String,
    pub parents: Vec<String>,
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    /// Standard deviation of the fitted residuals (0 when not fitted).
    pub residual_sd: f64,
    pub method: FitMethod,
}

impl StructuralEquation {
    pub fn new(child: &str, parents: &[&str], coefficients: Vec<f64>, intercept: f64) -> Result<Self> {
        if parents.len() != coefficients.len() {
            return Err(Error::Schema(format!(
                "equation for `{child}` has {} coefficients for {} parents",
                coefficients.len(),
                parents.len()
            )));
        }
        Ok(Self {
            child: child.to_string(),
            parents: parents.iter().map(|p| p.to_string()).collect(),
            coefficients,
            intercept,
            residual_sd: 0.0,
            method: FitMethod::Given,
        })
    }
}

impl Mechanism for StructuralEquation {
    fn evaluate(&self, parents: &[f64]) -> f64 {
        self.intercept + self.coefficients.iter().zip(parents).map(|(c, p)| c * p).sum::<f64>()
    }
}

/// Exogenous values `u`, one per graph node in node order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exogenous(pub Vec<f64>);

#[derive(Debug, Clone, Serialize)]
pub struct CausalModel<M: Mechanism = StructuralEquation> {
    graph: CausalGraph,
    /// Dataset column of each graph node.
    columns: Vec<usize>,
    /// Dataset columns of each node's parents, in parent order.
    parent_columns: Vec<Vec<usize>>,
    equations: Vec<Option<M>>,
    width: usize,
}

impl<M: Mechanism> CausalModel<M> {
    /// Assembles a model from known mechanisms. `column_names` is the instance
    /// layout; `equations` must cover exactly the non-root nodes.
    pub fn from_mechanisms(
        graph: CausalGraph,
        column_names: &[&str],
        mut equations: BTreeMap<String, M>,
    ) -> Result<Self> {
        let columns = graph
            .nodes()
            .iter()
            .map(|n| {
                column_names
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| Error::MissingColumn(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let parent_columns = graph
            .nodes()
            .iter()
            .map(|n| {
                graph
                    .parents_of(n)
                    .iter()
                    .map(|p| columns[graph.index_of(p).expect("validated parent")])
                    .collect()
            })
            .collect();
        let mut eqs = Vec::with_capacity(graph.nodes().len());
        for n in graph.nodes() {
            let eq = equations.remove(n);
            match (graph.is_root(n), eq.is_some()) {
                (true, true) => return Err(Error::Schema(format!("root node `{n}` cannot carry an equation"))),
                (false, false) => return Err(Error::Schema(format!("node `{n}` has parents but no equation"))),
                _ => eqs.push(eq),
            }
        }
        if let Some(extra) = equations.keys().next() {
            return Err(Error::Schema(format!("equation for unknown node `{extra}`")));
        }
        Ok(Self {
            graph,
            columns,
            parent_columns,
            equations: eqs,
            width: column_names.len(),
        })
    }

    pub fn graph(&self) -> &CausalGraph {
        &self.graph
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Dataset column of graph node `node`.
    pub fn column_of(&self, node: usize) -> usize {
        self.columns[node]
    }

    pub fn node_of_column(&self, column: usize) -> Option<usize> {
        self.columns.iter().position(|&c| c == column)
    }

    pub fn mechanism(&self, node: usize) -> Option<&M> {
        self.equations[node].as_ref()
    }

    fn check_width(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.width {
            return Err(Error::Schema(format!(
                "instance has {} features, model expects {}",
                x.len(),
                self.width
            )));
        }
        Ok(())
    }

    fn check_action(&self, action: &Action) -> Result<()> {
        for (&col, &delta) in action.deltas() {
            if self.node_of_column(col).is_none() {
                return Err(Error::InvalidAction(format!("column {col} is not a graph node")));
            }
            if !delta.is_finite() {
                return Err(Error::InvalidAction(format!("delta on column {col} is not finite")));
            }
        }
        Ok(())
    }

    fn parent_values(&self, node: usize, x: &[f64]) -> Vec<f64> {
        self.parent_columns[node].iter().map(|&c| x[c]).collect()
    }

    /// `u_j = x_j - f_j(pa_j(x))`, or `x_j` for roots.
    pub fn abduct(&self, x: &[f64]) -> Result<Exogenous> {
        self.check_width(x)?;
        let u = (0..self.columns.len())
            .map(|node| {
                let value = x[self.columns[node]];
                match &self.equations[node] {
                    Some(eq) => value - eq.evaluate(&self.parent_values(node, x)),
                    None => value,
                }
            })
            .collect();
        Ok(Exogenous(u))
    }

    /// Prediction step: propagates exogenous values through the equations,
    /// with `fixed` nodes (by column) set to the given values and severed
    /// from their parents. Non-graph columns are copied from `template`.
    pub fn propagate(&self, u: &Exogenous, fixed: &BTreeMap<usize, f64>, template: &[f64]) -> Result<Vec<f64>> {
        self.check_width(template)?;
        if u.0.len() != self.columns.len() {
            return Err(Error::Schema("exogenous vector has wrong length".into()));
        }
        let mut out = template.to_vec();
        for &node in self.graph.topological_order() {
            let col = self.columns[node];
            out[col] = match (fixed.get(&col), &self.equations[node]) {
                (Some(&v), _) => v,
                (None, Some(eq)) => eq.evaluate(&self.parent_values(node, &out)) + u.0[node],
                (None, None) => u.0[node],
            };
        }
        Ok(out)
    }

    /// Rebuilds an instance from its exogenous values under an action.
    pub fn reconstruct(&self, u: &Exogenous, action: &Action, template: &[f64]) -> Result<Vec<f64>> {
        self.check_action(action)?;
        let factual = self.propagate(u, &BTreeMap::new(), template)?;
        let fixed = action.deltas().iter().map(|(&c, &d)| (c, factual[c] + d)).collect();
        self.propagate(u, &fixed, template)
    }

    /// Structural counterfactual in closed form.
    pub fn counterfactual(&self, x: &[f64], action: &Action) -> Result<Vec<f64>> {
        self.check_width(x)?;
        self.check_action(action)?;
        let mut out = x.to_vec();
        for &node in self.graph.topological_order() {
            let col = self.columns[node];
            if let Some(delta) = action.delta(col) {
                out[col] = x[col] + delta;
            } else if let Some(eq) = &self.equations[node] {
                let cf = eq.evaluate(&self.parent_values(node, &out));
                let f = eq.evaluate(&self.parent_values(node, x));
                out[col] = x[col] + (cf - f);
            }
        }
        Ok(out)
    }

    /// The same counterfactual computed by explicit abduction, action and
    /// prediction.
    pub fn counterfactual_via_abduction(&self, x: &[f64], action: &Action) -> Result<Vec<f64>> {
        let u = self.abduct(x)?;
        self.check_action(action)?;
        let fixed = action.deltas().iter().map(|(&c, &d)| (c, x[c] + d)).collect();
        self.propagate(&u, &fixed, x)
    }
}

impl CausalModel<StructuralEquation> {
    pub fn equations(&self) -> impl Iterator<Item = &StructuralEquation> {
        self.equations.iter().flatten()
    }

    pub fn equation(&self, child: &str) -> Option<&StructuralEquation> {
        self.equations().find(|e| e.child == child)
    }
}

/// Fits one OLS regression (with intercept) per non-root node against its
/// parents; residuals are the exogenous terms.
pub fn fit_causal_model(dataset: &Dataset, graph: &CausalGraph) -> Result<CausalModel> {
    let names = dataset.column_names();
    let sensitive = dataset.sensitive_name();
    for node in graph.nodes() {
        let col = dataset.column_index(node)?;
        if dataset.columns()[col].kind == FeatureKind::Categorical && node != sensitive {
            return Err(Error::Schema(format!(
                "categorical node `{node}` cannot take part in linear structural equations"
            )));
        }
    }
    let mut equations = BTreeMap::new();
    for node in graph.nodes() {
        let parents = graph.parents_of(node);
        if parents.is_empty() {
            continue;
        }
        let parent_cols: Vec<usize> = parents.iter().map(|p| dataset.column_index(p)).collect::<Result<_>>()?;
        let target = dataset.column(dataset.column_index(node)?);
        let design: Vec<Vec<f64>> = dataset
            .rows()
            .iter()
            .map(|r| parent_cols.iter().map(|&c| r[c]).collect())
            .collect();
        let fit = ols(&design, &target).map_err(|reason| Error::SingularDesign {
            node: node.clone(),
            reason,
        })?;
        let parent_refs: Vec<&str> = parents.iter().map(String::as_str).collect();
        let mut eq = StructuralEquation::new(node, &parent_refs, fit.coefficients, fit.intercept)?;
        eq.residual_sd = fit.residual_sd;
        eq.method = fit.method;
        equations.insert(node.clone(), eq);
    }
    CausalModel::from_mechanisms(graph.clone(), &names, equations)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    pub residual_sd: f64,
    pub method: FitMethod,
}

/// Least squares with intercept via the normal equations, falling back to
/// the pseudo-inverse of the design when the Gram matrix condition number
/// exceeds [`CONDITION_LIMIT`].
pub fn ols(design: &[Vec<f64>], target: &[f64]) -> std::result::Result<OlsFit, String> {
    let n = design.len();
    let p = design.first().map_or(0, Vec::len);
    if n < p + 2 {
        return Err(format!(
            "{n} rows cannot determine {} parameters with residual freedom",
            p + 1
        ));
    }
    let x = DMatrix::from_fn(n, p + 1, |i, j| if j == 0 { 1.0 } else { design[i][j - 1] });
    let y = DVector::from_column_slice(target);
    let gram = x.transpose() * &x;
    let rhs = x.transpose() * &y;

    let singular = gram.singular_values();
    let (smax, smin) = (singular.max(), singular.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };

    let (beta, method) = if condition <= CONDITION_LIMIT {
        let solved = gram
            .clone()
            .cholesky()
            .map(|c| c.solve(&rhs))
            .or_else(|| gram.clone().lu().solve(&rhs));
        match solved {
            Some(b) => (b, FitMethod::NormalEquations),
            None => (pinv_solve(&x, &y)?, FitMethod::PseudoInverse),
        }
    } else {
        (pinv_solve(&x, &y)?, FitMethod::PseudoInverse)
    };
    if beta.iter().any(|b| !b.is_finite()) {
        return Err("solution is not finite".into());
    }
    let residuals = &y - &x * &beta;
    let dof = (n - p - 1).max(1) as f64;
    let residual_sd = (residuals.norm_squared() / dof).sqrt();
    Ok(OlsFit {
        intercept: beta[0],
        coefficients: beta.iter().skip(1).copied().collect(),
        residual_sd,
        method,
    })
}

fn pinv_solve(x: &DMatrix<f64>, y: &DVector<f64>) -> std::result::Result<DVector<f64>, String> {
    let svd = x.clone().svd(true, true);
    let tol = f64::EPSILON * x.nrows().max(x.ncols()) as f64 * svd.singular_values.max();
    svd.solve(y, tol).map_err(|e| format!("pseudo-inverse failed: {e}"))
}
