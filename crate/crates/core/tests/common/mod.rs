//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use effort_audit::data::FeatureKind;
use effort_audit::models::Classifier;
use effort_audit::recourse::{
    brute_force_oracle, solve_mint, ConstraintSet, CostSpec, Direction, FeatureConstraint, RecourseOutcome,
};
use effort_audit::scm::{CausalGraph, CausalModel, StructuralEquation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gauss-Jordan elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

/// Least squares with intercept via `(X'X) beta = X'y`. Returns
/// `[intercept, coefficients...]`.
pub fn normal_equations(design: &[Vec<f64>], target: &[f64]) -> Vec<f64> {
    let p = design[0].len() + 1;
    let mut xtx = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (row, &y) in design.iter().zip(target) {
        let z: Vec<f64> = std::iter::once(1.0).chain(row.iter().copied()).collect();
        for i in 0..p {
            xty[i] += z[i] * y;
            for j in 0..p {
                xtx[i][j] += z[i] * z[j];
            }
        }
    }
    solve_dense(xtx, xty)
}

/// Plain fixed-step gradient descent on the unpenalized mean logistic loss.
pub fn gd_logistic(rows: &[Vec<f64>], labels: &[u8], iterations: usize, rate: f64) -> (Vec<f64>, f64) {
    let n = rows.len() as f64;
    let mut w = vec![0.0; rows[0].len()];
    let mut b = 0.0;
    for _ in 0..iterations {
        let mut gw = vec![0.0; w.len()];
        let mut gb = 0.0;
        for (r, &y) in rows.iter().zip(labels) {
            let z = b + r.iter().zip(&w).map(|(a, c)| a * c).sum::<f64>();
            let e = 1.0 / (1.0 + (-z).exp()) - f64::from(y);
            for (g, a) in gw.iter_mut().zip(r) {
                *g += e * a / n;
            }
            gb += e / n;
        }
        for (wi, g) in w.iter_mut().zip(&gw) {
            *wi -= rate * g;
        }
        b -= rate * gb;
    }
    (w, b)
}

/// Sum (or root of squared sum) of range-normalized absolute differences and
/// categorical mismatches.
pub fn distance_oracle(x: &[f64], y: &[f64], kinds: &[FeatureKind], ranges: &[f64], l2: bool) -> f64 {
    let mut total = 0.0;
    for k in 0..x.len() {
        let d = match kinds[k] {
            FeatureKind::Categorical => f64::from(u8::from(x[k] != y[k])),
            _ if ranges[k] <= 0.0 => 0.0,
            _ => (x[k] - y[k]).abs() / ranges[k],
        };
        total += if l2 { d * d } else { d };
    }
    if l2 {
        total.sqrt()
    } else {
        total
    }
}

pub struct Problem {
    pub model: CausalModel,
    pub h: Classifier,
    pub x: Vec<f64>,
    pub constraints: ConstraintSet,
    pub spec: CostSpec,
    pub actionable: usize,
}

/// A random linear recourse problem: column 0 is an immutable sensitive
/// root, 1 to 3 actionable columns with finite delta boxes, and one mutable
/// column downstream of everything. The instance is unfavorable.
pub fn random_problem(rng: &mut ChaCha8Rng) -> Problem {
    let k = rng.random_range(1..=3usize);
    let width = k + 2;
    let names: Vec<String> = (0..width).map(|j| format!("c{j}")).collect();
    let mut parents: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut equations = BTreeMap::new();
    for j in 1..width {
        let ps: Vec<usize> = (0..j).filter(|_| rng.random_bool(0.5)).collect();
        if ps.is_empty() {
            continue;
        }
        let coefs: Vec<f64> = ps.iter().map(|_| rng.random_range(-2.0..2.0)).collect();
        let pnames: Vec<&str> = ps.iter().map(|&p| names[p].as_str()).collect();
        let eq = StructuralEquation::new(&names[j], &pnames, coefs, rng.random_range(-1.0..1.0)).unwrap();
        parents.insert(names[j].clone(), pnames.iter().map(|s| s.to_string()).collect());
        equations.insert(names[j].clone(), eq);
    }
    let graph = CausalGraph::new(names.clone(), parents).unwrap();
    let cols: Vec<&str> = names.iter().map(String::as_str).collect();
    let model = CausalModel::from_mechanisms(graph, &cols, equations).unwrap();

    let x: Vec<f64> = (0..width)
        .map(|j| {
            if j == 0 {
                f64::from(u8::from(rng.random_bool(0.5)))
            } else {
                rng.random_range(-2.0..2.0)
            }
        })
        .collect();
    let features: Vec<usize> = (1..width).collect();
    let weights: Vec<f64> = features.iter().map(|_| rng.random_range(-2.0..2.0)).collect();
    let mut h = Classifier::from_parts(
        features.iter().map(|&j| names[j].clone()).collect(),
        features.clone(),
        vec![0.0; features.len()],
        vec![1.0; features.len()],
        weights,
        0.0,
    )
    .unwrap();
    // place x at a random depth on the unfavorable side
    h.intercept = -h.logit(&x).unwrap() - rng.random_range(0.05..2.5);

    let mut constraints = ConstraintSet::new(width, 0).unwrap();
    for j in 1..=k {
        let direction = match rng.random_range(0..4) {
            0 => Direction::IncreaseOnly,
            1 => Direction::DecreaseOnly,
            _ => Direction::Free,
        };
        let lo = -rng.random_range(0.2..3.0);
        let hi = rng.random_range(0.2..3.0);
        constraints
            .set(j, FeatureConstraint::actionable(direction).with_box(lo, hi))
            .unwrap();
    }
    constraints.set(width - 1, FeatureConstraint::mutable()).unwrap();
    if rng.random_bool(0.3) {
        let m = width - 1;
        constraints
            .set_plausibility(m, x[m] - rng.random_range(1.0..6.0), x[m] + rng.random_range(1.0..6.0))
            .unwrap();
    }
    let ranges: Vec<f64> = (0..width).map(|_| rng.random_range(0.5..5.0)).collect();
    Problem {
        model,
        h,
        x,
        constraints,
        spec: CostSpec::uniform(ranges),
        actionable: k,
    }
}

#[derive(Debug, Default)]
pub struct OracleComparison {
    pub problems: usize,
    pub both_found: usize,
    pub both_absent: usize,
    pub absence_disagreements: usize,
    /// Problems where the solver cost exceeded oracle + 1e-3 + one grid step.
    pub cost_violations: usize,
    /// Largest `solver - oracle` seen.
    pub worst_excess: f64,
}

/// Cost of one grid step along the most expensive actionable axis.
pub fn grid_step_cost(p: &Problem, steps: usize) -> f64 {
    p.constraints
        .actionable()
        .iter()
        .map(|&j| {
            let (lo, hi) = p.constraints.feature(j).delta_bounds();
            p.spec.unit_cost(j) * (hi - lo) / steps as f64
        })
        .fold(0.0, f64::max)
}

pub fn compare_solver_and_oracle(count: usize, seed: u64, steps: usize) -> OracleComparison {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = OracleComparison {
        worst_excess: f64::NEG_INFINITY,
        ..Default::default()
    };
    for _ in 0..count {
        let p = random_problem(&mut rng);
        out.problems += 1;
        let solved = solve_mint(&p.model, &p.h, &p.x, &p.constraints, &p.spec).unwrap();
        let oracle = brute_force_oracle(&p.model, &p.h, &p.x, &p.constraints, &p.spec, steps).unwrap();
        match (&solved, oracle) {
            (RecourseOutcome::Found(r), Some((_, oc))) => {
                out.both_found += 1;
                let excess = r.cost - oc;
                out.worst_excess = out.worst_excess.max(excess);
                if excess > 1e-3 + grid_step_cost(&p, steps) {
                    out.cost_violations += 1;
                }
            }
            (RecourseOutcome::Absent(_), None) => out.both_absent += 1,
            _ => out.absence_disagreements += 1,
        }
    }
    out
}
