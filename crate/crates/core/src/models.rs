//! Logistic-regression decision model `h`.

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::stats::{self, sigmoid};

pub const MIN_ROWS_PER_CLASS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Ridge penalty on the weights (intercept unpenalized).
    pub l2: f64,
    pub max_iterations: usize,
    /// Stop once the gradient max-norm drops below this.
    pub tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            l2: 1e-6,
            max_iterations: 10_000,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub iterations: usize,
    pub gradient_norm: f64,
    pub converged: bool,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classifier {
    pub feature_names: Vec<String>,
    /// Dataset column of each input feature.
    pub features: Vec<usize>,
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
    /// Weights on standardized features.
    pub weights: Vec<f64>,
    pub intercept: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub favorable: bool,
    pub score: f64,
}

impl Classifier {
    pub fn from_parts(
        feature_names: Vec<String>,
        features: Vec<usize>,
        means: Vec<f64>,
        sds: Vec<f64>,
        weights: Vec<f64>,
        intercept: f64,
    ) -> Result<Self> {
        let k = features.len();
        if feature_names.len() != k || means.len() != k || sds.len() != k || weights.len() != k {
            return Err(Error::Schema("classifier parts have mismatched lengths".into()));
        }
        if sds.iter().any(|&s| s.is_nan() || s <= 0.0) {
            return Err(Error::Schema("standardization sd must be positive".into()));
        }
        Ok(Self {
            feature_names,
            features,
            means,
            sds,
            weights,
            intercept,
        })
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        match self.features.iter().max() {
            Some(&max) if max >= x.len() => Err(Error::Schema(format!(
                "instance has {} features but the classifier reads column {max}",
                x.len()
            ))),
            _ => Ok(()),
        }
    }

    /// `w . standardize(x) + b`.
    pub fn logit(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.logit_unchecked(x))
    }

    fn logit_unchecked(&self, x: &[f64]) -> f64 {
        self.intercept
            + self
                .features
                .iter()
                .enumerate()
                .map(|(k, &c)| self.weights[k] * (x[c] - self.means[k]) / self.sds[k])
                .sum::<f64>()
    }

    pub fn score(&self, x: &[f64]) -> Result<f64> {
        Ok(sigmoid(self.logit(x)?))
    }

    pub fn predict(&self, x: &[f64]) -> Result<Prediction> {
        let score = self.score(x)?;
        Ok(Prediction {
            favorable: score >= 0.5,
            score,
        })
    }

    /// The logit as an affine function of the raw instance: returns a
    /// coefficient per column of a `width`-wide instance and an offset.
    pub fn raw_linear_form(&self, width: usize) -> (Vec<f64>, f64) {
        let mut coef = vec![0.0; width];
        let mut offset = self.intercept;
        for (k, &c) in self.features.iter().enumerate() {
            coef[c] += self.weights[k] / self.sds[k];
            offset -= self.weights[k] * self.means[k] / self.sds[k];
        }
        (coef, offset)
    }
}

/// Penalized mean negative log-likelihood and its gradient `(d/dw, d/db)`
/// over already-standardized rows.
pub fn penalized_nll(
    rows: &[Vec<f64>],
    labels: &[u8],
    weights: &[f64],
    intercept: f64,
    l2: f64,
) -> (f64, Vec<f64>, f64) {
    let n = rows.len() as f64;
    let mut value = 0.0;
    let mut gw = vec![0.0; weights.len()];
    let mut gb = 0.0;
    for (row, &y) in rows.iter().zip(labels) {
        let z = intercept + row.iter().zip(weights).map(|(a, w)| a * w).sum::<f64>();
        value += softplus(z) - f64::from(y) * z;
        let r = sigmoid(z) - f64::from(y);
        for (g, a) in gw.iter_mut().zip(row) {
            *g += r * a;
        }
        gb += r;
    }
    value /= n;
    value += 0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>();
    for (g, w) in gw.iter_mut().zip(weights) {
        *g = *g / n + l2 * w;
    }
    (value, gw, gb / n)
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// Fits `h` by batch gradient descent with backtracking line search on
/// standardized `features`, predicting the dataset outcome (1 = favorable).
pub fn fit_classifier(dataset: &Dataset, features: &[&str], options: &FitOptions) -> Result<(Classifier, FitReport)> {
    if features.is_empty() {
        return Err(Error::Schema("classifier needs at least one feature".into()));
    }
    let cols: Vec<usize> = features
        .iter()
        .map(|f| dataset.column_index(f))
        .collect::<Result<_>>()?;
    let labels = dataset.outcome();
    let positives = labels.iter().filter(|&&y| y == 1).count();
    let negatives = labels.len() - positives;
    if positives < MIN_ROWS_PER_CLASS || negatives < MIN_ROWS_PER_CLASS {
        return Err(Error::DegenerateLabels(format!(
            "need at least {MIN_ROWS_PER_CLASS} rows per class, found {negatives} unfavorable and {positives} favorable"
        )));
    }

    let mut means = Vec::with_capacity(cols.len());
    let mut sds = Vec::with_capacity(cols.len());
    for &c in &cols {
        let column = dataset.column(c);
        means.push(stats::mean(&column));
        let sd = stats::sample_sd(&column);
        sds.push(if sd > 0.0 { sd } else { 1.0 });
    }
    let rows: Vec<Vec<f64>> = dataset
        .rows()
        .iter()
        .map(|r| {
            cols.iter()
                .enumerate()
                .map(|(k, &c)| (r[c] - means[k]) / sds[k])
                .collect()
        })
        .collect();

    let (weights, intercept, report) = gradient_descent(&rows, labels, options);
    if !report.converged {
        log::warn!(
            "logistic regression stopped after {} iterations with gradient max-norm {:.3e}",
            report.iterations,
            report.gradient_norm
        );
    }
    let classifier = Classifier {
        feature_names: features.iter().map(|s| s.to_string()).collect(),
        features: cols,
        means,
        sds,
        weights,
        intercept,
    };
    Ok((classifier, report))
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;

fn gradient_descent(rows: &[Vec<f64>], labels: &[u8], options: &FitOptions) -> (Vec<f64>, f64, FitReport) {
    let dim = rows[0].len();
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut step = 1.0;
    let (mut value, mut gw, mut gb) = penalized_nll(rows, labels, &w, b, options.l2);
    let mut iterations = 0;
    loop {
        let gnorm = gw.iter().fold(gb.abs(), |m, g| m.max(g.abs()));
        if gnorm < options.tolerance || iterations >= options.max_iterations {
            let report = FitReport {
                iterations,
                gradient_norm: gnorm,
                converged: gnorm < options.tolerance,
                objective: value,
            };
            return (w, b, report);
        }
        let sq: f64 = gw.iter().map(|g| g * g).sum::<f64>() + gb * gb;
        let mut accepted = None;
        while step >= MIN_STEP {
            let w_new: Vec<f64> = w.iter().zip(&gw).map(|(wi, gi)| wi - step * gi).collect();
            let b_new = b - step * gb;
            let next = penalized_nll(rows, labels, &w_new, b_new, options.l2);
            if next.0 <= value - ARMIJO * step * sq {
                accepted = Some((w_new, b_new, next));
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
        match accepted {
            Some((w_new, b_new, (v, g, g0))) => {
                w = w_new;
                b = b_new;
                value = v;
                gw = g;
                gb = g0;
                step *= 2.0;
            }
            None => {
                let report = FitReport {
                    iterations,
                    gradient_norm: gnorm,
                    converged: false,
                    objective: value,
                };
                return (w, b, report);
            }
        }
    }
}
