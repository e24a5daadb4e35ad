//! Mixed-type distances and situation-testing neighborhoods.

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, FeatureKind};
use crate::error::{Error, Result};
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    /// Sum of per-feature distances.
    #[default]
    L1,
    /// Square root of the sum of squared per-feature distances.
    L2,
}

/// Normalized Manhattan distance for continuous/ordinal features, overlap
/// (0/1) for categorical ones. A non-positive range contributes 0.
pub fn feature_distance(a: f64, b: f64, kind: FeatureKind, range: f64) -> f64 {
    match kind {
        FeatureKind::Categorical => {
            if a == b {
                0.0
            } else {
                1.0
            }
        }
        FeatureKind::Continuous | FeatureKind::Ordinal => {
            if range > 0.0 {
                (a - b).abs() / range
            } else {
                0.0
            }
        }
    }
}

/// Which columns enter the distance, with their kinds and ranges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub columns: Vec<usize>,
    pub names: Vec<String>,
    pub kinds: Vec<FeatureKind>,
    pub ranges: Vec<f64>,
    pub norm: Norm,
    /// Features whose observed range is zero; they never contribute.
    pub degenerate: Vec<String>,
}

impl FeatureSchema {
    /// Every covariate except the sensitive column, with ranges taken once
    /// over the full dataset.
    pub fn for_dataset(dataset: &Dataset, norm: Norm) -> Self {
        let columns: Vec<usize> = (0..dataset.columns().len())
            .filter(|&j| j != dataset.sensitive_index())
            .collect();
        Self::from_columns(dataset, &columns, norm)
    }

    pub fn from_columns(dataset: &Dataset, columns: &[usize], norm: Norm) -> Self {
        let mut degenerate = Vec::new();
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        let mut ranges = Vec::new();
        for &j in columns {
            let col = &dataset.columns()[j];
            let range = match col.kind {
                FeatureKind::Categorical => 1.0,
                _ => dataset.column_range(j),
            };
            if col.kind != FeatureKind::Categorical && (range.is_nan() || range <= 0.0) {
                log::warn!("feature `{}` has zero range and is ignored by the distance", col.name);
                degenerate.push(col.name.clone());
            }
            names.push(col.name.clone());
            kinds.push(col.kind);
            ranges.push(range);
        }
        Self {
            columns: columns.to_vec(),
            names,
            kinds,
            ranges,
            norm,
            degenerate,
        }
    }
}

pub fn instance_distance(x: &[f64], y: &[f64], schema: &FeatureSchema) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Schema(format!(
            "instances have {} and {} features",
            x.len(),
            y.len()
        )));
    }
    if let Some(&max) = schema.columns.iter().max() {
        if max >= x.len() {
            return Err(Error::Schema(format!(
                "distance reads column {max} beyond instance width"
            )));
        }
    }
    Ok(distance_unchecked(x, y, schema))
}

fn distance_unchecked(x: &[f64], y: &[f64], schema: &FeatureSchema) -> f64 {
    let parts = schema
        .columns
        .iter()
        .enumerate()
        .map(|(k, &c)| feature_distance(x[c], y[c], schema.kinds[k], schema.ranges[k]));
    match schema.norm {
        Norm::L1 => parts.sum(),
        Norm::L2 => parts.map(|d| d * d).sum::<f64>().sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Neighborhood {
    pub center: usize,
    pub quantile: f64,
    pub threshold: f64,
    /// `(row, distance)` of members with the protected value.
    pub protected: Vec<(usize, f64)>,
    /// `(row, distance)` of members with the unprotected value.
    pub unprotected: Vec<(usize, f64)>,
}

impl Neighborhood {
    pub fn len(&self) -> usize {
        self.protected.len() + self.unprotected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn protected_ratio(&self) -> f64 {
        self.protected.len() as f64 / self.len() as f64
    }
}

/// Distances from one center to every row, sorted once so that any number of
/// quantile cuts are cheap.
#[derive(Debug, Clone)]
pub struct DistanceProfile {
    center: usize,
    distances: Vec<f64>,
    sorted: Vec<f64>,
}

impl DistanceProfile {
    pub fn new(dataset: &Dataset, center: usize, schema: &FeatureSchema) -> Self {
        let c = dataset.row(center);
        let distances: Vec<f64> = dataset
            .rows()
            .iter()
            .map(|r| distance_unchecked(c, r, schema))
            .collect();
        let mut sorted = distances.clone();
        sorted.sort_by(f64::total_cmp);
        Self {
            center,
            distances,
            sorted,
        }
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    /// Nearest-rank quantile of the distances (the center included).
    pub fn threshold(&self, q: f64) -> f64 {
        stats::nearest_rank(&self.sorted, q)
    }

    pub fn neighborhood(&self, dataset: &Dataset, q: f64) -> Result<Neighborhood> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::Precondition(format!("quantile {q} outside (0, 1]")));
        }
        let threshold = self.threshold(q);
        let mut protected = Vec::new();
        let mut unprotected = Vec::new();
        for (i, &d) in self.distances.iter().enumerate() {
            if d <= threshold {
                if dataset.is_protected(i) {
                    protected.push((i, d));
                } else {
                    unprotected.push((i, d));
                }
            }
        }
        Ok(Neighborhood {
            center: self.center,
            quantile: q,
            threshold,
            protected,
            unprotected,
        })
    }
}

/// Members within the `q`-quantile of distance from `center`, split by the
/// sensitive attribute.
pub fn build_neighborhood(dataset: &Dataset, center: usize, q: f64, schema: &FeatureSchema) -> Result<Neighborhood> {
    if center >= dataset.len() {
        return Err(Error::Precondition(format!("center {center} out of range")));
    }
    DistanceProfile::new(dataset, center, schema).neighborhood(dataset, q)
}
