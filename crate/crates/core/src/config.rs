//! TOML run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::audit::{
    AuditConfig, CenterFilter, ConstraintDecl, Plausibility, DEFAULT_EPSILON, DEFAULT_QUANTILES, DEFAULT_TAU,
};
use crate::data::{self, GermanFormat, GermanOptions, SexCodeTable};
use crate::error::{Error, Result};
use crate::models::FitOptions;
use crate::recourse::Actionability;
use crate::scm::CausalGraph;
use crate::similarity::Norm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Synthetic,
    German,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSection {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_alphas")]
    pub alpha: Vec<f64>,
}

fn default_n() -> usize {
    1000
}

fn default_alphas() -> Vec<f64> {
    vec![0.0, 1.0, 2.0, 4.0, 6.0]
}

impl Default for SyntheticSection {
    fn default() -> Self {
        Self {
            n: default_n(),
            alpha: default_alphas(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermanSection {
    pub path: PathBuf,
    #[serde(default)]
    pub format: GermanFormat,
    /// CSV table `code,description,sex` replacing the bundled one.
    #[serde(default)]
    pub sex_codes: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub parents: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierSection {
    #[serde(default)]
    pub features: Option<Vec<String>>,
    #[serde(default)]
    pub l2: Option<f64>,
    #[serde(default)]
    pub max_iterations: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_quantiles")]
    pub quantiles: Vec<f64>,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub norm: Norm,
    #[serde(default)]
    pub center_filter: CenterFilter,
    #[serde(default)]
    pub plausibility: Plausibility,
    /// Quantile reported as the individual-level curve value.
    #[serde(default = "default_individual_quantile")]
    pub individual_quantile: f64,
    #[serde(default)]
    pub unfavorable_label: u8,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub synthetic: SyntheticSection,
    #[serde(default)]
    pub german: Option<GermanSection>,
    #[serde(default)]
    pub graph: Option<GraphSection>,
    #[serde(default)]
    pub classifier: ClassifierSection,
    #[serde(default)]
    pub constraints: BTreeMap<String, ConstraintDecl>,
    #[serde(default)]
    pub plausibility_bounds: BTreeMap<String, (f64, f64)>,
    #[serde(default)]
    pub cost_weights: BTreeMap<String, f64>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_quantiles() -> Vec<f64> {
    DEFAULT_QUANTILES.to_vec()
}

fn default_tau() -> f64 {
    DEFAULT_TAU
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

fn default_individual_quantile() -> f64 {
    0.2
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config file; relative data and output paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                Error::MissingInput {
                    path: path.to_path_buf(),
                    hint: "run configuration".into(),
                }
            } else {
                Error::Io(e)
            }
        })?;
        let mut config = Self::from_toml(&text).map_err(|e| e.context(format!("reading {}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        if let Some(dir) = config.output_dir.as_mut() {
            if dir.is_relative() {
                *dir = base.join(&*dir);
            }
        }
        if let Some(g) = config.german.as_mut() {
            if g.path.is_relative() {
                g.path = base.join(&g.path);
            }
            if let Some(codes) = g.sex_codes.as_mut() {
                if codes.is_relative() {
                    *codes = base.join(&*codes);
                }
            }
        }
        Ok(config)
    }

    /// Synthetic defaults: the two non-sensitive features are freely
    /// actionable and `h` reads them.
    pub fn synthetic_default() -> Self {
        Self::from_toml("experiment = \"synthetic\"").expect("default synthetic config is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.experiment == Experiment::Synthetic {
            if self.synthetic.alpha.is_empty() {
                return Err(Error::Config("synthetic alpha list is empty".into()));
            }
            if self.synthetic.alpha.iter().any(|a| !a.is_finite()) {
                return Err(Error::Config("alpha values must be finite".into()));
            }
        }
        if self.experiment == Experiment::German && self.german.is_none() {
            return Err(Error::Config(
                "german experiment needs a [german] section with a data path".into(),
            ));
        }
        if !self.quantiles.contains(&self.individual_quantile) {
            return Err(Error::Config(format!(
                "individual_quantile {} is not on the quantile grid",
                self.individual_quantile
            )));
        }
        for (name, decl) in &self.constraints {
            if let (Some(lo), Some(hi)) = (decl.delta_min, decl.delta_max) {
                if lo > hi {
                    return Err(Error::Config(format!(
                        "constraint on `{name}` has delta_min > delta_max"
                    )));
                }
            }
        }
        let graph = self.graph_for(self.synthetic.alpha.first().copied().unwrap_or(0.0))?;
        let sensitive = self.sensitive_name();
        if self
            .constraints
            .get(sensitive)
            .is_some_and(|c| c.class == Actionability::Actionable)
        {
            return Err(Error::Config(format!(
                "sensitive attribute `{sensitive}` cannot be actionable"
            )));
        }
        for name in self.constraints.keys().chain(self.plausibility_bounds.keys()) {
            if graph.index_of(name).is_none() {
                return Err(Error::Config(format!("unknown column `{name}` in constraints")));
            }
        }
        self.audit_config().validate()
    }

    pub fn sensitive_name(&self) -> &'static str {
        match self.experiment {
            Experiment::Synthetic => data::SYNTHETIC_SENSITIVE,
            Experiment::German => data::GERMAN_SEX,
        }
    }

    /// The configured graph, or the experiment's default graph for `alpha`.
    pub fn graph_for(&self, alpha: f64) -> Result<CausalGraph> {
        match (&self.graph, self.experiment) {
            (Some(g), _) => CausalGraph::new(g.nodes.clone(), g.parents.clone()),
            (None, Experiment::Synthetic) => Ok(data::synthetic_graph(alpha)),
            (None, Experiment::German) => Ok(data::german_graph()),
        }
    }

    pub fn german_options(&self) -> Result<GermanOptions> {
        let mut options = GermanOptions::default();
        if let Some(g) = &self.german {
            options.format = g.format;
            if let Some(p) = &g.sex_codes {
                let text = std::fs::read_to_string(p).map_err(|_| Error::MissingInput {
                    path: p.clone(),
                    hint: "personal-status code table".into(),
                })?;
                options.sex_codes = SexCodeTable::parse(&text)?;
            }
        }
        Ok(options)
    }

    pub fn audit_config(&self) -> AuditConfig {
        let features = self
            .classifier
            .features
            .clone()
            .unwrap_or_else(|| match self.experiment {
                Experiment::Synthetic => vec![data::SYNTHETIC_PROXY.into(), data::SYNTHETIC_INDEPENDENT.into()],
                Experiment::German => [
                    data::GERMAN_SEX,
                    data::GERMAN_AGE,
                    data::GERMAN_AMOUNT,
                    data::GERMAN_DURATION,
                ]
                .map(String::from)
                .to_vec(),
            });
        let constraints = if self.constraints.is_empty() && self.experiment == Experiment::Synthetic {
            [data::SYNTHETIC_PROXY, data::SYNTHETIC_INDEPENDENT]
                .into_iter()
                .map(|c| {
                    (
                        c.to_string(),
                        ConstraintDecl::new(Actionability::Actionable, Default::default()),
                    )
                })
                .collect()
        } else {
            self.constraints.clone()
        };
        let defaults = FitOptions::default();
        let mut config = AuditConfig::new(features, constraints);
        config.fit = FitOptions {
            l2: self.classifier.l2.unwrap_or(defaults.l2),
            max_iterations: self.classifier.max_iterations.unwrap_or(defaults.max_iterations),
            tolerance: self.classifier.tolerance.unwrap_or(defaults.tolerance),
        };
        config.plausibility = self.plausibility;
        config.plausibility_overrides = self.plausibility_bounds.clone();
        config.cost_weights = self.cost_weights.clone();
        config.quantiles = self.quantiles.clone();
        config.tau = self.tau;
        config.epsilon = self.epsilon;
        config.norm = self.norm;
        config.center_filter = self.center_filter;
        config.unfavorable_label = self.unfavorable_label;
        config
    }
}
