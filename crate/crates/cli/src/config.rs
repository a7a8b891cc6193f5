//! TOML experiment configuration: datasets, algorithms and output options.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use rsar_core::{Algorithm, ColumnBinning, DiscretizationSpec, MissingPolicy};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetConfig>,
    pub algorithms: Vec<AlgorithmConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ExperimentConfig {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: Self = toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Rejects structurally invalid configs before any dataset is touched.
    pub fn validate(&self) -> Result<()> {
        if self.datasets.is_empty() {
            bail!("config needs at least one [[datasets]] entry");
        }
        if self.algorithms.is_empty() {
            bail!("config needs at least one [[algorithms]] entry");
        }
        for dataset in &self.datasets {
            dataset.validate()?;
        }
        for algorithm in &self.algorithms {
            algorithm.validate()?;
        }
        self.output.format()?;
        Ok(())
    }

    /// Replaces every base seed, for the `--seed` flag.
    pub fn override_seed(&mut self, seed: u64) {
        for algorithm in &mut self.algorithms {
            algorithm.base_seed = Some(seed);
        }
    }
}

fn default_delimiter() -> String {
    ",".into()
}

fn default_missing_marker() -> String {
    "?".into()
}

fn default_missing_policy() -> String {
    "drop_rows".into()
}

fn default_discretization() -> String {
    "equal_frequency:3".into()
}

/// One dataset entry. Column indices (`decision_column`, `ignore_columns`
/// and `overrides` keys) all refer to the file's original column order.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetConfig {
    pub name: String,
    pub path: PathBuf,
    #[serde(default = "default_delimiter")]
    pub delimiter: String,
    #[serde(default)]
    pub has_header: bool,
    #[serde(default = "default_missing_marker")]
    pub missing_marker: String,
    #[serde(default = "default_missing_policy")]
    pub missing_policy: String,
    pub decision_column: Option<usize>,
    #[serde(default)]
    pub ignore_columns: Vec<usize>,
    #[serde(default = "default_discretization")]
    pub discretization: String,
    /// Per-column binning, keyed by column index as a string.
    #[serde(default)]
    pub overrides: BTreeMap<String, String>,
}

impl DatasetConfig {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            bail!("dataset name must not be empty");
        }
        self.delimiter_byte()?;
        self.missing_policy()?;
        self.discretization()?;
        Ok(())
    }

    pub fn delimiter_byte(&self) -> Result<u8> {
        let bytes = self.delimiter.as_bytes();
        if bytes.len() != 1 {
            bail!(
                "dataset {:?}: delimiter must be a single byte, got {:?}",
                self.name,
                self.delimiter
            );
        }
        Ok(bytes[0])
    }

    pub fn missing_policy(&self) -> Result<MissingPolicy> {
        MissingPolicy::from_str(&self.missing_policy)
            .map_err(|e| anyhow::anyhow!("dataset {:?}: {e}", self.name))
    }

    /// The discretization spec with override keys still in original file
    /// column order; [`load_dataset`](crate::experiment::load_dataset)
    /// remaps them after ignored columns are removed.
    pub fn discretization(&self) -> Result<DiscretizationSpec> {
        let default = ColumnBinning::from_str(&self.discretization)
            .map_err(|e| anyhow::anyhow!("dataset {:?}: {e}", self.name))?;
        let mut spec = DiscretizationSpec::uniform(default);
        for (key, value) in &self.overrides {
            let column: usize = key.parse().with_context(|| {
                format!("dataset {:?}: override key {key:?} is not a column index", self.name)
            })?;
            let binning = ColumnBinning::from_str(value)
                .map_err(|e| anyhow::anyhow!("dataset {:?}: {e}", self.name))?;
            spec.overrides.insert(column, binning);
        }
        spec.validate()
            .map_err(|e| anyhow::anyhow!("dataset {:?}: {e}", self.name))?;
        Ok(spec)
    }
}

/// One algorithm entry. Unset knobs fall back to the algorithm defaults;
/// knobs for other algorithms are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub algorithm: String,
    pub runs: Option<usize>,
    pub base_seed: Option<u64>,
    pub population_size: Option<usize>,
    pub crossover_prob: Option<f64>,
    pub mutation_prob: Option<f64>,
    pub generations: Option<usize>,
    pub num_ants: Option<usize>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub evaporation_rho: Option<f64>,
    pub iterations: Option<usize>,
    pub swarm_size: Option<usize>,
    pub phi1: Option<f64>,
    pub phi2: Option<f64>,
    pub w_start: Option<f64>,
    pub w_end: Option<f64>,
    pub v_max: Option<f64>,
    pub colony_size: Option<usize>,
    pub max_cycles: Option<usize>,
    pub abandonment_limit: Option<usize>,
    pub max_attrs: Option<usize>,
}

impl AlgorithmConfig {
    pub fn named(algorithm: &str) -> Self {
        Self {
            algorithm: algorithm.into(),
            ..Self::default()
        }
    }

    pub fn parsed_algorithm(&self) -> Result<Algorithm> {
        Algorithm::from_str(&self.algorithm).map_err(|e| anyhow::anyhow!(e))
    }

    pub fn effective_runs(&self) -> Result<usize> {
        let algorithm = self.parsed_algorithm()?;
        let runs = self
            .runs
            .unwrap_or(if algorithm.is_stochastic() { 3 } else { 1 });
        if runs == 0 {
            bail!("algorithm {:?}: runs must be at least 1", self.algorithm);
        }
        Ok(runs)
    }

    pub fn effective_base_seed(&self) -> u64 {
        self.base_seed.unwrap_or(1)
    }

    pub fn validate(&self) -> Result<()> {
        let algorithm = self.parsed_algorithm()?;
        self.effective_runs()?;
        let allowed: &[&str] = match algorithm {
            Algorithm::QuickReduct | Algorithm::Ebr => &[],
            Algorithm::Oracle => &["max_attrs"],
            Algorithm::GenRsar => &[
                "population_size",
                "crossover_prob",
                "mutation_prob",
                "generations",
            ],
            Algorithm::AntRsar => &["num_ants", "alpha", "beta", "evaporation_rho", "iterations"],
            Algorithm::PsoRsar => &[
                "swarm_size",
                "phi1",
                "phi2",
                "w_start",
                "w_end",
                "iterations",
                "v_max",
            ],
            Algorithm::BeeRsar => &["colony_size", "max_cycles", "abandonment_limit"],
        };
        for (name, set) in self.knobs() {
            if set && !allowed.contains(&name) {
                bail!(
                    "algorithm {:?} does not accept the {name:?} option",
                    self.algorithm
                );
            }
        }
        Ok(())
    }

    fn knobs(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("population_size", self.population_size.is_some()),
            ("crossover_prob", self.crossover_prob.is_some()),
            ("mutation_prob", self.mutation_prob.is_some()),
            ("generations", self.generations.is_some()),
            ("num_ants", self.num_ants.is_some()),
            ("alpha", self.alpha.is_some()),
            ("beta", self.beta.is_some()),
            ("evaporation_rho", self.evaporation_rho.is_some()),
            ("iterations", self.iterations.is_some()),
            ("swarm_size", self.swarm_size.is_some()),
            ("phi1", self.phi1.is_some()),
            ("phi2", self.phi2.is_some()),
            ("w_start", self.w_start.is_some()),
            ("w_end", self.w_end.is_some()),
            ("v_max", self.v_max.is_some()),
            ("colony_size", self.colony_size.is_some()),
            ("max_cycles", self.max_cycles.is_some()),
            ("abandonment_limit", self.abandonment_limit.is_some()),
            ("max_attrs", self.max_attrs.is_some()),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Machine,
}

impl FromStr for ReportFormat {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Self::Table),
            "machine" => Ok(Self::Machine),
            other => bail!("unknown report format {other:?} (expected table or machine)"),
        }
    }
}

fn default_format() -> String {
    "table".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub report_path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            report_path: None,
            format: default_format(),
        }
    }
}

impl OutputConfig {
    pub fn format(&self) -> Result<ReportFormat> {
        self.format.parse()
    }
}
