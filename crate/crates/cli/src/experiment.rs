//! Experiment execution: dataset loading through the pipeline, seeded
//! repeated runs per (dataset, algorithm) pair, and oracle verification.

use std::time::Duration;

use anyhow::{Context, Result};
use rsar_core::{
    ant_rsar, apply_missing_policy, bee_rsar, dependency, discretize_and_encode, ebr,
    exhaustive_min_reduct, gen_rsar, load_delimited, pso_rsar, quick_reduct, Algorithm, AntConfig,
    AttributeSubset, BeeConfig, DecisionTable, DiscretizationSpec, GaConfig, PsoConfig,
    ReductOutcome, DEFAULT_ORACLE_CAP,
};

use crate::config::{AlgorithmConfig, DatasetConfig, ExperimentConfig};

/// One (dataset, algorithm) cell of the report.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub num_attrs: usize,
    pub num_objects: usize,
    pub runs: usize,
    pub base_seed: u64,
    /// Reduct size per run, in run order.
    pub cardinalities: Vec<usize>,
    /// Smallest subset found across runs.
    pub best_subset: AttributeSubset,
    /// Dependency degree of `best_subset`, recomputed from the table.
    pub gamma_best: f64,
    /// Whether `best_subset` reaches the full-set dependency degree.
    pub feasible: bool,
    pub total_evaluations: u64,
    pub total_elapsed: Duration,
    pub error: Option<String>,
}

impl ReportRow {
    /// Table-style size summary: a single number when all runs agree,
    /// otherwise "min-max".
    pub fn cardinality_display(&self) -> String {
        match (
            self.cardinalities.iter().min(),
            self.cardinalities.iter().max(),
        ) {
            (Some(min), Some(max)) if min == max => min.to_string(),
            (Some(min), Some(max)) => format!("{min}-{max}"),
            _ => "-".into(),
        }
    }

    fn failed(dataset: &DatasetConfig, acfg: &AlgorithmConfig, message: String) -> Result<Self> {
        Ok(Self {
            dataset: dataset.name.clone(),
            algorithm: acfg.parsed_algorithm()?,
            num_attrs: 0,
            num_objects: 0,
            runs: acfg.effective_runs()?,
            base_seed: acfg.effective_base_seed(),
            cardinalities: Vec::new(),
            best_subset: AttributeSubset::empty(),
            gamma_best: 0.0,
            feasible: false,
            total_evaluations: 0,
            total_elapsed: Duration::ZERO,
            error: Some(message),
        })
    }
}

/// A dataset after the full pipeline, with bookkeeping for reports.
#[derive(Debug, Clone)]
pub struct LoadedDataset {
    pub name: String,
    pub table: DecisionTable,
    pub dropped_rows: usize,
}

/// Runs the whole pipeline for one dataset entry. All column indices in
/// the config refer to the original file order; binning overrides are
/// remapped after ignored columns are removed.
pub fn load_dataset(dcfg: &DatasetConfig) -> Result<LoadedDataset> {
    let delimiter = dcfg.delimiter_byte()?;
    let policy = dcfg.missing_policy()?;
    let spec = dcfg.discretization()?;

    let mut raw = load_delimited(&dcfg.path, delimiter, dcfg.has_header, &dcfg.missing_marker)
        .with_context(|| format!("loading {}", dcfg.path.display()))?;
    if let Some(decision) = dcfg.decision_column {
        raw.set_decision_column(decision)
            .with_context(|| format!("dataset {:?}", dcfg.name))?;
    }
    if !dcfg.ignore_columns.is_empty() {
        raw.remove_columns(&dcfg.ignore_columns)
            .with_context(|| format!("dataset {:?}", dcfg.name))?;
    }
    let spec = remap_overrides(&spec, &dcfg.ignore_columns, dcfg)?;
    let (raw, dropped_rows) =
        apply_missing_policy(raw, policy).with_context(|| format!("dataset {:?}", dcfg.name))?;
    if dropped_rows > 0 {
        log::info!("dataset {:?}: dropped {dropped_rows} rows with missing values", dcfg.name);
    }
    let table = discretize_and_encode(&raw, &spec)
        .with_context(|| format!("encoding dataset {:?}", dcfg.name))?;
    Ok(LoadedDataset {
        name: dcfg.name.clone(),
        table,
        dropped_rows,
    })
}

/// Shifts override column indices from original file order to the order
/// after ignored columns are dropped.
fn remap_overrides(
    spec: &DiscretizationSpec,
    ignored: &[usize],
    dcfg: &DatasetConfig,
) -> Result<DiscretizationSpec> {
    let mut remapped = DiscretizationSpec::uniform(spec.default);
    for (&column, &binning) in &spec.overrides {
        if ignored.contains(&column) {
            anyhow::bail!(
                "dataset {:?}: binning override targets ignored column {column}",
                dcfg.name
            );
        }
        let shift = ignored.iter().filter(|&&i| i < column).count();
        remapped.overrides.insert(column - shift, binning);
    }
    Ok(remapped)
}

fn ga_config(acfg: &AlgorithmConfig) -> GaConfig {
    let d = GaConfig::default();
    GaConfig {
        population_size: acfg.population_size.unwrap_or(d.population_size),
        crossover_prob: acfg.crossover_prob.unwrap_or(d.crossover_prob),
        mutation_prob: acfg.mutation_prob.unwrap_or(d.mutation_prob),
        generations: acfg.generations.unwrap_or(d.generations),
    }
}

fn ant_config(acfg: &AlgorithmConfig) -> AntConfig {
    let d = AntConfig::default();
    AntConfig {
        num_ants: acfg.num_ants.or(d.num_ants),
        alpha: acfg.alpha.unwrap_or(d.alpha),
        beta: acfg.beta.unwrap_or(d.beta),
        evaporation_rho: acfg.evaporation_rho.unwrap_or(d.evaporation_rho),
        iterations: acfg.iterations.unwrap_or(d.iterations),
    }
}

fn pso_config(acfg: &AlgorithmConfig) -> PsoConfig {
    let d = PsoConfig::default();
    PsoConfig {
        swarm_size: acfg.swarm_size.unwrap_or(d.swarm_size),
        phi1: acfg.phi1.unwrap_or(d.phi1),
        phi2: acfg.phi2.unwrap_or(d.phi2),
        w_start: acfg.w_start.unwrap_or(d.w_start),
        w_end: acfg.w_end.unwrap_or(d.w_end),
        iterations: acfg.iterations.unwrap_or(d.iterations),
        v_max: acfg.v_max.unwrap_or(d.v_max),
    }
}

fn bee_config(acfg: &AlgorithmConfig, table: &DecisionTable, runs: usize) -> BeeConfig {
    let d = BeeConfig::for_table(table);
    BeeConfig {
        colony_size: acfg.colony_size.unwrap_or(d.colony_size),
        max_cycles: acfg.max_cycles.unwrap_or(d.max_cycles),
        abandonment_limit: acfg.abandonment_limit.unwrap_or(d.abandonment_limit),
        runs,
        ..d
    }
}

/// Executes every configured run of one algorithm on one table. Stochastic
/// run `i` is seeded with `base_seed + i`; deterministic algorithms repeat
/// unseeded.
pub fn execute_pair(table: &DecisionTable, acfg: &AlgorithmConfig) -> Result<Vec<ReductOutcome>> {
    let algorithm = acfg.parsed_algorithm()?;
    let runs = acfg.effective_runs()?;
    let base_seed = acfg.effective_base_seed();
    let mut outcomes = Vec::with_capacity(runs);
    for run in 0..runs {
        let seed = base_seed + run as u64;
        let outcome = match algorithm {
            Algorithm::QuickReduct => quick_reduct(table),
            Algorithm::Ebr => ebr(table),
            Algorithm::Oracle => {
                exhaustive_min_reduct(table, acfg.max_attrs.unwrap_or(DEFAULT_ORACLE_CAP))
            }
            Algorithm::GenRsar => gen_rsar(table, &ga_config(acfg), seed),
            Algorithm::AntRsar => ant_rsar(table, &ant_config(acfg), seed),
            Algorithm::PsoRsar => pso_rsar(table, &pso_config(acfg), seed),
            Algorithm::BeeRsar => bee_rsar(table, &bee_config(acfg, table, runs), seed),
        }?;
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

fn summarize(
    dataset: &LoadedDataset,
    acfg: &AlgorithmConfig,
    outcomes: &[ReductOutcome],
) -> Result<ReportRow> {
    let best = outcomes
        .iter()
        .min_by(|a, b| {
            (!a.feasible, a.cardinality, std::cmp::Reverse(a.gamma.to_bits()))
                .cmp(&(!b.feasible, b.cardinality, std::cmp::Reverse(b.gamma.to_bits())))
        })
        .expect("at least one run");
    // Never trust a stored gamma in the report: recompute from the table.
    let gamma_best = dependency(&dataset.table, &best.subset)?;
    let gamma_full = dependency(&dataset.table, &dataset.table.all_attrs())?;
    Ok(ReportRow {
        dataset: dataset.name.clone(),
        algorithm: acfg.parsed_algorithm()?,
        num_attrs: dataset.table.num_condition_attrs(),
        num_objects: dataset.table.num_objects(),
        runs: outcomes.len(),
        base_seed: acfg.effective_base_seed(),
        cardinalities: outcomes.iter().map(|o| o.cardinality).collect(),
        best_subset: best.subset.clone(),
        gamma_best: gamma_best.value(),
        feasible: gamma_best == gamma_full,
        total_evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
        total_elapsed: outcomes.iter().map(|o| o.elapsed).sum(),
        error: None,
    })
}

/// Runs every (dataset, algorithm) pair in configured order. Dataset or
/// run failures become row-level errors; invalid configuration is rejected
/// before anything runs.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.datasets.len() * cfg.algorithms.len());
    for dcfg in &cfg.datasets {
        match load_dataset(dcfg) {
            Ok(dataset) => {
                for acfg in &cfg.algorithms {
                    let row = match execute_pair(&dataset.table, acfg) {
                        Ok(outcomes) => summarize(&dataset, acfg, &outcomes)?,
                        Err(e) => ReportRow::failed(dcfg, acfg, format!("{e:#}"))?,
                    };
                    rows.push(row);
                }
            }
            Err(e) => {
                log::error!("dataset {:?} failed to load: {e:#}", dcfg.name);
                for acfg in &cfg.algorithms {
                    rows.push(ReportRow::failed(dcfg, acfg, format!("{e:#}"))?);
                }
            }
        }
    }
    Ok(rows)
}

/// One algorithm's runs compared against the exhaustive minimum.
#[derive(Debug, Clone)]
pub struct VerificationRow {
    pub algorithm: Algorithm,
    pub cardinalities: Vec<usize>,
    /// Per-run gap between the returned size and the oracle minimum.
    pub gaps: Vec<usize>,
    /// Set when some run returned a subset that is not a reduct.
    pub invalid_runs: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationEntry {
    pub dataset: String,
    /// Why the dataset was skipped, if it was.
    pub notice: Option<String>,
    pub oracle_cardinality: Option<usize>,
    pub rows: Vec<VerificationRow>,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    /// True when every verified run found a genuine reduct of minimal size.
    pub fn all_optimal(&self) -> bool {
        self.entries.iter().all(|e| {
            e.rows
                .iter()
                .all(|r| r.invalid_runs == 0 && r.gaps.iter().all(|&g| g == 0))
        })
    }
}

/// Checks every algorithm against the exhaustive minimal reduct on each
/// dataset small enough to enumerate. Oversized datasets are skipped with
/// a notice instead of failing the whole verification.
pub fn verify_against_oracle(cfg: &ExperimentConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let cap = DEFAULT_ORACLE_CAP;
    let mut entries = Vec::with_capacity(cfg.datasets.len());
    for dcfg in &cfg.datasets {
        let dataset = match load_dataset(dcfg) {
            Ok(dataset) => dataset,
            Err(e) => {
                entries.push(VerificationEntry {
                    dataset: dcfg.name.clone(),
                    notice: Some(format!("load failed: {e:#}")),
                    oracle_cardinality: None,
                    rows: Vec::new(),
                });
                continue;
            }
        };
        let n = dataset.table.num_condition_attrs();
        if n > cap {
            entries.push(VerificationEntry {
                dataset: dcfg.name.clone(),
                notice: Some(format!("skipped: {n} attributes exceed the oracle cap of {cap}")),
                oracle_cardinality: None,
                rows: Vec::new(),
            });
            continue;
        }
        let oracle = exhaustive_min_reduct(&dataset.table, cap)?;
        let gamma_full = dependency(&dataset.table, &dataset.table.all_attrs())?;
        let mut rows = Vec::with_capacity(cfg.algorithms.len());
        for acfg in &cfg.algorithms {
            let outcomes = execute_pair(&dataset.table, acfg)?;
            let mut invalid_runs = 0;
            for outcome in &outcomes {
                let gamma = dependency(&dataset.table, &outcome.subset)?;
                if gamma != gamma_full {
                    invalid_runs += 1;
                }
            }
            rows.push(VerificationRow {
                algorithm: acfg.parsed_algorithm()?,
                cardinalities: outcomes.iter().map(|o| o.cardinality).collect(),
                gaps: outcomes
                    .iter()
                    .map(|o| o.cardinality.saturating_sub(oracle.cardinality))
                    .collect(),
                invalid_runs,
            });
        }
        entries.push(VerificationEntry {
            dataset: dcfg.name.clone(),
            notice: None,
            oracle_cardinality: Some(oracle.cardinality),
            rows,
        });
    }
    Ok(VerificationReport { entries })
}
