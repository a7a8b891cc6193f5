//! Artificial-bee-colony reduct search.
//!
//! Food sources are real-valued vectors in `[lower_bound, upper_bound]^N`
//! that decode to attribute subsets by truncation and de-duplication. Each
//! cycle, employed bees perturb their source along one random dimension
//! toward or away from a random partner and keep the better of the two;
//! onlookers repeat that on sources chosen in proportion to quality; sources
//! stuck past the abandonment limit are replaced by fresh random scouts.
//!
//! A source's objective is the dependency degree of its decoded subset,
//! plus a parsimony bonus of `(|C| - |R|) / |C|` once the subset preserves
//! the full set's dependency. Without the bonus nothing would ever favor
//! smaller subsets among those that already keep the positive region; the
//! bonus only applies past feasibility, so size never trades against
//! dependency. Source-versus-source comparisons maximize this objective
//! directly; the reciprocal transform in [`abc_fitness`] is used where a
//! non-negative weight is needed, i.e. to build the onlooker roulette from
//! `abc_fitness(max_objective - objective)`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::outcome::{Algorithm, ReductOutcome};
use crate::rough::dependency;
use crate::table::{AttributeSubset, DecisionTable, Gamma};

/// Knobs for [`bee_rsar`].
#[derive(Debug, Clone, PartialEq)]
pub struct BeeConfig {
    /// Total bees; half are employed (one per food source), half onlookers.
    pub colony_size: usize,
    /// Position vector length; must equal the table's attribute count.
    pub dimension: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub max_cycles: usize,
    /// Independent colony runs the harness performs per dataset.
    pub runs: usize,
    /// Cycles without improvement before a source is abandoned to a scout.
    pub abandonment_limit: usize,
}

impl BeeConfig {
    /// Defaults sized for `table`: colony of 10, positions in `[1, N]` for
    /// `N` condition attributes, 1000 cycles, 3 runs, abandonment after
    /// `(colony/2) * N` stale cycles.
    pub fn for_table(table: &DecisionTable) -> Self {
        let n = table.num_condition_attrs();
        Self {
            colony_size: 10,
            dimension: n,
            lower_bound: 1.0,
            // A single-attribute table would make the interval degenerate;
            // decode clamps to [1, N] anyway, so widen it.
            upper_bound: n.max(2) as f64,
            max_cycles: 1000,
            runs: 3,
            abandonment_limit: 5 * n,
        }
    }

    pub fn num_sources(&self) -> usize {
        self.colony_size / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.colony_size < 2 || !self.colony_size.is_multiple_of(2) {
            return Err(Error::InvalidConfig(
                "colony_size must be even and at least 2".into(),
            ));
        }
        if self.dimension == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        if !self.lower_bound.is_finite()
            || !self.upper_bound.is_finite()
            || self.lower_bound >= self.upper_bound
        {
            return Err(Error::InvalidConfig(
                "lower_bound must be below upper_bound".into(),
            ));
        }
        if self.max_cycles == 0 {
            return Err(Error::InvalidConfig("max_cycles must be positive".into()));
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be positive".into()));
        }
        Ok(())
    }
}

/// A candidate solution with its cached evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    /// Decoded-subset quality; higher is better.
    pub objective: f64,
    /// Reciprocal transform of `objective`, kept for weight building.
    pub fitness: f64,
    /// Consecutive cycles without improvement.
    pub trial_count: usize,
    pub decoded: AttributeSubset,
}

/// Maps a position vector to the subset of 0-based attribute indices:
/// each component is truncated toward zero, clamped into `[1, n]`, and
/// duplicates collapse. The result is never empty.
pub fn decode_position(position: &[f64], n: usize) -> Result<AttributeSubset> {
    if position.is_empty() {
        return Err(Error::EmptyPosition);
    }
    Ok(position
        .iter()
        .map(|&x| (x.trunc() as i64).clamp(1, n.max(1) as i64) as usize - 1)
        .collect())
}

/// Perturbs `source` along dimension `j` relative to `partner`:
/// `v_j = x_j + phi * (x_j - partner_j)`, clamped into the config bounds.
/// Other components are copied unchanged.
pub fn neighbor_source(
    source: &FoodSource,
    partner: &FoodSource,
    j: usize,
    phi: f64,
    cfg: &BeeConfig,
) -> Vec<f64> {
    let mut position = source.position.clone();
    let v = position[j] + phi * (position[j] - partner.position[j]);
    position[j] = v.clamp(cfg.lower_bound, cfg.upper_bound);
    position
}

/// `1 / (1 + f)` for non-negative `f`, `1 + |f|` otherwise.
pub fn abc_fitness(objective: f64) -> f64 {
    if objective >= 0.0 {
        1.0 / (1.0 + objective)
    } else {
        1.0 + objective.abs()
    }
}

/// Normalizes non-negative weights into a distribution; all-zero weights
/// degenerate to uniform.
pub fn selection_probabilities(fitnesses: &[f64]) -> Result<Vec<f64>> {
    if fitnesses.is_empty() {
        return Err(Error::InvalidConfig("no fitness values given".into()));
    }
    if let Some(&bad) = fitnesses.iter().find(|f| !f.is_finite() || **f < 0.0) {
        return Err(Error::InvalidConfig(format!(
            "fitness values must be finite and non-negative, got {bad}"
        )));
    }
    let total: f64 = fitnesses.iter().sum();
    if total <= 0.0 {
        return Ok(vec![1.0 / fitnesses.len() as f64; fitnesses.len()]);
    }
    Ok(fitnesses.iter().map(|f| f / total).collect())
}

/// Fresh random position: `x_j = lower + (upper - lower) * rand_draws[j]`.
pub fn scout_reinit(cfg: &BeeConfig, rand_draws: &[f64]) -> Result<Vec<f64>> {
    if rand_draws.len() != cfg.dimension {
        return Err(Error::LengthMismatch {
            expected: cfg.dimension,
            actual: rand_draws.len(),
        });
    }
    Ok(rand_draws
        .iter()
        .map(|r| cfg.lower_bound + (cfg.upper_bound - cfg.lower_bound) * r)
        .collect())
}

/// Rank value of a subset: its dependency degree while it falls short of
/// the full set's, and the full dependency plus a spare-attribute bonus
/// once it matches. Higher is better.
pub fn bee_objective(table: &DecisionTable, subset: &AttributeSubset) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let gamma_c = dependency(table, &table.all_attrs())?;
    let gamma_s = dependency(table, subset)?;
    Ok(objective_value(
        gamma_s,
        gamma_c,
        subset.len(),
        table.num_condition_attrs(),
    ))
}

fn objective_value(gamma_s: Gamma, gamma_c: Gamma, len: usize, n: usize) -> f64 {
    if gamma_s == gamma_c {
        gamma_c.value() + (n - len) as f64 / n as f64
    } else {
        gamma_s.value()
    }
}

/// The colony between cycles: the live sources, the best source ever seen
/// and how many cycles have run.
#[derive(Debug, Clone)]
pub struct ColonyState {
    pub sources: Vec<FoodSource>,
    pub best_so_far: FoodSource,
    pub cycle: usize,
    gamma_c: Gamma,
    evaluations: u64,
}

impl ColonyState {
    /// Draws `colony_size / 2` random sources and evaluates them.
    pub fn init(
        table: &DecisionTable,
        cfg: &BeeConfig,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        cfg.validate()?;
        if cfg.dimension != table.num_condition_attrs() {
            return Err(Error::DimensionMismatch {
                expected: cfg.dimension,
                actual: table.num_condition_attrs(),
            });
        }
        let gamma_c = dependency(table, &table.all_attrs())?;
        let mut state = Self {
            sources: Vec::with_capacity(cfg.num_sources()),
            best_so_far: FoodSource {
                position: Vec::new(),
                objective: f64::MIN,
                fitness: 0.0,
                trial_count: 0,
                decoded: AttributeSubset::empty(),
            },
            cycle: 0,
            gamma_c,
            evaluations: 1,
        };
        for _ in 0..cfg.num_sources() {
            let draws: Vec<f64> = (0..cfg.dimension).map(|_| rng.gen::<f64>()).collect();
            let position = scout_reinit(cfg, &draws)?;
            let source = state.evaluate(table, position)?;
            state.sources.push(source);
        }
        state.memorize_best();
        Ok(state)
    }

    fn evaluate(&mut self, table: &DecisionTable, position: Vec<f64>) -> Result<FoodSource> {
        let decoded = decode_position(&position, table.num_condition_attrs())?;
        self.evaluations += 1;
        let gamma_s = dependency(table, &decoded)?;
        let objective = objective_value(
            gamma_s,
            self.gamma_c,
            decoded.len(),
            table.num_condition_attrs(),
        );
        Ok(FoodSource {
            position,
            objective,
            fitness: abc_fitness(objective),
            trial_count: 0,
            decoded,
        })
    }

    /// Perturb-and-keep-better on source `index` with a random dimension,
    /// partner and step size.
    fn improve_source(
        &mut self,
        table: &DecisionTable,
        cfg: &BeeConfig,
        rng: &mut impl Rng,
        index: usize,
    ) -> Result<()> {
        let j = rng.gen_range(0..cfg.dimension);
        let partner = if self.sources.len() > 1 {
            loop {
                let k = rng.gen_range(0..self.sources.len());
                if k != index {
                    break k;
                }
            }
        } else {
            // Degenerate single-source colony: the difference term vanishes.
            index
        };
        let phi = rng.gen_range(-1.0..1.0);
        let position = neighbor_source(&self.sources[index], &self.sources[partner], j, phi, cfg);
        let candidate = self.evaluate(table, position)?;
        let current = &mut self.sources[index];
        if candidate.objective > current.objective {
            *current = candidate;
        } else {
            current.trial_count += 1;
        }
        Ok(())
    }

    /// Every employed bee perturbs its own source.
    pub fn employed_phase(
        &mut self,
        table: &DecisionTable,
        cfg: &BeeConfig,
        rng: &mut impl Rng,
    ) -> Result<()> {
        for index in 0..self.sources.len() {
            self.improve_source(table, cfg, rng, index)?;
        }
        Ok(())
    }

    /// Each onlooker picks a source by quality-weighted roulette and
    /// perturbs it.
    pub fn onlooker_phase(
        &mut self,
        table: &DecisionTable,
        cfg: &BeeConfig,
        rng: &mut impl Rng,
    ) -> Result<()> {
        let max_objective = self
            .sources
            .iter()
            .map(|s| s.objective)
            .fold(f64::MIN, f64::max);
        let weights: Vec<f64> = self
            .sources
            .iter()
            .map(|s| abc_fitness(max_objective - s.objective))
            .collect();
        let probs = selection_probabilities(&weights)?;
        for _ in 0..self.sources.len() {
            let r = rng.gen::<f64>();
            let mut acc = 0.0;
            let mut chosen = probs.len() - 1;
            for (i, p) in probs.iter().enumerate() {
                acc += p;
                if r < acc {
                    chosen = i;
                    break;
                }
            }
            self.improve_source(table, cfg, rng, chosen)?;
        }
        Ok(())
    }

    /// Replaces every source stuck past the abandonment limit with a fresh
    /// random one.
    pub fn scout_phase(
        &mut self,
        table: &DecisionTable,
        cfg: &BeeConfig,
        rng: &mut impl Rng,
    ) -> Result<()> {
        for index in 0..self.sources.len() {
            if self.sources[index].trial_count > cfg.abandonment_limit {
                let draws: Vec<f64> = (0..cfg.dimension).map(|_| rng.gen::<f64>()).collect();
                let position = scout_reinit(cfg, &draws)?;
                self.sources[index] = self.evaluate(table, position)?;
            }
        }
        Ok(())
    }

    /// Copies the best current source into `best_so_far` if it improves it.
    pub fn memorize_best(&mut self) {
        for source in &self.sources {
            if source.objective > self.best_so_far.objective {
                self.best_so_far = source.clone();
            }
        }
    }

    /// One full cycle: employed, onlooker, scout, memorize.
    pub fn run_cycle(
        &mut self,
        table: &DecisionTable,
        cfg: &BeeConfig,
        rng: &mut impl Rng,
    ) -> Result<()> {
        self.employed_phase(table, cfg, rng)?;
        self.onlooker_phase(table, cfg, rng)?;
        self.scout_phase(table, cfg, rng)?;
        self.memorize_best();
        self.cycle += 1;
        Ok(())
    }
}

/// One seeded colony run of `cfg.max_cycles` cycles. The multi-run
/// protocol (`cfg.runs` with seeds `base, base+1, ...`) belongs to the
/// harness; this function is a single run and ignores `cfg.runs`.
/// Deterministic given `(table, cfg, seed)`.
pub fn bee_rsar(table: &DecisionTable, cfg: &BeeConfig, seed: u64) -> Result<ReductOutcome> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = ColonyState::init(table, cfg, &mut rng)?;
    let mut trace = Vec::with_capacity(cfg.max_cycles);
    for _ in 0..cfg.max_cycles {
        state.run_cycle(table, cfg, &mut rng)?;
        trace.push(state.best_so_far.objective);
    }
    let subset = state.best_so_far.decoded.clone();
    let gamma = dependency(table, &subset)?;
    Ok(ReductOutcome::new(
        Algorithm::BeeRsar,
        subset,
        gamma,
        state.gamma_c,
        state.evaluations + 1,
        start.elapsed(),
        Some(seed),
        trace,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[Vec<u32>], decision: Vec<u32>) -> DecisionTable {
        DecisionTable::from_unnamed_rows(rows, decision).unwrap()
    }

    fn t0() -> DecisionTable {
        table(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]], vec![0, 0, 1, 1])
    }

    fn t1() -> DecisionTable {
        table(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]], vec![0, 1, 1, 1])
    }

    fn source(position: Vec<f64>) -> FoodSource {
        FoodSource {
            decoded: decode_position(&position, position.len()).unwrap(),
            position,
            objective: 0.0,
            fitness: 1.0,
            trial_count: 0,
        }
    }

    #[test]
    fn decode_truncates_and_dedups() {
        let s = decode_position(&[1.45, 1.76, 3.33, 1.01], 4).unwrap();
        assert_eq!(s.to_vec(), vec![0, 2]);
    }

    #[test]
    fn decode_collapses_duplicates_to_one() {
        let s = decode_position(&[2.0, 2.0, 2.0], 3).unwrap();
        assert_eq!(s.to_vec(), vec![1]);
    }

    #[test]
    fn decode_clamps_out_of_range_components() {
        let s = decode_position(&[0.2, 4.9], 4).unwrap();
        assert_eq!(s.to_vec(), vec![0, 3]);
    }

    #[test]
    fn decode_rejects_empty_position() {
        assert_eq!(decode_position(&[], 4).unwrap_err(), Error::EmptyPosition);
    }

    fn cfg_with_bounds(dimension: usize, lower: f64, upper: f64) -> BeeConfig {
        BeeConfig {
            colony_size: 10,
            dimension,
            lower_bound: lower,
            upper_bound: upper,
            max_cycles: 1000,
            runs: 3,
            abandonment_limit: 5 * dimension,
        }
    }

    #[test]
    fn neighbor_identity_at_phi_zero() {
        let cfg = cfg_with_bounds(2, 1.0, 4.0);
        let a = source(vec![2.0, 3.0]);
        let b = source(vec![1.0, 1.0]);
        assert_eq!(neighbor_source(&a, &b, 0, 0.0, &cfg), vec![2.0, 3.0]);
    }

    #[test]
    fn neighbor_moves_along_one_dimension() {
        let cfg = cfg_with_bounds(2, 1.0, 4.0);
        let a = source(vec![2.0, 3.0]);
        let b = source(vec![1.0, 1.0]);
        let moved = neighbor_source(&a, &b, 0, 1.0, &cfg);
        assert_eq!(moved, vec![3.0, 3.0]);
    }

    #[test]
    fn neighbor_clamps_to_bounds() {
        let cfg = cfg_with_bounds(1, 1.0, 4.0);
        let a = source(vec![4.0]);
        let b = source(vec![1.0]);
        assert_eq!(neighbor_source(&a, &b, 0, 0.5, &cfg), vec![4.0]);
    }

    #[test]
    fn fitness_transform_fixtures() {
        assert!((abc_fitness(0.0) - 1.0).abs() < 1e-12);
        assert!((abc_fitness(3.0) - 0.25).abs() < 1e-12);
        assert!((abc_fitness(-0.5) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn selection_probability_fixtures() {
        let p = selection_probabilities(&[1.0, 1.0]).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
        let p = selection_probabilities(&[3.0, 1.0]).unwrap();
        assert!((p[0] - 0.75).abs() < 1e-12);
        assert!((p[1] - 0.25).abs() < 1e-12);
        let p = selection_probabilities(&[5.0]).unwrap();
        assert_eq!(p, vec![1.0]);
        let p = selection_probabilities(&[0.0, 0.0]).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
        assert!(selection_probabilities(&[]).is_err());
    }

    #[test]
    fn scout_reinit_spans_the_bounds() {
        let cfg = cfg_with_bounds(2, 1.0, 5.0);
        assert_eq!(scout_reinit(&cfg, &[0.0, 0.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(scout_reinit(&cfg, &[1.0, 1.0]).unwrap(), vec![5.0, 5.0]);
        assert_eq!(scout_reinit(&cfg, &[0.5, 0.5]).unwrap(), vec![3.0, 3.0]);
        assert!(scout_reinit(&cfg, &[0.5]).is_err());
    }

    #[test]
    fn objective_rewards_feasibility_then_parsimony() {
        let a = AttributeSubset::from_indices([0]);
        let ab = AttributeSubset::from_indices([0, 1]);
        assert!((bee_objective(&t0(), &a).unwrap() - 1.5).abs() < 1e-12);
        assert!((bee_objective(&t1(), &a).unwrap() - 0.5).abs() < 1e-12);
        assert!((bee_objective(&t0(), &ab).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(
            bee_objective(&t0(), &AttributeSubset::empty()).unwrap_err(),
            Error::EmptySubset
        );
    }

    #[test]
    fn finds_minimal_subset_on_t0() {
        let t = t0();
        let cfg = BeeConfig {
            max_cycles: 50,
            ..BeeConfig::for_table(&t)
        };
        for seed in [1, 2, 3] {
            let out = bee_rsar(&t, &cfg, seed).unwrap();
            assert_eq!(out.subset.to_vec(), vec![0], "seed {seed}");
            assert_eq!(out.gamma, 1.0);
            assert!(out.feasible);
        }
    }

    #[test]
    fn finds_the_only_reduct_on_t1() {
        let t = t1();
        let cfg = BeeConfig {
            max_cycles: 50,
            ..BeeConfig::for_table(&t)
        };
        let out = bee_rsar(&t, &cfg, 7).unwrap();
        assert_eq!(out.subset.to_vec(), vec![0, 1]);
        assert!(out.feasible);
    }

    #[test]
    fn identical_seeds_reproduce_outcomes() {
        let t = t1();
        let cfg = BeeConfig {
            max_cycles: 30,
            ..BeeConfig::for_table(&t)
        };
        let a = bee_rsar(&t, &cfg, 42).unwrap();
        let b = bee_rsar(&t, &cfg, 42).unwrap();
        assert_eq!(a.subset, b.subset);
        assert_eq!(a.evaluations, b.evaluations);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn best_so_far_never_worsens() {
        let t = t0();
        let cfg = BeeConfig {
            max_cycles: 100,
            ..BeeConfig::for_table(&t)
        };
        let out = bee_rsar(&t, &cfg, 13).unwrap();
        assert!(out.trace.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn cycles_keep_source_invariants() {
        let t = t1();
        let cfg = BeeConfig {
            max_cycles: 20,
            ..BeeConfig::for_table(&t)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut state = ColonyState::init(&t, &cfg, &mut rng).unwrap();
        assert_eq!(state.sources.len(), cfg.num_sources());
        for _ in 0..20 {
            state.run_cycle(&t, &cfg, &mut rng).unwrap();
            for s in &state.sources {
                assert!(s
                    .position
                    .iter()
                    .all(|&x| (cfg.lower_bound..=cfg.upper_bound).contains(&x)));
                assert_eq!(s.decoded, decode_position(&s.position, cfg.dimension).unwrap());
                assert!((s.fitness - abc_fitness(s.objective)).abs() < 1e-12);
            }
        }
        assert_eq!(state.cycle, 20);
    }

    #[test]
    fn employed_phase_trials_track_improvement_exactly() {
        let t = t1();
        let cfg = BeeConfig {
            max_cycles: 20,
            ..BeeConfig::for_table(&t)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut state = ColonyState::init(&t, &cfg, &mut rng).unwrap();
        for _ in 0..30 {
            let before: Vec<(f64, usize)> = state
                .sources
                .iter()
                .map(|s| (s.objective, s.trial_count))
                .collect();
            state.employed_phase(&t, &cfg, &mut rng).unwrap();
            for (s, (obj, trials)) in state.sources.iter().zip(before) {
                if s.objective > obj {
                    assert_eq!(s.trial_count, 0);
                } else {
                    assert_eq!(s.objective, obj);
                    assert_eq!(s.trial_count, trials + 1);
                }
            }
        }
    }

    #[test]
    fn rejects_invalid_configs() {
        let t = t0();
        let odd = BeeConfig {
            colony_size: 7,
            ..BeeConfig::for_table(&t)
        };
        assert!(bee_rsar(&t, &odd, 0).is_err());

        let mismatched = BeeConfig {
            dimension: 5,
            ..BeeConfig::for_table(&t)
        };
        assert!(matches!(
            bee_rsar(&t, &mismatched, 0).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }
}
