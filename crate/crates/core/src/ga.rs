//! Genetic-algorithm reduct search over fixed-length attribute bit strings.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::outcome::{Algorithm, ReductOutcome};
use crate::rough::Evaluator;
use crate::table::{AttributeSubset, DecisionTable, Gamma};

/// A candidate subset as a bit string, one bit per condition attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryChromosome {
    bits: Vec<u8>,
}

impl BinaryChromosome {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidConfig(
                "chromosome bits must be 0 or 1".into(),
            ));
        }
        Ok(Self { bits })
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![0; len],
        }
    }

    pub fn random(len: usize, rng: &mut impl Rng) -> Self {
        Self {
            bits: (0..len).map(|_| rng.gen_bool(0.5) as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] ^= 1;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Indices of the set bits.
    pub fn ones(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|&(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn decode(&self) -> AttributeSubset {
        AttributeSubset::from_indices(self.ones())
    }
}

/// Knobs for [`gen_rsar`].
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    /// Probability a parent pair exchanges tails at one random point.
    pub crossover_prob: f64,
    /// Probability a child has one uniformly chosen bit flipped.
    pub mutation_prob: f64,
    pub generations: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            crossover_prob: 0.6,
            mutation_prob: 0.4,
            generations: 100,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::InvalidConfig(
                "population_size must be at least 2".into(),
            ));
        }
        for (name, p) in [
            ("crossover_prob", self.crossover_prob),
            ("mutation_prob", self.mutation_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} must be in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Subset quality: dependency degree scaled by how many attributes the
/// subset leaves out. The full set scores 0 no matter how consistent the
/// table is, and so does the empty subset, which is never a useful reduct.
pub fn ga_fitness(table: &DecisionTable, chrom: &BinaryChromosome) -> Result<f64> {
    if chrom.len() != table.num_condition_attrs() {
        return Err(Error::DimensionMismatch {
            expected: table.num_condition_attrs(),
            actual: chrom.len(),
        });
    }
    let mut eval = Evaluator::new(table);
    Ok(score(&mut eval, chrom)?.0)
}

fn score(eval: &mut Evaluator, chrom: &BinaryChromosome) -> Result<(f64, Option<Gamma>)> {
    let ones = chrom.ones();
    if ones.is_empty() {
        return Ok((0.0, None));
    }
    let g = eval.gamma_indices(&ones)?;
    let n = chrom.len() as f64;
    Ok((g.value() * ((n - ones.len() as f64) / n), Some(g)))
}

/// Generational GA: roulette selection on [`ga_fitness`], single-point
/// crossover, flip-one-bit mutation, one elite carried over unchanged.
///
/// Returns the best subset seen whose dependency matches the full set's;
/// if no generation ever produced one, falls back to the highest-fitness
/// subset seen. Deterministic given `(table, cfg, seed)`.
pub fn gen_rsar(table: &DecisionTable, cfg: &GaConfig, seed: u64) -> Result<ReductOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let mut eval = Evaluator::new(table);
    let n = table.num_condition_attrs();
    let gamma_c = eval.gamma(&table.all_attrs())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut population: Vec<BinaryChromosome> = (0..cfg.population_size)
        .map(|_| BinaryChromosome::random(n, &mut rng))
        .collect();

    let mut best_any: Option<(f64, BinaryChromosome)> = None;
    let mut best_feasible: Option<(f64, BinaryChromosome)> = None;
    let mut trace = Vec::with_capacity(cfg.generations + 1);

    let mut fitnesses = vec![0.0; cfg.population_size];
    for generation in 0..=cfg.generations {
        for (chrom, slot) in population.iter().zip(fitnesses.iter_mut()) {
            let (fitness, gamma) = score(&mut eval, chrom)?;
            *slot = fitness;
            if best_any.as_ref().is_none_or(|(bf, _)| fitness > *bf) {
                best_any = Some((fitness, chrom.clone()));
            }
            if gamma == Some(gamma_c)
                && best_feasible.as_ref().is_none_or(|(bf, _)| fitness > *bf)
            {
                best_feasible = Some((fitness, chrom.clone()));
            }
        }
        // Elitism keeps the per-generation best from ever dropping.
        trace.push(fitnesses.iter().copied().fold(f64::MIN, f64::max));
        if generation == cfg.generations {
            break;
        }

        let elite = argmax(&fitnesses);
        let total: f64 = fitnesses.iter().sum();
        let mut next = Vec::with_capacity(cfg.population_size);
        next.push(population[elite].clone());
        while next.len() < cfg.population_size {
            let mut a = population[roulette(&fitnesses, total, &mut rng)].clone();
            let mut b = population[roulette(&fitnesses, total, &mut rng)].clone();
            if n >= 2 && rng.gen_bool(cfg.crossover_prob) {
                let point = rng.gen_range(1..n);
                for i in point..n {
                    std::mem::swap(&mut a.bits[i], &mut b.bits[i]);
                }
            }
            for child in [&mut a, &mut b] {
                if n >= 1 && rng.gen_bool(cfg.mutation_prob) {
                    child.flip(rng.gen_range(0..n));
                }
            }
            next.push(a);
            if next.len() < cfg.population_size {
                next.push(b);
            }
        }
        population = next;
    }

    let (_, chrom) = best_feasible
        .or(best_any)
        .expect("population is never empty");
    let subset = chrom.decode();
    let gamma = eval.gamma(&subset)?;
    Ok(ReductOutcome::new(
        Algorithm::GenRsar,
        subset,
        gamma,
        gamma_c,
        eval.count(),
        start.elapsed(),
        Some(seed),
        trace,
    ))
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

fn roulette(weights: &[f64], total: f64, rng: &mut impl Rng) -> usize {
    if total <= 0.0 {
        return rng.gen_range(0..weights.len());
    }
    let r = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if r < acc {
            return i;
        }
    }
    weights.len() - 1
}
