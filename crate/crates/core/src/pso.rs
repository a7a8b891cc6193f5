//! Binary particle-swarm reduct search.
//!
//! Particles carry a bit-string position and a real-valued velocity. Each
//! step the velocity pulls toward the particle's own best and the swarm's
//! best position, and every bit is re-sampled to 1 with probability
//! `sigmoid(velocity)`. A position counts as valid only when its subset
//! keeps the full attribute set's positive region; among valid positions,
//! fewer set bits is better, and no invalid position ever outranks a valid
//! one.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ga::BinaryChromosome;
use crate::outcome::{Algorithm, ReductOutcome};
use crate::rough::Evaluator;
use crate::table::{DecisionTable, Gamma};

/// Knobs for [`pso_rsar`].
#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub swarm_size: usize,
    /// Pull toward the particle's own best position.
    pub phi1: f64,
    /// Pull toward the swarm's best position.
    pub phi2: f64,
    /// Inertia weight at the first iteration; decays linearly to `w_end`.
    pub w_start: f64,
    pub w_end: f64,
    pub iterations: usize,
    /// Velocity components are clamped to `[-v_max, v_max]`.
    pub v_max: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 20,
            phi1: 2.0,
            phi2: 2.0,
            w_start: 1.0,
            w_end: 0.1,
            iterations: 100,
            v_max: 4.0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 1 {
            return Err(Error::InvalidConfig("swarm_size must be at least 1".into()));
        }
        if !(self.w_start >= self.w_end && self.w_end >= 0.0) {
            return Err(Error::InvalidConfig(
                "inertia must satisfy w_start >= w_end >= 0".into(),
            ));
        }
        if self.phi1 < 0.0 || self.phi2 < 0.0 {
            return Err(Error::InvalidConfig(
                "phi1 and phi2 must be non-negative".into(),
            ));
        }
        if !self.v_max.is_finite() || self.v_max <= 0.0 {
            return Err(Error::InvalidConfig("v_max must be positive".into()));
        }
        Ok(())
    }
}

/// One member of the swarm.
#[derive(Debug, Clone)]
pub struct Particle {
    pub position: BinaryChromosome,
    pub velocity: Vec<f64>,
    pub best_position: BinaryChromosome,
}

/// `1 / (1 + e^-v)`, the probability a bit lands on 1.
pub fn pso_sigmoid(v: f64) -> f64 {
    1.0 / (1.0 + (-v).exp())
}

/// New velocity pulled toward the particle's own and the swarm's best
/// positions, clamped component-wise to `[-v_max, v_max]`.
#[allow(clippy::too_many_arguments)]
pub fn pso_velocity_update(
    particle: &Particle,
    gbest: &BinaryChromosome,
    w: f64,
    phi1: f64,
    phi2: f64,
    r1: f64,
    r2: f64,
    v_max: f64,
) -> Vec<f64> {
    (0..particle.velocity.len())
        .map(|j| {
            let p = particle.position.bit(j) as f64;
            let bp = particle.best_position.bit(j) as f64;
            let gp = gbest.bit(j) as f64;
            let v = w * particle.velocity[j] + phi1 * r1 * (bp - p) + phi2 * r2 * (gp - p);
            v.clamp(-v_max, v_max)
        })
        .collect()
}

/// Re-samples a position from the velocity: bit `j` is 1 iff
/// `rho_draws[j] < sigmoid(velocity[j])`.
pub fn pso_position_update(velocity: &[f64], rho_draws: &[f64]) -> Result<BinaryChromosome> {
    if velocity.len() != rho_draws.len() {
        return Err(Error::LengthMismatch {
            expected: velocity.len(),
            actual: rho_draws.len(),
        });
    }
    let bits = velocity
        .iter()
        .zip(rho_draws)
        .map(|(&v, &rho)| (rho < pso_sigmoid(v)) as u8)
        .collect();
    BinaryChromosome::from_bits(bits)
}

fn score_position(
    eval: &mut Evaluator,
    chrom: &BinaryChromosome,
    gamma_c: Gamma,
    n: usize,
) -> Result<f64> {
    let g = eval.gamma_indices(&chrom.ones())?;
    Ok(rank(g, gamma_c, chrom.count_ones(), n))
}

/// Scalar rank of a position: valid subsets score `1 + spare/n` (more spare
/// attributes is better), invalid ones score their dependency degree, which
/// stays strictly below every valid score.
fn rank(gamma: Gamma, gamma_c: Gamma, ones: usize, n: usize) -> f64 {
    if gamma == gamma_c {
        if n == 0 {
            1.0
        } else {
            1.0 + (n - ones) as f64 / n as f64
        }
    } else {
        gamma.value()
    }
}

/// Binary PSO search for a small subset preserving the full positive
/// region. Deterministic given `(table, cfg, seed)`.
pub fn pso_rsar(table: &DecisionTable, cfg: &PsoConfig, seed: u64) -> Result<ReductOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let mut eval = Evaluator::new(table);
    let n = table.num_condition_attrs();
    let gamma_c = eval.gamma(&table.all_attrs())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut swarm = Vec::with_capacity(cfg.swarm_size);
    let mut best_scores = Vec::with_capacity(cfg.swarm_size);
    let mut gbest: Option<(f64, BinaryChromosome)> = None;
    for _ in 0..cfg.swarm_size {
        let position = BinaryChromosome::random(n, &mut rng);
        let score = score_position(&mut eval, &position, gamma_c, n)?;
        if gbest.as_ref().is_none_or(|(gs, _)| score > *gs) {
            gbest = Some((score, position.clone()));
        }
        best_scores.push(score);
        swarm.push(Particle {
            best_position: position.clone(),
            velocity: vec![0.0; n],
            position,
        });
    }
    let (mut gbest_score, mut gbest_pos) = gbest.expect("swarm_size >= 1");
    let mut trace = vec![gbest_score];

    for iteration in 0..cfg.iterations {
        let w = if cfg.iterations <= 1 {
            cfg.w_start
        } else {
            let frac = iteration as f64 / (cfg.iterations - 1) as f64;
            cfg.w_start - (cfg.w_start - cfg.w_end) * frac
        };
        for (particle, best_score) in swarm.iter_mut().zip(best_scores.iter_mut()) {
            let r1 = rng.gen::<f64>();
            let r2 = rng.gen::<f64>();
            particle.velocity = pso_velocity_update(
                particle, &gbest_pos, w, cfg.phi1, cfg.phi2, r1, r2, cfg.v_max,
            );
            let draws: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            particle.position = pso_position_update(&particle.velocity, &draws)?;
            let score = score_position(&mut eval, &particle.position, gamma_c, n)?;
            if score > *best_score {
                *best_score = score;
                particle.best_position = particle.position.clone();
            }
            if score > gbest_score {
                gbest_score = score;
                gbest_pos = particle.position.clone();
            }
        }
        trace.push(gbest_score);
    }

    let subset = gbest_pos.decode();
    let gamma = eval.gamma(&subset)?;
    Ok(ReductOutcome::new(
        Algorithm::PsoRsar,
        subset,
        gamma,
        gamma_c,
        eval.count(),
        start.elapsed(),
        Some(seed),
        trace,
    ))
}
