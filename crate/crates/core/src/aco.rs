//! Ant-colony reduct search.
//!
//! Ants walk a complete graph over the condition attributes. Each ant starts
//! on a random attribute and keeps extending its subset, choosing the next
//! attribute by pheromone strength and a heuristic desirability (here the
//! dependency degree of the attribute pair), until the subset reaches the
//! full set's dependency. Pheromone evaporates every iteration and the
//! iteration's smallest subset deposits along its construction path.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::outcome::{Algorithm, ReductOutcome};
use crate::rough::Evaluator;
use crate::table::{AttributeSubset, DecisionTable, Gamma};

/// Pairwise pheromone and desirability levels over the attribute graph.
#[derive(Debug, Clone)]
pub struct PheromoneGraph {
    n: usize,
    tau: Vec<f64>,
    eta: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub evaporation_rho: f64,
}

impl PheromoneGraph {
    /// Fresh graph with pheromone 1 and desirability 0 on every edge.
    pub fn new(n: usize, alpha: f64, beta: f64, evaporation_rho: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&evaporation_rho) || evaporation_rho == 0.0 {
            return Err(Error::InvalidConfig(
                "evaporation_rho must be in (0, 1)".into(),
            ));
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::InvalidConfig(
                "alpha and beta must be non-negative".into(),
            ));
        }
        Ok(Self {
            n,
            tau: vec![1.0; n * n],
            eta: vec![0.0; n * n],
            alpha,
            beta,
            evaporation_rho,
        })
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn tau(&self, i: usize, j: usize) -> f64 {
        self.tau[i * self.n + j]
    }

    pub fn eta(&self, i: usize, j: usize) -> f64 {
        self.eta[i * self.n + j]
    }

    pub fn set_tau(&mut self, i: usize, j: usize, value: f64) {
        assert!(value > 0.0, "pheromone must stay strictly positive");
        self.tau[i * self.n + j] = value;
        self.tau[j * self.n + i] = value;
    }

    pub fn set_eta(&mut self, i: usize, j: usize, value: f64) {
        assert!(value >= 0.0);
        self.eta[i * self.n + j] = value;
        self.eta[j * self.n + i] = value;
    }

    fn evaporate(&mut self) {
        for t in &mut self.tau {
            *t *= 1.0 - self.evaporation_rho;
        }
    }

    /// Adds `delta` on both directions of each consecutive edge in `path`.
    fn deposit(&mut self, path: &[usize], delta: f64) {
        for pair in path.windows(2) {
            self.tau[pair[0] * self.n + pair[1]] += delta;
            self.tau[pair[1] * self.n + pair[0]] += delta;
        }
    }
}

/// One ant mid-walk: where it stands and what it may still visit.
#[derive(Debug, Clone)]
pub struct AntState {
    pub current_feature: usize,
    pub visited: AttributeSubset,
    pub unvisited: Vec<usize>,
}

/// Knobs for [`ant_rsar`].
#[derive(Debug, Clone, PartialEq)]
pub struct AntConfig {
    /// Ants per iteration; `None` means one per condition attribute.
    pub num_ants: Option<usize>,
    pub alpha: f64,
    pub beta: f64,
    pub evaporation_rho: f64,
    pub iterations: usize,
}

impl Default for AntConfig {
    fn default() -> Self {
        Self {
            num_ants: None,
            alpha: 1.0,
            beta: 2.0,
            evaporation_rho: 0.1,
            iterations: 50,
        }
    }
}

impl AntConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_ants == Some(0) {
            return Err(Error::InvalidConfig("num_ants must be positive".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be positive".into()));
        }
        // Bound checks on alpha/beta/rho live in PheromoneGraph::new.
        Ok(())
    }
}

/// Move distribution over `state.unvisited`:
/// `p_j = tau(i,j)^alpha * eta(i,j)^beta / sum over unvisited`.
///
/// When every numerator vanishes (all desirabilities zero with positive
/// beta), the choice degenerates to uniform over the unvisited attributes.
pub fn ant_transition_probabilities(graph: &PheromoneGraph, state: &AntState) -> Result<Vec<f64>> {
    if state.unvisited.is_empty() {
        return Err(Error::EmptySubset);
    }
    let i = state.current_feature;
    let weights: Vec<f64> = state
        .unvisited
        .iter()
        .map(|&j| graph.tau(i, j).powf(graph.alpha) * graph.eta(i, j).powf(graph.beta))
        .collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 || !total.is_finite() {
        let uniform = 1.0 / state.unvisited.len() as f64;
        return Ok(vec![uniform; state.unvisited.len()]);
    }
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Ant-colony search for a small subset with the full set's dependency.
/// Deterministic given `(table, cfg, seed)`.
pub fn ant_rsar(table: &DecisionTable, cfg: &AntConfig, seed: u64) -> Result<ReductOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let mut eval = Evaluator::new(table);
    let n = table.num_condition_attrs();
    let gamma_c = eval.gamma(&table.all_attrs())?;
    let gamma_empty = if table.decision_cardinality() <= 1 {
        Gamma::new(table.num_objects(), table.num_objects())
    } else {
        Gamma::new(0, table.num_objects())
    };
    if gamma_empty == gamma_c {
        // Nothing to select: the empty subset already matches.
        return Ok(ReductOutcome::new(
            Algorithm::AntRsar,
            AttributeSubset::empty(),
            gamma_empty,
            gamma_c,
            eval.count(),
            start.elapsed(),
            Some(seed),
            Vec::new(),
        ));
    }

    let mut graph = PheromoneGraph::new(n, cfg.alpha, cfg.beta, cfg.evaporation_rho)?;
    for i in 0..n {
        for j in i + 1..n {
            let g = eval.gamma_indices(&[i, j])?;
            graph.set_eta(i, j, g.value());
        }
    }

    let num_ants = cfg.num_ants.unwrap_or(n.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(AttributeSubset, Gamma)> = None;
    let mut trace = Vec::with_capacity(cfg.iterations);

    for _ in 0..cfg.iterations {
        let mut iteration_best: Option<(Vec<usize>, Gamma)> = None;
        for _ in 0..num_ants {
            let mut path = vec![rng.gen_range(0..n)];
            let mut subset = AttributeSubset::from_indices(path.iter().copied());
            let mut gamma = eval.gamma(&subset)?;
            while gamma < gamma_c {
                let state = AntState {
                    current_feature: *path.last().expect("path starts non-empty"),
                    unvisited: (0..n).filter(|&a| !subset.contains(a)).collect(),
                    visited: subset.clone(),
                };
                let probs = ant_transition_probabilities(&graph, &state)?;
                let next = state.unvisited[roulette(&probs, &mut rng)];
                path.push(next);
                subset.insert(next);
                gamma = eval.gamma(&subset)?;
            }
            if iteration_best
                .as_ref()
                .is_none_or(|(bp, _)| path.len() < bp.len())
            {
                iteration_best = Some((path.clone(), gamma));
            }
            if best
                .as_ref()
                .is_none_or(|(bs, _)| subset.len() < bs.len())
            {
                best = Some((subset, gamma));
            }
        }
        graph.evaporate();
        if let Some((path, gamma)) = &iteration_best {
            graph.deposit(path, gamma.value() / path.len() as f64);
        }
        let best_len = best.as_ref().expect("ants ran").0.len();
        trace.push(-(best_len as f64));
    }

    let (subset, gamma) = best.expect("iterations >= 1");
    Ok(ReductOutcome::new(
        Algorithm::AntRsar,
        subset,
        gamma,
        gamma_c,
        eval.count(),
        start.elapsed(),
        Some(seed),
        trace,
    ))
}

fn roulette(probs: &[f64], rng: &mut impl Rng) -> usize {
    let r = rng.gen::<f64>();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if r < acc {
            return i;
        }
    }
    probs.len() - 1
}
