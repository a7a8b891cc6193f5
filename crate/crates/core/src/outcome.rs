//! Shared result record returned by every reduct search.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::table::{AttributeSubset, Gamma};

/// The reduct searches this crate ships.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Greedy forward selection maximizing dependency degree.
    QuickReduct,
    /// Greedy forward selection minimizing conditional entropy.
    Ebr,
    /// Exhaustive minimal-reduct search, usable as a ground-truth oracle.
    Oracle,
    /// Genetic algorithm over attribute bit strings.
    GenRsar,
    /// Ant colony construction guided by pheromone and pairwise dependency.
    AntRsar,
    /// Binary particle swarm optimization.
    PsoRsar,
    /// Artificial bee colony search.
    BeeRsar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::QuickReduct,
        Algorithm::Ebr,
        Algorithm::Oracle,
        Algorithm::GenRsar,
        Algorithm::AntRsar,
        Algorithm::PsoRsar,
        Algorithm::BeeRsar,
    ];

    /// Stable lowercase identifier used in configs and reports.
    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::QuickReduct => "quickreduct",
            Algorithm::Ebr => "ebr",
            Algorithm::Oracle => "oracle",
            Algorithm::GenRsar => "genrsar",
            Algorithm::AntRsar => "antrsar",
            Algorithm::PsoRsar => "psorsar",
            Algorithm::BeeRsar => "beersar",
        }
    }

    /// Whether runs depend on a seed.
    pub fn is_stochastic(&self) -> bool {
        matches!(
            self,
            Algorithm::GenRsar | Algorithm::AntRsar | Algorithm::PsoRsar | Algorithm::BeeRsar
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// What a reduct search found and what it cost.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductOutcome {
    pub algorithm: Algorithm,
    /// The attribute subset returned by the search.
    pub subset: AttributeSubset,
    /// Dependency degree of the decision on `subset`.
    pub gamma: f64,
    pub cardinality: usize,
    /// Whether `subset` preserves the dependency of the full attribute set.
    pub feasible: bool,
    /// Number of dependency or entropy evaluations performed.
    pub evaluations: u64,
    pub elapsed: Duration,
    /// Seed the run used; `None` for deterministic searches.
    pub seed: Option<u64>,
    /// Best-so-far score per iteration, for convergence inspection. The
    /// meaning of the score is algorithm-specific but always non-decreasing.
    pub trace: Vec<f64>,
}

impl ReductOutcome {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        algorithm: Algorithm,
        subset: AttributeSubset,
        gamma: Gamma,
        full_gamma: Gamma,
        evaluations: u64,
        elapsed: Duration,
        seed: Option<u64>,
        trace: Vec<f64>,
    ) -> Self {
        let cardinality = subset.len();
        Self {
            algorithm,
            subset,
            gamma: gamma.value(),
            cardinality,
            feasible: gamma == full_gamma,
            evaluations,
            elapsed,
            seed,
            trace,
        }
    }
}
