//! Rough-set attribute reduction: exact set-theoretic measures over
//! integer-coded decision tables, plus six reduct searches (two greedy, one
//! exhaustive, four stochastic) and a dataset ingestion pipeline.

mod aco;
mod bee;
mod error;
mod exhaustive;
mod ga;
mod greedy;
mod outcome;
mod pipeline;
mod pso;
mod rough;
mod table;

pub use aco::{ant_rsar, ant_transition_probabilities, AntConfig, AntState, PheromoneGraph};
pub use bee::{
    abc_fitness, bee_objective, bee_rsar, decode_position, neighbor_source, scout_reinit,
    selection_probabilities, BeeConfig, ColonyState, FoodSource,
};
pub use error::{Error, Result};
pub use exhaustive::{exhaustive_min_reduct, DEFAULT_ORACLE_CAP};
pub use ga::{ga_fitness, gen_rsar, BinaryChromosome, GaConfig};
pub use greedy::{ebr, quick_reduct, ENTROPY_TOLERANCE};
pub use outcome::{Algorithm, ReductOutcome};
pub use pipeline::{
    apply_missing_policy, discretize_and_encode, load_delimited, write_encoded, ColumnBinning,
    DiscretizationSpec, MissingPolicy, PipelineError, RawDataset,
};
pub use pso::{
    pso_position_update, pso_rsar, pso_sigmoid, pso_velocity_update, Particle, PsoConfig,
};
pub use rough::{
    decision_partition, dependency, entropy, lower_approx, partition, regions, upper_approx,
    Regions,
};
pub use table::{AttributeSubset, DecisionTable, Gamma, ObjectSet, Partition};
