//! Property suite for the reduct searches: the greedy and exhaustive
//! methods against literal reference checks, plus invariants shared by the
//! stochastic searches (feasibility flags, monotone traces, seeded
//! determinism, scale-free transition probabilities, decode round trips).

mod common;

use common::{arb_table, min_reduct_by_bitmask, naive_positive_count};
use proptest::prelude::*;
use rsar_core::{
    ant_rsar, ant_transition_probabilities, bee_rsar, decode_position, dependency, ebr,
    exhaustive_min_reduct, ga_fitness, gen_rsar, pso_rsar, quick_reduct, AntConfig, AntState,
    AttributeSubset, BeeConfig, BinaryChromosome, DecisionTable, GaConfig, PheromoneGraph,
    PsoConfig, ReductOutcome,
};

fn assert_reduct(table: &DecisionTable, outcome: &ReductOutcome) {
    let full = naive_positive_count(table, &table.all_attrs());
    let got = naive_positive_count(table, &outcome.subset);
    assert_eq!(got, full, "subset {} is not a reduct", outcome.subset);
    assert!(outcome.feasible);
    assert_eq!(outcome.cardinality, outcome.subset.len());
}

fn assert_monotone(trace: &[f64]) {
    for pair in trace.windows(2) {
        assert!(pair[1] >= pair[0], "trace regressed: {pair:?}");
    }
}

fn assert_same(a: &ReductOutcome, b: &ReductOutcome) {
    assert_eq!(a.subset, b.subset);
    assert_eq!(a.gamma, b.gamma);
    assert_eq!(a.evaluations, b.evaluations);
    assert_eq!(a.trace, b.trace);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn quickreduct_returns_a_reduct_within_budget(table in arb_table(2..=10, 1..=8, 2..=3)) {
        let outcome = quick_reduct(&table).unwrap();
        assert_reduct(&table, &outcome);
        assert_monotone(&outcome.trace);
        let n = table.num_condition_attrs() as u64;
        prop_assert!(outcome.evaluations <= (n * n + n) / 2);
    }

    #[test]
    fn ebr_returns_a_reduct(table in arb_table(2..=10, 1..=8, 2..=3)) {
        let outcome = ebr(&table).unwrap();
        assert_reduct(&table, &outcome);
        assert_monotone(&outcome.trace);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agrees_with_bitmask_enumeration(table in arb_table(2..=10, 1..=7, 2..=3)) {
        let outcome = exhaustive_min_reduct(&table, 24).unwrap();
        assert_reduct(&table, &outcome);
        prop_assert_eq!(&outcome.subset, &min_reduct_by_bitmask(&table));
    }

    #[test]
    fn greedy_cardinality_bounds(table in arb_table(2..=10, 1..=7, 2..=3)) {
        let oracle = exhaustive_min_reduct(&table, 24).unwrap();
        let qr = quick_reduct(&table).unwrap();
        let eb = ebr(&table).unwrap();
        prop_assert!(oracle.cardinality <= qr.cardinality);
        prop_assert!(oracle.cardinality <= eb.cardinality);
        prop_assert!(qr.cardinality <= table.num_condition_attrs());
        prop_assert!(eb.cardinality <= table.num_condition_attrs());
    }

    #[test]
    fn ga_fitness_stays_in_unit_interval(
        table in arb_table(2..=10, 1..=7, 2..=3),
        mask in prop::collection::vec(any::<bool>(), 7),
    ) {
        let n = table.num_condition_attrs();
        let bits: Vec<u8> = mask.iter().take(n).map(|&b| b as u8).collect();
        let chrom = BinaryChromosome::from_bits(bits).unwrap();
        let fitness = ga_fitness(&table, &chrom).unwrap();
        prop_assert!((0.0..=1.0).contains(&fitness));
        if chrom.count_ones() == 0 {
            prop_assert_eq!(fitness, 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transition_probabilities_ignore_pheromone_scale(
        taus in prop::collection::vec(0.1..10.0f64, 6 * 6),
        etas in prop::collection::vec(0.0..1.0f64, 6 * 6),
        scale in 0.01..100.0f64,
        current in 0..6usize,
    ) {
        let build = |factor: f64| {
            let mut graph = PheromoneGraph::new(6, 1.0, 2.0, 0.1).unwrap();
            for i in 0..6 {
                for j in (i + 1)..6 {
                    graph.set_tau(i, j, taus[i * 6 + j] * factor);
                    graph.set_eta(i, j, etas[i * 6 + j]);
                }
            }
            graph
        };
        let state = AntState {
            current_feature: current,
            visited: AttributeSubset::from_indices([current]),
            unvisited: (0..6).filter(|&j| j != current).collect(),
        };
        let base = ant_transition_probabilities(&build(1.0), &state).unwrap();
        let scaled = ant_transition_probabilities(&build(scale), &state).unwrap();
        for (p, q) in base.iter().zip(&scaled) {
            prop_assert!((p - q).abs() < 1e-9);
        }
        prop_assert!((base.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn decode_round_trips_through_itself(
        position in prop::collection::vec(1.0..9.0f64, 1..=8),
        n in 1..8usize,
    ) {
        let subset = decode_position(&position, n).unwrap();
        prop_assert!(subset.iter().all(|a| a < n));
        prop_assert!(!subset.is_empty());
        let reencoded: Vec<f64> = subset.iter().map(|a| a as f64 + 1.0).collect();
        let again = decode_position(&reencoded, n).unwrap();
        prop_assert_eq!(subset, again);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn genetic_search_invariants(table in arb_table(3..=8, 2..=6, 2..=2), seed in 0..1000u64) {
        let cfg = GaConfig { population_size: 10, generations: 10, ..GaConfig::default() };
        let outcome = gen_rsar(&table, &cfg, seed).unwrap();
        let gamma_c = dependency(&table, &table.all_attrs()).unwrap();
        let gamma_r = dependency(&table, &outcome.subset).unwrap();
        prop_assert_eq!(outcome.feasible, gamma_r == gamma_c);
        assert_monotone(&outcome.trace);
        assert_same(&outcome, &gen_rsar(&table, &cfg, seed).unwrap());
    }

    #[test]
    fn ant_search_invariants(table in arb_table(3..=8, 2..=6, 2..=2), seed in 0..1000u64) {
        let cfg = AntConfig { iterations: 5, ..AntConfig::default() };
        let outcome = ant_rsar(&table, &cfg, seed).unwrap();
        assert_reduct(&table, &outcome);
        assert_monotone(&outcome.trace);
        assert_same(&outcome, &ant_rsar(&table, &cfg, seed).unwrap());
    }

    #[test]
    fn particle_search_invariants(table in arb_table(3..=8, 2..=6, 2..=2), seed in 0..1000u64) {
        let cfg = PsoConfig { swarm_size: 8, iterations: 10, ..PsoConfig::default() };
        let outcome = pso_rsar(&table, &cfg, seed).unwrap();
        let gamma_c = dependency(&table, &table.all_attrs()).unwrap();
        let gamma_r = dependency(&table, &outcome.subset).unwrap();
        prop_assert_eq!(outcome.feasible, gamma_r == gamma_c);
        assert_monotone(&outcome.trace);
        assert_same(&outcome, &pso_rsar(&table, &cfg, seed).unwrap());
    }

    #[test]
    fn bee_search_invariants(table in arb_table(3..=8, 2..=6, 2..=2), seed in 0..1000u64) {
        let cfg = BeeConfig { max_cycles: 20, ..BeeConfig::for_table(&table) };
        let outcome = bee_rsar(&table, &cfg, seed).unwrap();
        let gamma_c = dependency(&table, &table.all_attrs()).unwrap();
        let gamma_r = dependency(&table, &outcome.subset).unwrap();
        prop_assert_eq!(outcome.feasible, gamma_r == gamma_c);
        assert_monotone(&outcome.trace);
        assert_same(&outcome, &bee_rsar(&table, &cfg, seed).unwrap());
    }
}
