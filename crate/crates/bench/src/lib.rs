//! Shared fixtures for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsar_core::DecisionTable;

fn densify(values: Vec<u32>) -> Vec<u32> {
    let mut seen: Vec<u32> = Vec::new();
    values
        .into_iter()
        .map(|v| match seen.iter().position(|&s| s == v) {
            Some(i) => i as u32,
            None => {
                seen.push(v);
                (seen.len() - 1) as u32
            }
        })
        .collect()
}

/// Builds a seeded random decision table. Condition codes are uniform in
/// `0..values`; the decision is a parity of two columns with 10% label noise
/// so reducers see structure rather than pure noise.
pub fn synthetic_table(objects: usize, attrs: usize, values: u32, seed: u64) -> DecisionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Vec<u32>> = (0..objects)
        .map(|_| (0..attrs).map(|_| rng.gen_range(0..values)).collect())
        .collect();
    let decisions: Vec<u32> = raw
        .iter()
        .map(|r| {
            let signal = (r[0] + r[attrs / 2]) % 2;
            if rng.gen_bool(0.1) {
                1 - signal
            } else {
                signal
            }
        })
        .collect();
    let columns: Vec<Vec<u32>> = (0..attrs)
        .map(|a| densify(raw.iter().map(|r| r[a]).collect()))
        .collect();
    let rows: Vec<Vec<u32>> = (0..objects)
        .map(|o| columns.iter().map(|c| c[o]).collect())
        .collect();
    DecisionTable::from_unnamed_rows(&rows, densify(decisions)).expect("valid synthetic table")
}
