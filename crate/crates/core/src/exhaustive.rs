//! Exhaustive minimal-reduct search, the ground truth the other searches are
//! judged against.
//!
//! Subsets are enumerated by increasing cardinality and, within a
//! cardinality, in lexicographic index order; the first subset whose
//! dependency matches the full set's is returned. Stopping at the first hit
//! is what makes the result provably minimal and the tie-break
//! lexicographically smallest, and it prunes every larger subset from
//! consideration.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::outcome::{Algorithm, ReductOutcome};
use crate::rough::Evaluator;
use crate::table::{AttributeSubset, DecisionTable};

/// Above this many condition attributes the enumeration (2^n subsets worst
/// case) is refused rather than attempted.
pub const DEFAULT_ORACLE_CAP: usize = 24;

/// Smallest-cardinality subset with the full attribute set's dependency.
///
/// Errors with [`Error::TooManyAttributes`] when the table has more than
/// `max_attrs_cap` condition attributes.
pub fn exhaustive_min_reduct(table: &DecisionTable, max_attrs_cap: usize) -> Result<ReductOutcome> {
    let start = Instant::now();
    let n = table.num_condition_attrs();
    if n > max_attrs_cap {
        return Err(Error::TooManyAttributes {
            count: n,
            cap: max_attrs_cap,
        });
    }

    let mut eval = Evaluator::new(table);
    let gamma_c = eval.gamma(&table.all_attrs())?;
    let mut trace = Vec::new();
    let mut best_seen = f64::MIN;

    for k in 0..=n {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            let g = eval.gamma_indices(&comb)?;
            best_seen = best_seen.max(g.value());
            if g == gamma_c {
                trace.push(best_seen);
                return Ok(ReductOutcome::new(
                    Algorithm::Oracle,
                    AttributeSubset::from_indices(comb),
                    g,
                    gamma_c,
                    eval.count(),
                    start.elapsed(),
                    None,
                    trace,
                ));
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
        trace.push(best_seen);
    }
    unreachable!("the full attribute set always matches its own dependency")
}

/// Advances `comb` to the next k-combination of `0..n` in lexicographic
/// order; `false` when `comb` was the last one.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - (k - i) {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[Vec<u32>], decision: Vec<u32>) -> DecisionTable {
        DecisionTable::from_unnamed_rows(rows, decision).unwrap()
    }

    #[test]
    fn combination_enumeration_is_lexicographic() {
        let mut comb = vec![0, 1];
        let mut seen = vec![comb.clone()];
        while next_combination(&mut comb, 4) {
            seen.push(comb.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn finds_singleton_reduct_on_t0() {
        let t = table(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]], vec![0, 0, 1, 1]);
        let out = exhaustive_min_reduct(&t, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(out.subset.to_vec(), vec![0]);
        assert_eq!(out.cardinality, 1);
        assert_eq!(out.gamma, 1.0);
    }

    #[test]
    fn needs_both_attributes_on_t1() {
        let t = table(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]], vec![0, 1, 1, 1]);
        let out = exhaustive_min_reduct(&t, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(out.subset.to_vec(), vec![0, 1]);
        assert_eq!(out.cardinality, 2);
    }

    #[test]
    fn constant_decision_yields_empty_reduct() {
        let t = table(&[vec![0], vec![1]], vec![0, 0]);
        let out = exhaustive_min_reduct(&t, DEFAULT_ORACLE_CAP).unwrap();
        assert!(out.subset.is_empty());
        assert_eq!(out.cardinality, 0);
    }

    #[test]
    fn prefers_lexicographically_smallest_among_minimal() {
        // Both {b} and {c} are minimal reducts; {1} must win over {2}.
        let t = table(
            &[vec![0, 0, 0], vec![0, 1, 1], vec![0, 0, 0], vec![0, 1, 1]],
            vec![0, 1, 0, 1],
        );
        let out = exhaustive_min_reduct(&t, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(out.subset.to_vec(), vec![1]);
    }

    #[test]
    fn refuses_tables_over_the_cap() {
        let width = DEFAULT_ORACLE_CAP + 1;
        let rows = vec![vec![0; width], vec![1; width]];
        let t = table(&rows, vec![0, 1]);
        let err = exhaustive_min_reduct(&t, DEFAULT_ORACLE_CAP).unwrap_err();
        assert_eq!(
            err,
            Error::TooManyAttributes {
                count: width,
                cap: DEFAULT_ORACLE_CAP
            }
        );
    }
}
