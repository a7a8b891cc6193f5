//! Greedy forward-selection reduct search.
//!
//! Both searches grow a subset from the empty set, each round adding the
//! candidate attribute that most improves the guiding measure (dependency
//! degree for [`quick_reduct`], conditional entropy for [`ebr`]) until the
//! subset matches the full attribute set's measure. Ties always go to the
//! lowest attribute index so results are reproducible.
//!
//! The textbook greedy rule only adds an attribute on strict improvement,
//! which never terminates on parity-style tables where no single attribute
//! moves the measure at all. When a round stalls like that, the best-scoring
//! candidate is added anyway; the search then always reaches a subset with
//! the full set's dependency, at worst the full set itself.

use std::time::Instant;

use crate::error::Result;
use crate::outcome::{Algorithm, ReductOutcome};
use crate::rough::Evaluator;
use crate::table::{AttributeSubset, DecisionTable, Gamma};

/// Entropy comparisons cannot be exact in floating point; differences at or
/// below this are treated as "no change".
pub const ENTROPY_TOLERANCE: f64 = 1e-12;

/// Greedy forward selection maximizing the dependency degree.
///
/// Returns a subset `R` with `gamma(R) == gamma(C)` exactly. Uses at most
/// `(n^2 + n) / 2` dependency evaluations for `n` condition attributes: one
/// for the full set, at most `n - k` per round `k`, and none for the last
/// remaining attribute (adding it yields the full set, whose dependency is
/// already known).
pub fn quick_reduct(table: &DecisionTable) -> Result<ReductOutcome> {
    let start = Instant::now();
    let mut eval = Evaluator::new(table);
    let n = table.num_condition_attrs();

    let gamma_c = eval.gamma(&table.all_attrs())?;
    // gamma of the empty subset needs no evaluation: it is 1 when the
    // decision is constant (the single block is pure) and 0 otherwise.
    let gamma_empty = if table.decision_cardinality() <= 1 {
        Gamma::new(table.num_objects(), table.num_objects())
    } else {
        Gamma::new(0, table.num_objects())
    };

    let mut subset = AttributeSubset::empty();
    let mut gamma_r = gamma_empty;
    let mut trace = vec![gamma_r.value()];

    while gamma_r < gamma_c {
        let remaining: Vec<usize> = (0..n).filter(|&a| !subset.contains(a)).collect();
        if let [last] = remaining[..] {
            // R plus the last attribute is the full set.
            subset.insert(last);
            gamma_r = gamma_c;
            trace.push(gamma_r.value());
            break;
        }
        let mut best: Option<(usize, Gamma)> = None;
        for &x in &remaining {
            let g = eval.gamma(&subset.with(x))?;
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((x, g));
            }
            if g == gamma_c {
                // Nothing can beat the full set's dependency; the ascending
                // scan makes this the lowest-index maximizer.
                break;
            }
        }
        let (x, g) = best.expect("at least two candidates remain");
        // Stall fallback: add the best candidate even without strict
        // improvement, otherwise parity-style tables loop forever.
        subset.insert(x);
        gamma_r = g;
        trace.push(trace.last().copied().unwrap_or(0.0).max(gamma_r.value()));
    }

    Ok(ReductOutcome::new(
        Algorithm::QuickReduct,
        subset,
        gamma_r,
        gamma_c,
        eval.count(),
        start.elapsed(),
        None,
        trace,
    ))
}

/// Greedy forward selection minimizing conditional entropy.
///
/// Grows `R` by the attribute minimizing `E(R + {x})` until `E(R)` reaches
/// `E(C)` within [`ENTROPY_TOLERANCE`]. The dependency of the result is
/// computed at the end; if the entropy tolerance ever accepted a subset
/// whose dependency still trails the full set's (possible only when two
/// distinct positive regions produce entropies closer than the tolerance),
/// the loop keeps growing until the dependency matches too.
pub fn ebr(table: &DecisionTable) -> Result<ReductOutcome> {
    let start = Instant::now();
    let mut eval = Evaluator::new(table);

    let e_c = eval.entropy(&table.all_attrs())?;
    let mut subset = AttributeSubset::empty();
    let mut e_r = eval.entropy(&subset)?;
    let mut trace = vec![-e_r];

    while e_r > e_c + ENTROPY_TOLERANCE {
        let (x, e) = match best_entropy_candidate(&mut eval, table, &subset, e_c)? {
            Some(best) => best,
            None => break,
        };
        subset.insert(x);
        e_r = e;
        trace.push(trace.last().copied().unwrap_or(f64::MIN).max(-e_r));
    }

    let gamma_c = eval.gamma(&table.all_attrs())?;
    let mut gamma_r = eval.gamma(&subset)?;
    while gamma_r < gamma_c {
        let Some((x, _)) = best_entropy_candidate(&mut eval, table, &subset, e_c)? else {
            break;
        };
        subset.insert(x);
        gamma_r = eval.gamma(&subset)?;
    }

    Ok(ReductOutcome::new(
        Algorithm::Ebr,
        subset,
        gamma_r,
        gamma_c,
        eval.count(),
        start.elapsed(),
        None,
        trace,
    ))
}

/// Lowest-index attribute minimizing `E(subset + {x})`, with the same
/// last-attribute and early-exit shortcuts as the dependency search.
/// `None` when no attribute remains.
fn best_entropy_candidate(
    eval: &mut Evaluator,
    table: &DecisionTable,
    subset: &AttributeSubset,
    e_c: f64,
) -> Result<Option<(usize, f64)>> {
    let n = table.num_condition_attrs();
    let remaining: Vec<usize> = (0..n).filter(|&a| !subset.contains(a)).collect();
    if remaining.is_empty() {
        return Ok(None);
    }
    if let [last] = remaining[..] {
        return Ok(Some((last, e_c)));
    }
    let mut best: Option<(usize, f64)> = None;
    for &x in &remaining {
        let e = eval.entropy(&subset.with(x))?;
        if best.is_none_or(|(_, be)| e < be - ENTROPY_TOLERANCE) {
            best = Some((x, e));
        }
        if e <= e_c + ENTROPY_TOLERANCE {
            break;
        }
    }
    Ok(best)
}
