//! Shared generators and naive reference implementations for the property
//! suites. The reference code recomputes everything literally (tuple
//! grouping, per-class set algebra, bitmask enumeration) so it shares no
//! machinery with the library under test.

// Each test target compiles this module separately and uses its own subset.
#![allow(dead_code)]

use std::collections::HashMap;

use proptest::prelude::*;
use rsar_core::{AttributeSubset, DecisionTable};

/// Remaps one column to dense codes so arbitrary generated values satisfy
/// the table constructor.
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

pub fn build_table(rows: &[Vec<u32>], decisions: &[u32]) -> DecisionTable {
    let num_attrs = rows.first().map_or(0, Vec::len);
    let mut columns: Vec<Vec<u32>> = (0..num_attrs)
        .map(|a| rows.iter().map(|r| r[a]).collect())
        .collect();
    for col in &mut columns {
        *col = densify(std::mem::take(col));
    }
    let dense_rows: Vec<Vec<u32>> = (0..rows.len())
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    DecisionTable::from_unnamed_rows(&dense_rows, densify(decisions.to_vec())).unwrap()
}

/// Random table with the given ranges of objects, attributes and decision
/// classes; condition values are drawn from at most three codes.
pub fn arb_table(
    objects: std::ops::RangeInclusive<usize>,
    attrs: std::ops::RangeInclusive<usize>,
    classes: std::ops::RangeInclusive<u32>,
) -> impl Strategy<Value = DecisionTable> {
    (objects, attrs, classes).prop_flat_map(|(n_obj, n_attr, n_class)| {
        let row = prop::collection::vec(0..3u32, n_attr);
        (
            prop::collection::vec(row, n_obj),
            prop::collection::vec(0..n_class, n_obj),
        )
            .prop_map(|(rows, decisions)| build_table(&rows, &decisions))
    })
}

/// A table plus a random attribute subset.
pub fn arb_table_and_subset() -> impl Strategy<Value = (DecisionTable, AttributeSubset)> {
    arb_table(2..=10, 1..=6, 2..=3).prop_flat_map(|table| {
        let n = table.num_condition_attrs();
        prop::collection::vec(any::<bool>(), n)
            .prop_map(move |mask| (table.clone(), mask_to_subset(&mask)))
    })
}

/// A table plus subsets P ⊆ Q.
pub fn arb_table_and_chain(
) -> impl Strategy<Value = (DecisionTable, AttributeSubset, AttributeSubset)> {
    arb_table(2..=10, 1..=6, 2..=3).prop_flat_map(|table| {
        let n = table.num_condition_attrs();
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(q, sub)| {
                let inner: Vec<bool> = q.iter().zip(&sub).map(|(&a, &b)| a && b).collect();
                (table.clone(), mask_to_subset(&inner), mask_to_subset(&q))
            })
    })
}

pub fn mask_to_subset(mask: &[bool]) -> AttributeSubset {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// Equivalence classes by literal tuple grouping, in the same canonical
/// order the library uses: blocks sorted internally, then by first member.
pub fn naive_blocks(table: &DecisionTable, attrs: &AttributeSubset) -> Vec<Vec<usize>> {
    let mut groups: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for obj in 0..table.num_objects() {
        let key: Vec<u32> = attrs.iter().map(|a| table.value(obj, a)).collect();
        groups.entry(key).or_default().push(obj);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    for block in &mut blocks {
        block.sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

/// Positive-region size by checking every block for decision purity.
pub fn naive_positive_count(table: &DecisionTable, attrs: &AttributeSubset) -> usize {
    naive_blocks(table, attrs)
        .iter()
        .filter(|block| {
            let first = table.decision(block[0]);
            block.iter().all(|&o| table.decision(o) == first)
        })
        .map(Vec::len)
        .sum()
}

/// Conditional decision entropy computed straight from the block/class
/// count definition.
pub fn naive_entropy(table: &DecisionTable, attrs: &AttributeSubset) -> f64 {
    let n = table.num_objects() as f64;
    let mut total = 0.0;
    for block in naive_blocks(table, attrs) {
        let mut class_counts: HashMap<u32, usize> = HashMap::new();
        for &obj in &block {
            *class_counts.entry(table.decision(obj)).or_insert(0) += 1;
        }
        let block_len = block.len() as f64;
        for &count in class_counts.values() {
            let p = count as f64 / block_len;
            total -= (block_len / n) * p * p.log2();
        }
    }
    total
}

/// Minimal reduct by scanning every bitmask ordered by (cardinality, lex).
/// Independent of the library's combination enumerator.
pub fn min_reduct_by_bitmask(table: &DecisionTable) -> AttributeSubset {
    let n = table.num_condition_attrs();
    assert!(n <= 16, "bitmask oracle is for small tables");
    let full_pos = naive_positive_count(table, &table.all_attrs());
    let mut candidates: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&a| mask >> a & 1 == 1).collect())
        .collect();
    candidates.sort();
    candidates.sort_by_key(Vec::len);
    for indices in candidates {
        let subset = AttributeSubset::from_indices(indices.iter().copied());
        if naive_positive_count(table, &subset) == full_pos {
            return subset;
        }
    }
    unreachable!("the full attribute set always matches itself");
}
