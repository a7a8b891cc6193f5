//! Decision tables and the small set types the rough-set operations work on.
//!
//! A [`DecisionTable`] is an integer-coded object-by-attribute matrix plus a
//! decision column. Codes are categorical: two objects are indiscernible on an
//! attribute exactly when their codes are equal. Every column is required to
//! use dense codes `0..cardinality`, which is what the data pipeline produces
//! and what lets the partition refinement run without hashing.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Integer-coded decision table: the universe `U`, condition attributes `C`
/// and decision attribute `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    num_objects: usize,
    num_condition_attrs: usize,
    /// Row-major `num_objects x num_condition_attrs`.
    condition_values: Vec<u32>,
    decision_values: Vec<u32>,
    /// Per condition column: number of distinct codes (codes are dense).
    column_cards: Vec<u32>,
    decision_card: u32,
    attr_names: Vec<String>,
    decision_name: String,
}

impl DecisionTable {
    /// Builds a table from object rows. Every row must have the same number
    /// of condition codes, and each column's codes must be dense in
    /// `0..cardinality`.
    pub fn from_rows(
        attr_names: Vec<String>,
        rows: &[Vec<u32>],
        decision_name: impl Into<String>,
        decision_values: Vec<u32>,
    ) -> Result<Self> {
        let num_objects = rows.len();
        let num_condition_attrs = rows.first().map_or(attr_names.len(), Vec::len);
        if attr_names.len() != num_condition_attrs {
            return Err(Error::NameCountMismatch {
                count: attr_names.len(),
                expected: num_condition_attrs,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != num_condition_attrs {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: num_condition_attrs,
                    actual: row.len(),
                });
            }
        }
        if decision_values.len() != num_objects {
            return Err(Error::DecisionLengthMismatch {
                expected: num_objects,
                actual: decision_values.len(),
            });
        }

        let mut condition_values = Vec::with_capacity(num_objects * num_condition_attrs);
        for row in rows {
            condition_values.extend_from_slice(row);
        }

        let mut column_cards = Vec::with_capacity(num_condition_attrs);
        for a in 0..num_condition_attrs {
            let column = condition_values[a..]
                .iter()
                .step_by(num_condition_attrs.max(1));
            column_cards.push(check_dense(column, &attr_names[a], num_objects)?);
        }
        let decision_name = decision_name.into();
        let decision_card = check_dense(decision_values.iter(), &decision_name, num_objects)?;

        Ok(Self {
            num_objects,
            num_condition_attrs,
            condition_values,
            decision_values,
            column_cards,
            decision_card,
            attr_names,
            decision_name,
        })
    }

    /// Convenience constructor with synthetic names `c0..cN` and decision `d`.
    pub fn from_unnamed_rows(rows: &[Vec<u32>], decision_values: Vec<u32>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        let names = (0..width).map(|i| format!("c{i}")).collect();
        Self::from_rows(names, rows, "d", decision_values)
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn num_condition_attrs(&self) -> usize {
        self.num_condition_attrs
    }

    /// Code of `object` under condition attribute `attr`.
    pub fn value(&self, object: usize, attr: usize) -> u32 {
        self.condition_values[object * self.num_condition_attrs + attr]
    }

    pub fn decision(&self, object: usize) -> u32 {
        self.decision_values[object]
    }

    /// Number of distinct codes in a condition column.
    pub fn column_cardinality(&self, attr: usize) -> u32 {
        self.column_cards[attr]
    }

    /// Number of distinct decision codes.
    pub fn decision_cardinality(&self) -> u32 {
        self.decision_card
    }

    pub fn attr_names(&self) -> &[String] {
        &self.attr_names
    }

    pub fn attr_name(&self, attr: usize) -> &str {
        &self.attr_names[attr]
    }

    pub fn decision_name(&self) -> &str {
        &self.decision_name
    }

    /// The full condition attribute set `C` as a subset.
    pub fn all_attrs(&self) -> AttributeSubset {
        AttributeSubset::from_indices(0..self.num_condition_attrs)
    }

    /// The whole universe `U` as an object set.
    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet::from_indices(0..self.num_objects)
    }

    pub(crate) fn check_attrs(&self, attrs: &AttributeSubset) -> Result<()> {
        match attrs.iter().find(|&a| a >= self.num_condition_attrs) {
            Some(index) => Err(Error::AttributeOutOfRange {
                index,
                num_attrs: self.num_condition_attrs,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_objects(&self, objects: &ObjectSet) -> Result<()> {
        match objects.iter().find(|&x| x >= self.num_objects) {
            Some(index) => Err(Error::ObjectOutOfRange {
                index,
                num_objects: self.num_objects,
            }),
            None => Ok(()),
        }
    }
}

/// Verifies codes are dense in `0..k` and returns `k`.
fn check_dense<'a>(
    column: impl Iterator<Item = &'a u32>,
    name: &str,
    num_objects: usize,
) -> Result<u32> {
    let mut seen = vec![false; num_objects];
    let mut max_code = None::<u32>;
    for &code in column {
        if code as usize >= num_objects {
            // More codes than objects cannot be dense.
            return Err(Error::NonDenseColumn {
                column: name.to_string(),
                code,
                missing: 0,
            });
        }
        seen[code as usize] = true;
        max_code = Some(max_code.map_or(code, |m| m.max(code)));
    }
    let Some(max_code) = max_code else {
        return Ok(0);
    };
    for missing in 0..=max_code {
        if !seen[missing as usize] {
            return Err(Error::NonDenseColumn {
                column: name.to_string(),
                code: max_code,
                missing,
            });
        }
    }
    Ok(max_code + 1)
}

/// A set of condition-attribute indices: a candidate reduct `R`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributeSubset {
    indices: BTreeSet<usize>,
}

impl AttributeSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self {
            indices: indices.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, attr: usize) -> bool {
        self.indices.insert(attr)
    }

    /// A copy of this subset with `attr` added.
    pub fn with(&self, attr: usize) -> Self {
        let mut out = self.clone();
        out.insert(attr);
        out
    }

    pub fn contains(&self, attr: usize) -> bool {
        self.indices.contains(&attr)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.indices.is_subset(&other.indices)
    }
}

impl FromIterator<usize> for AttributeSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

impl fmt::Display for AttributeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A set of object indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObjectSet {
    members: BTreeSet<usize>,
}

impl ObjectSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_indices(members: impl IntoIterator<Item = usize>) -> Self {
        Self {
            members: members.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, object: usize) -> bool {
        self.members.insert(object)
    }

    pub fn contains(&self, object: usize) -> bool {
        self.members.contains(&object)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.members.is_disjoint(&other.members)
    }
}

impl FromIterator<usize> for ObjectSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_indices(iter)
    }
}

/// Disjoint non-empty blocks of object indices covering the universe:
/// the quotient `U/IND(P)`.
///
/// Blocks are kept in canonical form: members ascending within a block,
/// blocks ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Normalizes the given blocks into canonical order. Empty blocks are
    /// rejected by debug assertion; callers never produce them.
    pub(crate) fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Self {
        for block in &mut blocks {
            debug_assert!(!block.is_empty());
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { blocks }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(Vec::as_slice)
    }

    /// The block containing `object`, if any.
    pub fn block_of(&self, object: usize) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&object).is_ok())
            .map(Vec::as_slice)
    }
}

/// Dependency degree as an exact ratio `|POS_P(D)| / |U|`.
///
/// Greedy termination hinges on `gamma_R == gamma_C` holding exactly, so
/// comparisons cross-multiply integers instead of going through floats.
#[derive(Debug, Clone, Copy)]
pub struct Gamma {
    positive: usize,
    universe: usize,
}

impl Gamma {
    pub(crate) fn new(positive: usize, universe: usize) -> Self {
        debug_assert!(universe > 0 && positive <= universe);
        Self { positive, universe }
    }

    /// Size of the positive region.
    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    /// The degree as a real number in `[0, 1]`.
    pub fn value(&self) -> f64 {
        self.positive as f64 / self.universe as f64
    }

    pub fn is_total(&self) -> bool {
        self.positive == self.universe
    }
}

impl PartialEq for Gamma {
    fn eq(&self, other: &Self) -> bool {
        (self.positive as u128) * (other.universe as u128)
            == (other.positive as u128) * (self.universe as u128)
    }
}

impl Eq for Gamma {}

impl PartialOrd for Gamma {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gamma {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = (self.positive as u128) * (other.universe as u128);
        let rhs = (other.positive as u128) * (self.universe as u128);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.positive, self.universe)
    }
}
