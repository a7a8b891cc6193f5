//! Rough-set primitives: indiscernibility partitions, approximations,
//! regions, dependency degree and conditional entropy.
//!
//! All of them reduce to one pass of partition refinement. Starting from the
//! single-block partition, each attribute splits every block by its codes;
//! because codes are dense (a [`DecisionTable`] invariant) the split is a
//! counting pass, no hashing. Block ids are assigned in order of first
//! appearance, so the result is deterministic and blocks come out ordered by
//! their smallest member.

use crate::error::{Error, Result};
use crate::table::{AttributeSubset, DecisionTable, Gamma, ObjectSet, Partition};

/// Positive, negative and boundary regions of the decision attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions {
    pub positive: ObjectSet,
    pub negative: ObjectSet,
    pub boundary: ObjectSet,
}

/// Per-object block ids of `U/IND(attrs)` plus the block count.
///
/// Ids are dense in `0..num_blocks` and assigned by first appearance.
fn block_ids(table: &DecisionTable, attrs: impl Iterator<Item = usize>) -> (Vec<u32>, usize) {
    let n = table.num_objects();
    if n == 0 {
        return (Vec::new(), 0);
    }
    let mut ids = vec![0u32; n];
    let mut num_blocks = 1usize;
    for a in attrs {
        let card = table.column_cardinality(a) as usize;
        if card <= 1 {
            continue;
        }
        // remap[old_id * card + code] -> new dense id, u32::MAX = unseen.
        let mut remap = vec![u32::MAX; num_blocks * card];
        let mut next = 0u32;
        for (o, id) in ids.iter_mut().enumerate() {
            let key = *id as usize * card + table.value(o, a) as usize;
            if remap[key] == u32::MAX {
                remap[key] = next;
                next += 1;
            }
            *id = remap[key];
        }
        num_blocks = next as usize;
        if num_blocks == n {
            break;
        }
    }
    (ids, num_blocks)
}

fn ids_to_partition(ids: &[u32], num_blocks: usize) -> Partition {
    let mut blocks = vec![Vec::new(); num_blocks];
    for (o, &id) in ids.iter().enumerate() {
        blocks[id as usize].push(o);
    }
    Partition::from_blocks(blocks)
}

/// The quotient `U/IND(attrs)`: objects share a block iff they agree on every
/// attribute in `attrs`. With empty `attrs` everything is indiscernible and
/// the universe is one block.
pub fn partition(table: &DecisionTable, attrs: &AttributeSubset) -> Result<Partition> {
    table.check_attrs(attrs)?;
    let (ids, num_blocks) = block_ids(table, attrs.iter());
    Ok(ids_to_partition(&ids, num_blocks))
}

/// Objects grouped by decision code: the decision classes `U/D`.
pub fn decision_partition(table: &DecisionTable) -> Partition {
    let n = table.num_objects();
    let mut blocks = vec![Vec::new(); table.decision_cardinality() as usize];
    for o in 0..n {
        blocks[table.decision(o) as usize].push(o);
    }
    Partition::from_blocks(blocks)
}

/// Union of the `attrs`-blocks wholly contained in `target`.
pub fn lower_approx(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    target: &ObjectSet,
) -> Result<ObjectSet> {
    table.check_attrs(attrs)?;
    table.check_objects(target)?;
    let (ids, num_blocks) = block_ids(table, attrs.iter());
    let mut inside = vec![true; num_blocks];
    for (o, &id) in ids.iter().enumerate() {
        if !target.contains(o) {
            inside[id as usize] = false;
        }
    }
    Ok(ids
        .iter()
        .enumerate()
        .filter(|&(_, &id)| inside[id as usize])
        .map(|(o, _)| o)
        .collect())
}

/// Union of the `attrs`-blocks that intersect `target`.
pub fn upper_approx(
    table: &DecisionTable,
    attrs: &AttributeSubset,
    target: &ObjectSet,
) -> Result<ObjectSet> {
    table.check_attrs(attrs)?;
    table.check_objects(target)?;
    let (ids, num_blocks) = block_ids(table, attrs.iter());
    let mut touched = vec![false; num_blocks];
    for (o, &id) in ids.iter().enumerate() {
        if target.contains(o) {
            touched[id as usize] = true;
        }
    }
    Ok(ids
        .iter()
        .enumerate()
        .filter(|&(_, &id)| touched[id as usize])
        .map(|(o, _)| o)
        .collect())
}

/// Classifies every object as positively, negatively or boundary-region
/// relative to the decision classes.
///
/// The positive region is the union of lower approximations of the decision
/// classes, the boundary is what upper approximations add beyond that, and
/// the negative region is the complement of all upper approximations. The
/// decision classes cover the universe, so the negative region is always
/// empty; it is still computed as a complement rather than asserted.
pub fn regions(table: &DecisionTable, attrs: &AttributeSubset) -> Result<Regions> {
    table.check_attrs(attrs)?;
    let (ids, num_blocks) = block_ids(table, attrs.iter());
    let purity = block_purity(table, &ids, num_blocks);

    let mut positive = ObjectSet::empty();
    let mut boundary = ObjectSet::empty();
    let mut negative = ObjectSet::empty();
    for (o, &id) in ids.iter().enumerate() {
        match purity[id as usize] {
            BlockPurity::Pure(_) => positive.insert(o),
            BlockPurity::Mixed => boundary.insert(o),
        };
    }
    let covered = positive.union(&boundary);
    for o in 0..table.num_objects() {
        if !covered.contains(o) {
            negative.insert(o);
        }
    }
    Ok(Regions {
        positive,
        negative,
        boundary,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum BlockPurity {
    /// Every member has this decision code.
    Pure(u32),
    Mixed,
}

fn block_purity(table: &DecisionTable, ids: &[u32], num_blocks: usize) -> Vec<BlockPurity> {
    // Codes are dense in a table that fits in memory, so u32::MAX is free to
    // mean "no member seen yet".
    let mut first = vec![u32::MAX; num_blocks];
    let mut purity = vec![BlockPurity::Pure(u32::MAX); num_blocks];
    for (o, &id) in ids.iter().enumerate() {
        let b = id as usize;
        let d = table.decision(o);
        if first[b] == u32::MAX {
            first[b] = d;
            purity[b] = BlockPurity::Pure(d);
        } else if first[b] != d {
            purity[b] = BlockPurity::Mixed;
        }
    }
    purity
}

fn positive_count(table: &DecisionTable, ids: &[u32], num_blocks: usize) -> usize {
    let purity = block_purity(table, ids, num_blocks);
    ids.iter()
        .filter(|&&id| matches!(purity[id as usize], BlockPurity::Pure(_)))
        .count()
}

/// Dependency degree of the decision on `attrs`: the fraction of objects in
/// the positive region. Exact as a ratio of counts; it is 1 iff every
/// `attrs`-block is decision-pure.
pub fn dependency(table: &DecisionTable, attrs: &AttributeSubset) -> Result<Gamma> {
    table.check_attrs(attrs)?;
    if table.num_objects() == 0 {
        return Err(Error::EmptyTable);
    }
    let (ids, num_blocks) = block_ids(table, attrs.iter());
    Ok(Gamma::new(
        positive_count(table, &ids, num_blocks),
        table.num_objects(),
    ))
}

/// Conditional entropy of the decision given `attrs`, in bits:
/// `E = -sum_j p(B_j) sum_i p(d=i | B_j) log2 p(d=i | B_j)` with
/// `0 * log2(0) = 0`. Empty `attrs` means the single-block partition, i.e.
/// the plain entropy of the decision distribution.
pub fn entropy(table: &DecisionTable, attrs: &AttributeSubset) -> Result<f64> {
    table.check_attrs(attrs)?;
    let n = table.num_objects();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let (ids, num_blocks) = block_ids(table, attrs.iter());
    let dcard = table.decision_cardinality() as usize;
    let mut counts = vec![0usize; num_blocks * dcard];
    let mut sizes = vec![0usize; num_blocks];
    for (o, &id) in ids.iter().enumerate() {
        counts[id as usize * dcard + table.decision(o) as usize] += 1;
        sizes[id as usize] += 1;
    }
    let mut e = 0.0;
    for b in 0..num_blocks {
        let size = sizes[b] as f64;
        let mut h = 0.0;
        for i in 0..dcard {
            let c = counts[b * dcard + i];
            if c > 0 {
                let p = c as f64 / size;
                h -= p * p.log2();
            }
        }
        e += (size / n as f64) * h;
    }
    Ok(e)
}

/// Counts measure evaluations on behalf of the reduct searches, so every
/// algorithm reports comparable work. One call to [`Evaluator::gamma`] or
/// [`Evaluator::entropy`] is one evaluation.
pub(crate) struct Evaluator<'a> {
    table: &'a DecisionTable,
    count: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(table: &'a DecisionTable) -> Self {
        Self { table, count: 0 }
    }

    pub fn gamma(&mut self, attrs: &AttributeSubset) -> Result<Gamma> {
        self.count += 1;
        dependency(self.table, attrs)
    }

    /// Same measure over a plain index slice, for hot loops that track
    /// candidate subsets as vectors or bit masks.
    pub fn gamma_indices(&mut self, attrs: &[usize]) -> Result<Gamma> {
        self.count += 1;
        if let Some(&index) = attrs
            .iter()
            .find(|&&a| a >= self.table.num_condition_attrs())
        {
            return Err(Error::AttributeOutOfRange {
                index,
                num_attrs: self.table.num_condition_attrs(),
            });
        }
        if self.table.num_objects() == 0 {
            return Err(Error::EmptyTable);
        }
        let (ids, num_blocks) = block_ids(self.table, attrs.iter().copied());
        Ok(Gamma::new(
            positive_count(self.table, &ids, num_blocks),
            self.table.num_objects(),
        ))
    }

    pub fn entropy(&mut self, attrs: &AttributeSubset) -> Result<f64> {
        self.count += 1;
        entropy(self.table, attrs)
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}
