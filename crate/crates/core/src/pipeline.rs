//! Dataset ingestion: delimited-text loading, missing-value policy,
//! discretization and dense encoding into a [`DecisionTable`].
//!
//! Binning strategies apply to numeric columns (every cell parses as a
//! finite real). Columns that do not parse are dense-encoded by first
//! appearance, as are decision columns, which are never binned. Forcing a
//! binning override onto a non-numeric column is an error; the default
//! strategy silently falls back to encoding instead, so one config works
//! for mixed categorical/numeric files.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;
use std::str::FromStr;

use csv::{ReaderBuilder, Trim, WriterBuilder};

use crate::table::DecisionTable;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("io: {0}")]
    Io(#[from] io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}: no data rows")]
    Empty { path: String },

    #[error("line {line}: row has {actual} cells, expected {expected}")]
    RaggedRow {
        line: u64,
        expected: usize,
        actual: usize,
    },

    #[error("missing values in rows {}", format_rows(.rows))]
    MissingValues { rows: Vec<u64> },

    #[error("column {column:?} is not numeric (cell {cell:?}) but a binning override demands it")]
    NotNumeric { column: String, cell: String },

    #[error("column index {index} out of range ({count} columns)")]
    ColumnOutOfRange { index: usize, count: usize },

    #[error("invalid discretization spec: {0}")]
    BadSpec(String),

    #[error(transparent)]
    Table(#[from] crate::error::Error),
}

fn format_rows(rows: &[u64]) -> String {
    let shown: Vec<String> = rows.iter().take(20).map(u64::to_string).collect();
    let mut out = shown.join(", ");
    if rows.len() > 20 {
        out.push_str(&format!(" and {} more", rows.len() - 20));
    }
    out
}

/// A delimited file in memory: string cells, `None` where the missing
/// marker appeared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDataset {
    pub column_names: Vec<String>,
    cells: Vec<Vec<Option<String>>>,
    /// 1-based source line per row (synthetic row numbers for in-memory
    /// datasets); kept so errors can name file lines after filtering.
    lines: Vec<u64>,
    decision_column: usize,
}

impl RawDataset {
    /// Builds a dataset from in-memory cells; the decision column defaults
    /// to the last one.
    pub fn from_cells(
        column_names: Vec<String>,
        cells: Vec<Vec<Option<String>>>,
    ) -> Result<Self, PipelineError> {
        let expected = column_names.len();
        for (i, row) in cells.iter().enumerate() {
            if row.len() != expected {
                return Err(PipelineError::RaggedRow {
                    line: i as u64 + 1,
                    expected,
                    actual: row.len(),
                });
            }
        }
        if expected == 0 || cells.is_empty() {
            return Err(PipelineError::Empty {
                path: "<memory>".into(),
            });
        }
        let lines = (1..=cells.len() as u64).collect();
        Ok(Self {
            decision_column: column_names.len() - 1,
            column_names,
            cells,
            lines,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.cells.len()
    }

    pub fn num_columns(&self) -> usize {
        self.column_names.len()
    }

    pub fn decision_column(&self) -> usize {
        self.decision_column
    }

    pub fn set_decision_column(&mut self, index: usize) -> Result<(), PipelineError> {
        if index >= self.num_columns() {
            return Err(PipelineError::ColumnOutOfRange {
                index,
                count: self.num_columns(),
            });
        }
        self.decision_column = index;
        Ok(())
    }

    /// `None` when the cell held the missing marker.
    pub fn cell(&self, row: usize, column: usize) -> Option<&str> {
        self.cells[row][column].as_deref()
    }

    /// Drops whole columns (for id fields and the like), keeping the
    /// decision column pointed at the same data.
    pub fn remove_columns(&mut self, columns: &[usize]) -> Result<(), PipelineError> {
        let count = self.num_columns();
        for &c in columns {
            if c >= count {
                return Err(PipelineError::ColumnOutOfRange { index: c, count });
            }
            if c == self.decision_column {
                return Err(PipelineError::BadSpec(
                    "cannot remove the decision column".into(),
                ));
            }
        }
        let keep: Vec<bool> = (0..count).map(|c| !columns.contains(&c)).collect();
        self.decision_column = keep[..self.decision_column]
            .iter()
            .filter(|&&k| k)
            .count();
        retain_by_index(&mut self.column_names, &keep);
        for row in &mut self.cells {
            retain_by_index(row, &keep);
        }
        Ok(())
    }
}

fn retain_by_index<T>(items: &mut Vec<T>, keep: &[bool]) {
    let mut i = 0;
    items.retain(|_| {
        let k = keep[i];
        i += 1;
        k
    });
}

/// Reads a delimited text file. Rows whose cell count differs from the
/// first row (or header) fail with the offending line number; cells equal
/// to `missing_marker` load as missing. Without a header, columns are
/// named `c0..cN`.
pub fn load_delimited(
    path: impl AsRef<Path>,
    delimiter: u8,
    has_header: bool,
    missing_marker: &str,
) -> Result<RawDataset, PipelineError> {
    let path = path.as_ref();
    let mut reader = ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_path(path)?;

    let mut column_names: Option<Vec<String>> = None;
    let mut cells = Vec::new();
    let mut lines = Vec::new();
    let mut expected: Option<usize> = None;

    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            // A blank line parses as one empty field; skip it.
            continue;
        }
        if has_header && column_names.is_none() {
            column_names = Some(record.iter().map(str::to_string).collect());
            expected = Some(record.len());
            continue;
        }
        if let Some(expected) = expected {
            if record.len() != expected {
                return Err(PipelineError::RaggedRow {
                    line,
                    expected,
                    actual: record.len(),
                });
            }
        } else {
            expected = Some(record.len());
        }
        cells.push(
            record
                .iter()
                .map(|cell| (cell != missing_marker).then(|| cell.to_string()))
                .collect(),
        );
        lines.push(line);
    }

    if cells.is_empty() {
        return Err(PipelineError::Empty {
            path: path.display().to_string(),
        });
    }
    let column_names = column_names
        .unwrap_or_else(|| (0..expected.unwrap_or(0)).map(|i| format!("c{i}")).collect());
    let mut raw = RawDataset::from_cells(column_names, cells)?;
    raw.lines = lines;
    Ok(raw)
}

/// What to do with rows containing missing cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Remove every row with at least one missing cell.
    #[default]
    DropRows,
    /// Fail if any cell is missing.
    Reject,
}

impl FromStr for MissingPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drop_rows" => Ok(Self::DropRows),
            "reject" => Ok(Self::Reject),
            other => Err(format!(
                "unknown missing policy {other:?} (expected drop_rows or reject)"
            )),
        }
    }
}

/// Applies `policy`, returning the surviving dataset and how many rows
/// were dropped.
pub fn apply_missing_policy(
    raw: RawDataset,
    policy: MissingPolicy,
) -> Result<(RawDataset, usize), PipelineError> {
    let affected: Vec<usize> = (0..raw.num_rows())
        .filter(|&r| raw.cells[r].iter().any(Option::is_none))
        .collect();
    match policy {
        MissingPolicy::Reject if !affected.is_empty() => Err(PipelineError::MissingValues {
            rows: affected.iter().map(|&r| raw.lines[r]).collect(),
        }),
        MissingPolicy::Reject => Ok((raw, 0)),
        MissingPolicy::DropRows => {
            let dropped = affected.len();
            let mut raw = raw;
            let keep: Vec<bool> = (0..raw.num_rows())
                .map(|r| raw.cells[r].iter().all(Option::is_some))
                .collect();
            retain_by_index(&mut raw.cells, &keep);
            retain_by_index(&mut raw.lines, &keep);
            Ok((raw, dropped))
        }
    }
}

/// How to turn one column's values into categorical codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnBinning {
    /// Dense-encode distinct values; no binning.
    None,
    /// Split `[min, max]` into equal intervals, the last right-inclusive.
    EqualWidth(usize),
    /// Split at quantile cut points so bins hold similar counts.
    EqualFrequency(usize),
}

impl ColumnBinning {
    pub fn validate(&self) -> Result<(), PipelineError> {
        match self {
            ColumnBinning::None => Ok(()),
            ColumnBinning::EqualWidth(bins) | ColumnBinning::EqualFrequency(bins) if *bins >= 2 => {
                Ok(())
            }
            _ => Err(PipelineError::BadSpec("bins must be at least 2".into())),
        }
    }
}

impl FromStr for ColumnBinning {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "none" {
            return Ok(Self::None);
        }
        let (name, bins) = s
            .split_once(':')
            .ok_or_else(|| format!("expected none, equal_width:K or equal_frequency:K, got {s:?}"))?;
        let bins: usize = bins
            .parse()
            .map_err(|_| format!("bin count {bins:?} is not a number"))?;
        match name {
            "equal_width" => Ok(Self::EqualWidth(bins)),
            "equal_frequency" => Ok(Self::EqualFrequency(bins)),
            other => Err(format!("unknown binning strategy {other:?}")),
        }
    }
}

/// Default binning plus per-column overrides (indices refer to the dataset
/// as loaded, after any column removal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretizationSpec {
    pub default: ColumnBinning,
    pub overrides: BTreeMap<usize, ColumnBinning>,
}

impl Default for DiscretizationSpec {
    fn default() -> Self {
        Self {
            default: ColumnBinning::EqualFrequency(3),
            overrides: BTreeMap::new(),
        }
    }
}

impl DiscretizationSpec {
    pub fn uniform(default: ColumnBinning) -> Self {
        Self {
            default,
            overrides: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        self.default.validate()?;
        for binning in self.overrides.values() {
            binning.validate()?;
        }
        Ok(())
    }
}

/// Encodes every column to dense categorical codes, binning numeric
/// condition columns per `spec`, and assembles the [`DecisionTable`].
/// Requires all missing values to have been handled first.
pub fn discretize_and_encode(
    raw: &RawDataset,
    spec: &DiscretizationSpec,
) -> Result<DecisionTable, PipelineError> {
    spec.validate()?;
    if raw.num_rows() == 0 {
        return Err(PipelineError::Empty {
            path: "<filtered>".into(),
        });
    }
    let missing: Vec<u64> = (0..raw.num_rows())
        .filter(|&r| raw.cells[r].iter().any(Option::is_none))
        .map(|r| raw.lines[r])
        .collect();
    if !missing.is_empty() {
        return Err(PipelineError::MissingValues { rows: missing });
    }

    let mut encoded: Vec<Vec<u32>> = Vec::with_capacity(raw.num_columns());
    for col in 0..raw.num_columns() {
        let values: Vec<&str> = (0..raw.num_rows())
            .map(|r| raw.cells[r][col].as_deref().expect("missing cells handled"))
            .collect();
        let binning = if col == raw.decision_column {
            // The decision is a class label whatever it looks like.
            ColumnBinning::None
        } else {
            *spec.overrides.get(&col).unwrap_or(&spec.default)
        };
        let forced = spec.overrides.contains_key(&col);
        encoded.push(encode_column(
            &raw.column_names[col],
            &values,
            binning,
            forced,
        )?);
    }

    let decision = encoded.remove(raw.decision_column);
    let mut attr_names = raw.column_names.clone();
    let decision_name = attr_names.remove(raw.decision_column);
    let rows: Vec<Vec<u32>> = (0..raw.num_rows())
        .map(|r| encoded.iter().map(|col| col[r]).collect())
        .collect();
    Ok(DecisionTable::from_rows(
        attr_names, &rows, decision_name, decision,
    )?)
}

fn encode_column(
    name: &str,
    values: &[&str],
    binning: ColumnBinning,
    forced: bool,
) -> Result<Vec<u32>, PipelineError> {
    let numeric: Option<Vec<f64>> = match binning {
        ColumnBinning::None => None,
        _ => parse_numeric(values),
    };
    match (binning, numeric) {
        (ColumnBinning::None, _) | (_, None) if forced && binning != ColumnBinning::None => {
            let cell = values
                .iter()
                .find(|v| parse_cell(v).is_none())
                .unwrap_or(&"")
                .to_string();
            Err(PipelineError::NotNumeric {
                column: name.to_string(),
                cell,
            })
        }
        (ColumnBinning::None, _) | (_, None) => Ok(dense_encode(values)),
        (ColumnBinning::EqualWidth(bins), Some(nums)) => Ok(equal_width(name, &nums, bins)),
        (ColumnBinning::EqualFrequency(bins), Some(nums)) => Ok(equal_frequency(name, &nums, bins)),
    }
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_numeric(values: &[&str]) -> Option<Vec<f64>> {
    values.iter().map(|v| parse_cell(v)).collect()
}

/// Codes by order of first appearance, so the mapping between distinct
/// values and codes is a bijection.
fn dense_encode(values: &[&str]) -> Vec<u32> {
    let mut seen: Vec<&str> = Vec::new();
    values
        .iter()
        .map(|v| match seen.iter().position(|s| s == v) {
            Some(code) => code as u32,
            None => {
                seen.push(v);
                (seen.len() - 1) as u32
            }
        })
        .collect()
}

/// Renumbers arbitrary bin ids into dense codes by first appearance.
fn densify(codes: Vec<usize>) -> Vec<u32> {
    let mut seen: Vec<usize> = Vec::new();
    codes
        .into_iter()
        .map(|c| match seen.iter().position(|&s| s == c) {
            Some(code) => code as u32,
            None => {
                seen.push(c);
                (seen.len() - 1) as u32
            }
        })
        .collect()
}

fn equal_width(name: &str, values: &[f64], bins: usize) -> Vec<u32> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (max - min) / bins as f64;
    if width == 0.0 {
        log::warn!("column {name:?} is constant; encoding as a single code");
        return vec![0; values.len()];
    }
    let codes = values
        .iter()
        .map(|&x| (((x - min) / width).floor() as usize).min(bins - 1))
        .collect();
    densify(codes)
}

fn equal_frequency(name: &str, values: &[f64], bins: usize) -> Vec<u32> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    let mut edges: Vec<f64> = (1..bins)
        .map(|q| {
            let h = q as f64 * (n - 1) as f64 / bins as f64;
            let lo = h.floor() as usize;
            let frac = h - lo as f64;
            if lo + 1 < n {
                sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
            } else {
                sorted[lo]
            }
        })
        .collect();
    edges.dedup();
    // Bins are right-closed: a value equal to a cut point stays below it.
    let codes: Vec<usize> = values
        .iter()
        .map(|&x| edges.iter().filter(|&&e| e < x).count())
        .collect();
    if codes.iter().all(|&c| c == codes[0]) {
        log::warn!("column {name:?} has indistinguishable quantiles; encoding as a single code");
        return vec![0; values.len()];
    }
    densify(codes)
}

/// Dumps the encoded table as delimited integers with a header, for
/// auditing what the pipeline produced.
pub fn write_encoded(
    table: &DecisionTable,
    writer: impl io::Write,
    delimiter: u8,
) -> Result<(), PipelineError> {
    let mut out = WriterBuilder::new().delimiter(delimiter).from_writer(writer);
    let header: Vec<&str> = table
        .attr_names()
        .iter()
        .map(String::as_str)
        .chain([table.decision_name()])
        .collect();
    out.write_record(&header)?;
    for obj in 0..table.num_objects() {
        let row: Vec<String> = (0..table.num_condition_attrs())
            .map(|a| table.value(obj, a).to_string())
            .chain([table.decision(obj).to_string()])
            .collect();
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}
