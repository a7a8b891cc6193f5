use thiserror::Error;

/// Errors raised by table construction and reduct computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attribute index {index} out of range ({num_attrs} condition attributes)")]
    AttributeOutOfRange { index: usize, num_attrs: usize },

    #[error("object index {index} out of range ({num_objects} objects)")]
    ObjectOutOfRange { index: usize, num_objects: usize },

    #[error("row {row} has {actual} values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        actual: usize,
    },

    #[error("decision column has {actual} values, expected {expected}")]
    DecisionLengthMismatch { expected: usize, actual: usize },

    #[error("{count} attribute names given for {expected} condition attributes")]
    NameCountMismatch { count: usize, expected: usize },

    #[error("column {column} codes are not dense: code {code} present but {missing} absent")]
    NonDenseColumn {
        column: String,
        code: u32,
        missing: u32,
    },

    #[error("decision table has no objects")]
    EmptyTable,

    #[error("attribute subset must be non-empty")]
    EmptySubset,

    #[error("position vector must be non-empty")]
    EmptyPosition,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("table has {actual} condition attributes but the search is configured for {expected}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{count} condition attributes exceed the exhaustive-search cap of {cap}")]
    TooManyAttributes { count: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
