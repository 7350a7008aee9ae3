use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the crate, from bad numeric input to
/// malformed files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point has no coordinates")]
    EmptyPoint,

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("price series needs at least 2 entries, got {len}")]
    TooFewPrices { len: usize },

    #[error("non-positive price {value} for series {label:?} at row {row}")]
    NonPositivePrice {
        label: String,
        row: usize,
        value: f64,
    },

    #[error("return series {label:?} is empty")]
    EmptySeries { label: String },

    #[error("series lengths differ: {left} vs {right}")]
    SeriesLengthMismatch { left: usize, right: usize },

    #[error("series {label:?} has zero variance")]
    ZeroVariance { label: String },

    #[error("correlation {rho} outside [-1, 1]")]
    CorrelationOutOfRange { rho: f64 },

    #[error("need at least one item to build a distance matrix")]
    NoItems,

    #[error("label count {labels} does not match item count {items}")]
    LabelCountMismatch { labels: usize, items: usize },

    #[error("distance matrix is not square: {len} entries for {n} labels")]
    NonSquareMatrix { len: usize, n: usize },

    #[error("distance matrix entry ({i},{j}) = {value} is invalid: {reason}")]
    BadMatrixEntry {
        i: usize,
        j: usize,
        value: f64,
        reason: &'static str,
    },

    #[error("index set is empty")]
    EmptyIndexSet,

    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("cluster id {id} is not active")]
    UnknownCluster { id: usize },

    #[error("cannot merge cluster {id} with itself")]
    SelfMerge { id: usize },

    #[error("cannot cut {n} leaves into {k} clusters")]
    BadCutCount { k: usize, n: usize },

    #[error("partition is empty")]
    EmptyPartition,

    #[error("cluster labels must be contiguous 1..=k; saw {label} with k = {k}")]
    BadPartitionLabel { label: usize, k: usize },

    #[error("invalid dataset parameters: {reason}")]
    BadDatasetParams { reason: String },

    #[error("malformed {what} at {location}: {detail}")]
    MalformedInput {
        what: &'static str,
        location: String,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
