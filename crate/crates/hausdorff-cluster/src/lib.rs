//! Agglomerative hierarchical clustering over metric distance matrices
//! with three linkage rules: single, complete, and Hausdorff.
//!
//! The Hausdorff linkage scores a candidate merge by the Hausdorff distance
//! between the two clusters as point sets: the farthest any member of one
//! is from its nearest member of the other. Unlike single and complete
//! linkage it admits no pairwise update formula, so the engine maintains
//! per-cluster tables of nearest-member distances instead; and unlike them
//! its merge heights are not monotone. A later merge can be cheaper than an
//! earlier one, and that dip is a real, detectable signal about cluster
//! shape rather than an artifact.
//!
//! The crate also ships the supporting pipeline: correlation distances for
//! return series, set-distance primitives, dendrogram cuts and entropy
//! curves, benchmark geometries, synthetic sector-structured price data,
//! CSV/JSON codecs, and an SVG renderer.
//!
//! ```
//! use hausdorff_cluster::analysis::cut_at_count;
//! use hausdorff_cluster::linkage::{agglomerate, Linkage, TiePolicy};
//! use hausdorff_cluster::metric::{DistanceMatrix, Point};
//!
//! # fn main() -> hausdorff_cluster::Result<()> {
//! let points = vec![
//!     Point::xy(0.0, 0.0)?,
//!     Point::xy(0.0, 1.0)?,
//!     Point::xy(9.0, 0.0)?,
//!     Point::xy(9.0, 1.0)?,
//! ];
//! let matrix = DistanceMatrix::from_points(&points)?;
//! let tree = agglomerate(&matrix, Linkage::Hausdorff, TiePolicy::Lexicographic)?;
//! let two = cut_at_count(&tree, 2)?;
//! assert_eq!(two.assignment(), &[1, 1, 2, 2]);
//! # Ok(())
//! # }
//! ```

pub mod analysis;
pub mod datasets;
pub mod error;
pub mod io;
pub mod linkage;
pub mod metric;
pub mod render;
pub mod set_distance;
pub mod synthetic;

pub use analysis::{
    cluster_entropy, cut_at_count, cut_at_height, detect_backsteps, entropy_curve, EntropyCurve,
    EntropyPoint, Partition,
};
pub use datasets::{
    backstep_dataset, concentric_dataset, glasses_dataset, single_triangle_counterexample,
    LabeledPointSet,
};
pub use error::{Error, Result};
pub use linkage::{agglomerate, ClusterState, Dendrogram, Linkage, Merge, TiePolicy};
pub use metric::{
    correlation, correlation_distance, euclidean_distance, log_returns, DistanceMatrix,
    MetricAxiomReport, Point, PriceTable, ReturnSeries,
};
pub use render::render_dendrogram_svg;
pub use set_distance::{
    complete_distance, directed_hausdorff, hausdorff_distance, single_distance, IndexSet,
};
pub use synthetic::{sector_of, synthetic_price_table, DOW_TICKERS};
