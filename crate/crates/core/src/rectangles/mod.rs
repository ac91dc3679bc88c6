//! Partitions, colourings, rectangles and covers over pair variables.
//!
//! Assignments are `u64` words throughout (bit `v` is variable `v`), which
//! caps scopes at 64 variables; every exhaustive routine is further bounded
//! by a [`SweepGuard`](crate::SweepGuard).

mod bound;
mod coloring;
mod experiments;
mod extract;
mod maxrect;
mod partition;
mod rectangle;
mod triangles;

pub use bound::{lower_bound_from_covers, BoundMode, BoundReport, PartitionBound};
pub use coloring::{
    bichromatic_vertex_census, coloring_from_partition, Color, EdgeColoring, VertexCensus,
    VertexDegree,
};
pub use experiments::{
    lemma1_experiment, lemma2_experiment, BalanceFloor, ColoringRow, Lemma1Report, Lemma2Report,
    Lemma2Row, ThresholdRow, LEMMA2_CONSTANT_DENOMINATOR,
};
pub use extract::{extract_rectangle_cover, ExtractedCover, ExtractionSummary};
pub use maxrect::{max_rectangle, MAX_RECTANGLE_TARGET_LIMIT};
pub use partition::{balanced_partitions, Partition};
pub use rectangle::{
    read_cover, rectangle_models, validate_cover, write_cover, CoverReport, Rectangle,
    RectangleCover,
};
pub use triangles::{
    block_models, find_disjoint_minority_triangles, forbidden_pattern, pattern_values,
    triangle_pattern_census, Triangle, BETA,
};
