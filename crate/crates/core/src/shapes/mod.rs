//! Compositions, partitions and shifted diagrams.

mod composition;
mod diagram;
mod enumerate;
mod partition;

pub use composition::{Composition, PeakComposition};
pub use diagram::{cols, corner_removals, is_vertical_strip, removable_corners, young_diagram, ShiftedDiagram};
pub use enumerate::{
    compositions, compositions_upto, enumerate_shapes, partitions, partitions_upto, peak_compositions,
    peak_compositions_upto, strict_partitions, strict_partitions_upto, ShapeKind,
};
pub use partition::{Partition, StrictPartition};

