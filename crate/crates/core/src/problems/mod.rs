//! QUBO generators and decoders for the supported problem families.

mod graph;
mod order;
mod partition;
mod pathway;

pub use graph::{
    decode_cut, max_cut, min_vertex_cover, verify_cover, CoverCheck, CutResult, Graph,
};
pub use order::{
    decode_order_partition, order_objective, order_partitioning, OrderPartitionInstance, OrderSplit,
};
pub use partition::{decode_partition, number_partitioning, PartitionInstance, PartitionSplit};
pub use pathway::{cancer_multi, cancer_single, decode_pathways, PathwayInstance};

/// Default penalty for the vertex-cover constraint.
pub const DEFAULT_COVER_PENALTY: f64 = 2.0;
/// Default coverage and orthogonality weight for cancer pathways.
pub const DEFAULT_PATHWAY_ALPHA: f64 = 1.0;
