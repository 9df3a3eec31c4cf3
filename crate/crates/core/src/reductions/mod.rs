//! Generators for the reduction chain 3-partition → FST encoding → height-2
//! PATS, and the intended solutions that go with them.

mod fst_reduction;
mod patterns;
mod witness;

pub use fst_reduction::{
    build_intended_fst, decode_partition, reduce_3partition_to_fst, reduce_3partition_to_fst_with,
    reduce_3partition_to_modified_fst, reduce_3partition_to_modified_fst_with, segments,
    FstReduction, Interval, Segment, SegmentKind, StateLayout,
};
pub use patterns::{
    block_word, reduce_fst_to_pats_nonuniform, reduce_fst_to_pats_uniform,
    reduce_modified_fst_to_3pats, transition_glyph, PatsInstance, PatsVariant, BLACK, CYAN, GRAY,
    ORANGE, PINK, RED, WHITE,
};
pub use witness::{witness_tileset_from_fst, PatsReduction, Witness};
