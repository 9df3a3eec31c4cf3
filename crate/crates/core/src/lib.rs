//! Rectilinear tile assembly, exact PATS solvers, and the hardness-reduction
//! generators that map 3-partition through FST encoding to height-2 patterns.

pub mod error;
pub mod fst;
pub mod pattern;
pub mod reductions;
pub mod rtas;
pub mod solvers;

pub use error::{Error, Result};
pub use pattern::{parse_pattern, render_pattern, Color, Pattern};
pub use rtas::{
    is_directed, simulate, uniquely_assembles, Assembly, Glue, Rtas, Seed, TileSet, TileType,
};
