//! Tile types, seeds and rectilinear tile assembly systems.

mod assembly;
mod io;

pub use assembly::{
    brute_force_terminal_assemblies, simulate, simulate_by, uniquely_assembles, Assembly,
    DEFAULT_TERMINAL_CAP,
};
pub use io::{parse_tile_file, render_tile_file, TileFile};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::Color;

/// Glue label. Only equality carries meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Glue(pub u32);

/// Interns textual glue labels to dense ids in first-occurrence order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GlueTable {
    names: Vec<String>,
    ids: HashMap<String, Glue>,
}

impl GlueTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table naming glue `i` by its decimal id, for `count` glues.
    pub fn numbered(count: usize) -> Self {
        let mut t = Self::new();
        for i in 0..count {
            t.intern(&i.to_string());
        }
        t
    }

    pub fn intern(&mut self, name: &str) -> Glue {
        if let Some(&g) = self.ids.get(name) {
            return g;
        }
        let g = Glue(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), g);
        g
    }

    pub fn get(&self, name: &str) -> Option<Glue> {
        self.ids.get(name).copied()
    }

    /// Name of `g`; glues never interned render as `#<id>`.
    pub fn name(&self, g: Glue) -> String {
        self.names
            .get(g.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("#{}", g.0))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// The four edge directions of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    North,
    East,
    South,
    West,
}

/// A colored unit square with one glue per side; identity is the whole tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileType {
    pub color: Color,
    pub north: Glue,
    pub east: Glue,
    pub south: Glue,
    pub west: Glue,
}

impl TileType {
    pub fn new(color: Color, north: Glue, east: Glue, south: Glue, west: Glue) -> Self {
        TileType {
            color,
            north,
            east,
            south,
            west,
        }
    }

    pub fn glue(&self, side: Side) -> Glue {
        match side {
            Side::North => self.north,
            Side::East => self.east,
            Side::South => self.south,
            Side::West => self.west,
        }
    }

    /// The `(west, south)` pair that decides attachment.
    pub fn input_glues(&self) -> (Glue, Glue) {
        (self.west, self.south)
    }
}

/// A set of distinct tile types kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TileSet {
    tiles: Vec<TileType>,
}

impl TileSet {
    pub fn new(tiles: Vec<TileType>) -> Result<Self> {
        let mut sorted = tiles.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!("duplicate tile type {:?}", w[0])));
        }
        Ok(TileSet { tiles })
    }

    /// For callers whose tiles are distinct by construction.
    pub(crate) fn from_distinct(tiles: Vec<TileType>) -> Self {
        TileSet { tiles }
    }

    pub fn empty() -> Self {
        TileSet::default()
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TileType> {
        self.tiles.iter()
    }

    pub fn as_slice(&self) -> &[TileType] {
        &self.tiles
    }

    /// Largest glue id mentioned, if any.
    pub fn max_glue(&self) -> Option<Glue> {
        self.tiles
            .iter()
            .flat_map(|t| [t.north, t.east, t.south, t.west])
            .max()
    }
}

impl<'a> IntoIterator for &'a TileSet {
    type Item = &'a TileType;
    type IntoIter = std::slice::Iter<'a, TileType>;

    fn into_iter(self) -> Self::IntoIter {
        self.tiles.iter()
    }
}

/// True iff no two distinct tile types share both west and south glues.
pub fn is_directed(tiles: &TileSet) -> bool {
    first_nondirected_pair(tiles).is_none()
}

pub(crate) fn first_nondirected_pair(tiles: &TileSet) -> Option<(TileType, TileType)> {
    let mut by_input: HashMap<(Glue, Glue), TileType> = HashMap::with_capacity(tiles.len());
    for t in tiles {
        if let Some(prev) = by_input.insert(t.input_glues(), *t) {
            return Some((prev, *t));
        }
    }
    None
}

pub(crate) fn require_directed(tiles: &TileSet) -> Result<()> {
    match first_nondirected_pair(tiles) {
        None => Ok(()),
        Some((a, b)) => Err(Error::NotDirected(format!(
            "{:?} and {:?} share west glue {} and south glue {}",
            a.color, b.color, a.west.0, a.south.0
        ))),
    }
}

/// The L-shaped seed, reduced to the glues it presents inward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Seed {
    /// `bottom[x-1]` is the north glue of seed tile `(x, 0)`; `left[y-1]` is
    /// the east glue of seed tile `(0, y)`.
    NonUniform { bottom: Vec<Glue>, left: Vec<Glue> },
    /// Every left-arm tile presents `east`, every bottom-arm tile `north`.
    Uniform { east: Glue, north: Glue },
}

impl Seed {
    /// The uniform seed whose arms both present `glue`.
    pub fn uniform(glue: Glue) -> Self {
        Seed::Uniform {
            east: glue,
            north: glue,
        }
    }

    /// Glue consumed as the south glue of the tile at `(x, 1)`.
    pub fn bottom_glue(&self, x: usize) -> Glue {
        match self {
            Seed::NonUniform { bottom, .. } => bottom[x - 1],
            Seed::Uniform { north, .. } => *north,
        }
    }

    /// Glue consumed as the west glue of the tile at `(1, y)`.
    pub fn left_glue(&self, y: usize) -> Glue {
        match self {
            Seed::NonUniform { left, .. } => left[y - 1],
            Seed::Uniform { east, .. } => *east,
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, Seed::Uniform { .. })
    }

    fn check_dimensions(&self, width: usize, height: usize) -> Result<()> {
        if let Seed::NonUniform { bottom, left } = self {
            if bottom.len() != width || left.len() != height {
                return Err(Error::DimensionMismatch(format!(
                    "seed arms {}x{} do not match {}x{}",
                    bottom.len(),
                    left.len(),
                    width,
                    height
                )));
            }
        }
        Ok(())
    }
}

/// A rectilinear tile assembly system `(T, σ)` on a `width × height` region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rtas {
    pub tiles: TileSet,
    pub seed: Seed,
    pub width: usize,
    pub height: usize,
}

impl Rtas {
    pub fn new(tiles: TileSet, seed: Seed, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::DimensionMismatch("region must be non-empty".into()));
        }
        seed.check_dimensions(width, height)?;
        Ok(Rtas {
            tiles,
            seed,
            width,
            height,
        })
    }

    pub fn size(&self) -> usize {
        self.tiles.len()
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[c{} N{} E{} S{} W{}]",
            self.color.0, self.north.0, self.east.0, self.south.0, self.west.0
        )
    }
}
