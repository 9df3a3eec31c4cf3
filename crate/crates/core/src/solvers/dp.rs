use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::rtas::{require_directed, Glue, Seed, TileSet, TileType};

/// How [`dp_verify`] treats the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedMode {
    /// Any non-uniform seed: each column picks its bottom glue, column 1
    /// picks its left glues.
    FreePerColumn,
    Fixed(Seed),
}

struct Column {
    tiles: Vec<TileType>,
    pred: usize,
    bottom: Glue,
}

/// Decides column by column whether the directed set `tiles` assembles `p`.
/// Returns a realizing seed, or `None` if no seed allowed by `mode` works.
pub fn dp_verify(tiles: &TileSet, p: &Pattern, mode: &SeedMode) -> Result<Option<Seed>> {
    require_directed(tiles)?;
    let (w, h) = (p.width(), p.height());
    if let SeedMode::Fixed(Seed::NonUniform { bottom, left }) = mode {
        if bottom.len() != w || left.len() != h {
            return Err(Error::DimensionMismatch(
                "seed does not match pattern".into(),
            ));
        }
    }
    let lookup: HashMap<(Glue, Glue), TileType> =
        tiles.iter().map(|t| (t.input_glues(), *t)).collect();
    let candidates: Vec<Glue> = match mode {
        SeedMode::FreePerColumn => tiles
            .iter()
            .map(|t| t.south)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
        SeedMode::Fixed(_) => Vec::new(),
    };

    // Each layer lists the feasible tile columns, bottom to top.
    let mut layers: Vec<Vec<Column>> = Vec::with_capacity(w);
    let mut first = Vec::new();
    match mode {
        SeedMode::FreePerColumn => {
            let mut stack: Vec<Vec<TileType>> = vec![Vec::new()];
            while let Some(col) = stack.pop() {
                let y = col.len() + 1;
                if y > h {
                    first.push(Column {
                        bottom: col[0].south,
                        tiles: col,
                        pred: 0,
                    });
                    continue;
                }
                for t in tiles.iter().filter(|t| t.color == p.get(1, y)) {
                    if col.last().is_none_or(|below| below.north == t.south) {
                        let mut next = col.clone();
                        next.push(*t);
                        stack.push(next);
                    }
                }
            }
        }
        SeedMode::Fixed(seed) => {
            let west: Vec<Glue> = (1..=h).map(|y| seed.left_glue(y)).collect();
            if let Some(col) = grow_column(&lookup, p, 1, &west, seed.bottom_glue(1)) {
                first.push(Column {
                    tiles: col,
                    pred: 0,
                    bottom: seed.bottom_glue(1),
                });
            }
        }
    }
    layers.push(first);

    for x in 2..=w {
        let bottoms: Vec<Glue> = match mode {
            SeedMode::FreePerColumn => candidates.clone(),
            SeedMode::Fixed(seed) => vec![seed.bottom_glue(x)],
        };
        let mut seen: HashMap<Vec<TileType>, ()> = HashMap::new();
        let mut next = Vec::new();
        for (i, prev) in layers[x - 2].iter().enumerate() {
            let west: Vec<Glue> = prev.tiles.iter().map(|t| t.east).collect();
            for &g in &bottoms {
                if let Some(col) = grow_column(&lookup, p, x, &west, g) {
                    if seen.insert(col.clone(), ()).is_none() {
                        next.push(Column {
                            tiles: col,
                            pred: i,
                            bottom: g,
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        layers.push(next);
    }

    let Some(last) = layers[w - 1].first() else {
        return Ok(None);
    };
    let mut bottom = vec![last.bottom];
    let mut cur = last;
    for x in (1..w).rev() {
        cur = &layers[x - 1][cur.pred];
        bottom.push(cur.bottom);
    }
    bottom.reverse();
    Ok(Some(match mode {
        SeedMode::Fixed(seed) => seed.clone(),
        SeedMode::FreePerColumn => Seed::NonUniform {
            bottom,
            left: cur.tiles.iter().map(|t| t.west).collect(),
        },
    }))
}

fn grow_column(
    lookup: &HashMap<(Glue, Glue), TileType>,
    p: &Pattern,
    x: usize,
    west: &[Glue],
    bottom: Glue,
) -> Option<Vec<TileType>> {
    let mut col = Vec::with_capacity(west.len());
    let mut south = bottom;
    for (y, &w) in west.iter().enumerate() {
        let t = *lookup.get(&(w, south))?;
        if t.color != p.get(x, y + 1) {
            return None;
        }
        south = t.north;
        col.push(t);
    }
    Some(col)
}
