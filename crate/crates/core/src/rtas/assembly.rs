use std::collections::{HashMap, HashSet};

use super::{require_directed, Glue, Rtas, TileType};
use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Terminal-assembly cap used when [`uniquely_assembles`] falls back to
/// exhaustive search.
pub const DEFAULT_TERMINAL_CAP: usize = 4096;

/// Producible assemblies visited by the exhaustive search before giving up.
const BRUTE_FORCE_NODE_LIMIT: usize = 1 << 22;

/// A partial placement of tiles on `ℕ_w × ℕ_h`, seed excluded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    width: usize,
    height: usize,
    cells: Vec<Option<TileType>>,
}

impl Assembly {
    pub fn empty(width: usize, height: usize) -> Self {
        Assembly {
            width,
            height,
            cells: vec![None; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    fn idx(&self, x: usize, y: usize) -> usize {
        (y - 1) * self.width + (x - 1)
    }

    /// Tile at `(x, y)` (1-based), if placed.
    pub fn get(&self, x: usize, y: usize) -> Option<TileType> {
        self.cells[self.idx(x, y)]
    }

    fn set(&mut self, x: usize, y: usize, t: TileType) {
        let i = self.idx(x, y);
        debug_assert!(self.cells[i].is_none());
        self.cells[i] = Some(t);
    }

    pub fn placed_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// True iff every position of the rectangle holds a tile.
    pub fn is_total(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Placements as `((x, y), tile)`, row by row from the bottom.
    pub fn placements(&self) -> impl Iterator<Item = ((usize, usize), TileType)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(i, c)| c.map(|t| ((i % self.width + 1, i / self.width + 1), t)))
    }

    /// True iff the assembly is total and its color projection equals `p`.
    pub fn has_pattern(&self, p: &Pattern) -> bool {
        if (self.width, self.height) != (p.width(), p.height()) {
            return false;
        }
        self.placements().count() == self.cells.len()
            && self.placements().all(|((x, y), t)| t.color == p.get(x, y))
    }

    /// Filled region is closed downward and leftward.
    pub fn is_staircase(&self) -> bool {
        self.placements().all(|((x, y), _)| {
            (x == 1 || self.get(x - 1, y).is_some()) && (y == 1 || self.get(x, y - 1).is_some())
        })
    }

    /// Every placement matches its west and south neighbours, seed included.
    pub fn respects_tiling_rule(&self, rtas: &Rtas) -> bool {
        self.placements().all(|((x, y), t)| {
            self.west_glue(rtas, x, y) == Some(t.west)
                && self.south_glue(rtas, x, y) == Some(t.south)
        })
    }

    fn west_glue(&self, rtas: &Rtas, x: usize, y: usize) -> Option<Glue> {
        if x == 1 {
            Some(rtas.seed.left_glue(y))
        } else {
            self.get(x - 1, y).map(|t| t.east)
        }
    }

    fn south_glue(&self, rtas: &Rtas, x: usize, y: usize) -> Option<Glue> {
        if y == 1 {
            Some(rtas.seed.bottom_glue(x))
        } else {
            self.get(x, y - 1).map(|t| t.north)
        }
    }

    /// Renders the color projection top row first, `.` for empty cells.
    pub fn render(&self, glyphs: &[char]) -> String {
        let mut rows = Vec::with_capacity(self.height);
        for y in (1..=self.height).rev() {
            rows.push(
                (1..=self.width)
                    .map(|x| match self.get(x, y) {
                        Some(t) => glyphs.get(t.color.index()).copied().unwrap_or('?'),
                        None => '.',
                    })
                    .collect::<String>(),
            );
        }
        rows.join("\n")
    }
}

fn input_lookup(rtas: &Rtas) -> HashMap<(Glue, Glue), TileType> {
    rtas.tiles.iter().map(|t| (t.input_glues(), *t)).collect()
}

/// The unique terminal assembly of a directed system, filled column by column
/// (x ascending, then y ascending).
pub fn simulate(rtas: &Rtas) -> Result<Assembly> {
    require_directed(&rtas.tiles)?;
    let lookup = input_lookup(rtas);
    let mut asm = Assembly::empty(rtas.width, rtas.height);
    for x in 1..=rtas.width {
        for y in 1..=rtas.height {
            let (Some(w), Some(s)) = (asm.west_glue(rtas, x, y), asm.south_glue(rtas, x, y)) else {
                continue;
            };
            if let Some(&t) = lookup.get(&(w, s)) {
                asm.set(x, y, t);
            }
        }
    }
    Ok(asm)
}

/// Simulates a directed system, letting `pick` choose which attachable
/// position to fill next. `pick(n)` must return an index below `n`; the
/// frontier is kept in `(x, y)` order.
pub fn simulate_by(rtas: &Rtas, mut pick: impl FnMut(usize) -> usize) -> Result<Assembly> {
    require_directed(&rtas.tiles)?;
    let lookup = input_lookup(rtas);
    let mut asm = Assembly::empty(rtas.width, rtas.height);
    let attachable = |asm: &Assembly, x: usize, y: usize| -> Option<TileType> {
        if x > asm.width || y > asm.height || asm.get(x, y).is_some() {
            return None;
        }
        let w = asm.west_glue(rtas, x, y)?;
        let s = asm.south_glue(rtas, x, y)?;
        lookup.get(&(w, s)).copied()
    };
    let mut frontier: Vec<(usize, usize)> = Vec::new();
    if attachable(&asm, 1, 1).is_some() {
        frontier.push((1, 1));
    }
    while !frontier.is_empty() {
        let i = pick(frontier.len());
        let (x, y) = frontier.remove(i);
        let t = attachable(&asm, x, y).expect("frontier positions stay attachable");
        asm.set(x, y, t);
        for (nx, ny) in [(x + 1, y), (x, y + 1)] {
            if attachable(&asm, nx, ny).is_some() && !frontier.contains(&(nx, ny)) {
                frontier.push((nx, ny));
            }
        }
        frontier.sort_unstable();
    }
    Ok(asm)
}

/// Every terminal assembly, found by exploring all producible assemblies
/// under the tiling rule. Works for nondeterministic systems. Results are
/// sorted.
pub fn brute_force_terminal_assemblies(rtas: &Rtas, cap: usize) -> Result<Vec<Assembly>> {
    let start = Assembly::empty(rtas.width, rtas.height);
    let mut visited: HashSet<Assembly> = HashSet::new();
    let mut terminals: HashSet<Assembly> = HashSet::new();
    let mut stack = vec![start.clone()];
    visited.insert(start);
    while let Some(asm) = stack.pop() {
        let mut grew = false;
        for y in 1..=rtas.height {
            for x in 1..=rtas.width {
                if asm.get(x, y).is_some() {
                    continue;
                }
                let (Some(w), Some(s)) = (asm.west_glue(rtas, x, y), asm.south_glue(rtas, x, y))
                else {
                    continue;
                };
                for t in rtas.tiles.iter().filter(|t| t.west == w && t.south == s) {
                    grew = true;
                    let mut next = asm.clone();
                    next.set(x, y, *t);
                    if visited.insert(next.clone()) {
                        if visited.len() > BRUTE_FORCE_NODE_LIMIT {
                            return Err(Error::CapExceeded(format!(
                                "more than {} producible assemblies",
                                BRUTE_FORCE_NODE_LIMIT
                            )));
                        }
                        stack.push(next);
                    }
                }
            }
        }
        if !grew {
            terminals.insert(asm);
            if terminals.len() > cap {
                return Err(Error::CapExceeded(format!(
                    "more than {} terminal assemblies",
                    cap
                )));
            }
        }
    }
    let mut out: Vec<Assembly> = terminals.into_iter().collect();
    out.sort();
    Ok(out)
}

/// True iff every terminal assembly is total with color projection `p`.
///
/// Directed systems are simulated; anything else goes through
/// [`brute_force_terminal_assemblies`] with [`DEFAULT_TERMINAL_CAP`].
pub fn uniquely_assembles(rtas: &Rtas, p: &Pattern) -> Result<bool> {
    if (rtas.width, rtas.height) != (p.width(), p.height()) {
        return Err(Error::DimensionMismatch(format!(
            "system is {}x{}, pattern is {}x{}",
            rtas.width,
            rtas.height,
            p.width(),
            p.height()
        )));
    }
    if super::is_directed(&rtas.tiles) {
        return Ok(simulate(rtas)?.has_pattern(p));
    }
    let terminals = brute_force_terminal_assemblies(rtas, DEFAULT_TERMINAL_CAP)?;
    Ok(terminals.iter().all(|a| a.has_pattern(p)))
}
