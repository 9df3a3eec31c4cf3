use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::dp::{dp_verify, SeedMode};
use super::{SeedKind, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::rtas::{uniquely_assembles, Glue, Rtas, Seed, TileSet, TileType};

/// Options for [`solve_min`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    /// Largest tile-set size to try.
    pub cap: Option<usize>,
    /// Worker threads for branch parallelism; `None` or 1 runs sequentially.
    pub threads: Option<usize>,
    /// Abort after this many search nodes.
    pub node_cap: Option<u64>,
}

const PARALLEL_DEPTH: usize = 6;

#[derive(Clone)]
struct Tile {
    color: Color,
    west: u32,
    south: u32,
    east: usize,
    north: usize,
}

/// Partial solution: tiles whose east/north glues are variables that get a
/// value only when some neighbour reads them.
#[derive(Clone)]
struct State {
    vars: Vec<Option<u32>>,
    glues: u32,
    tiles: Vec<Tile>,
    grid: Vec<usize>,
    left: Vec<usize>,
    bottom: Vec<usize>,
    missing_colors: usize,
    has_color: Vec<bool>,
}

struct Search<'a> {
    p: &'a Pattern,
    k: usize,
    nodes: AtomicU64,
    node_cap: u64,
    over_cap: AtomicBool,
    parallel: bool,
}

impl State {
    fn new(p: &Pattern, kind: SeedKind) -> Self {
        let (w, h) = (p.width(), p.height());
        let (left, bottom, nvars) = match kind {
            SeedKind::NonUniform => ((0..h).collect(), (h..h + w).collect(), h + w),
            SeedKind::Uniform => (vec![0; h], vec![1; w], 2),
        };
        let palette = p.palette_size();
        State {
            vars: vec![None; nvars],
            glues: 0,
            tiles: Vec::new(),
            grid: Vec::with_capacity(w * h),
            left,
            bottom,
            missing_colors: p.color_count(),
            has_color: vec![false; palette],
        }
    }

    fn new_var(&mut self) -> usize {
        self.vars.push(None);
        self.vars.len() - 1
    }

    /// Variables feeding the west and south sides of the next position.
    fn inputs(&self, h: usize) -> (usize, usize) {
        let i = self.grid.len();
        let (x, y) = (i / h, i % h);
        let w = if x == 0 {
            self.left[y]
        } else {
            self.tiles[self.grid[i - h]].east
        };
        let s = if y == 0 {
            self.bottom[x]
        } else {
            self.tiles[self.grid[i - 1]].north
        };
        (w, s)
    }

    fn resolve(&self, kind: SeedKind, fill: impl Fn(usize) -> u32) -> Rtas {
        let val = |v: usize| Glue(self.vars[v].unwrap_or_else(|| fill(v)));
        let tiles = self
            .tiles
            .iter()
            .map(|t| {
                TileType::new(
                    t.color,
                    val(t.north),
                    val(t.east),
                    Glue(t.south),
                    Glue(t.west),
                )
            })
            .collect();
        let seed = match kind {
            SeedKind::Uniform => Seed::Uniform {
                east: val(self.left[0]),
                north: val(self.bottom[0]),
            },
            SeedKind::NonUniform => Seed::NonUniform {
                bottom: self.bottom.iter().map(|&v| val(v)).collect(),
                left: self.left.iter().map(|&v| val(v)).collect(),
            },
        };
        let tiles = TileSet::new(tiles).expect("keys are distinct");
        Rtas::new(tiles, seed, self.bottom.len(), self.left.len()).expect("dimensions match")
    }
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.node_cap {
            self.over_cap.store(true, Ordering::Relaxed);
        }
        !self.over_cap.load(Ordering::Relaxed)
    }

    /// Advances through forced steps; returns the branch points, or `Err`
    /// with a finished state.
    fn run(&self, mut st: State) -> Option<std::result::Result<State, Vec<State>>> {
        let (w, h) = (self.p.width(), self.p.height());
        loop {
            if st.grid.len() == w * h {
                return Some(Ok(st));
            }
            let (wv, sv) = st.inputs(h);
            let open = if st.vars[wv].is_none() {
                wv
            } else if st.vars[sv].is_none() {
                sv
            } else {
                usize::MAX
            };
            if open != usize::MAX {
                let mut kids = Vec::with_capacity(st.glues as usize + 1);
                for g in 0..=st.glues {
                    let mut c = st.clone();
                    c.vars[open] = Some(g);
                    if g == st.glues {
                        c.glues += 1;
                    }
                    kids.push(c);
                }
                return Some(Err(kids));
            }
            let (gw, gs) = (st.vars[wv].unwrap(), st.vars[sv].unwrap());
            let i = st.grid.len();
            let color = self.p.get(i / h + 1, i % h + 1);
            match st.tiles.iter().position(|t| t.west == gw && t.south == gs) {
                Some(j) => {
                    if st.tiles[j].color != color {
                        return None;
                    }
                    st.grid.push(j);
                }
                None => {
                    if st.tiles.len() == self.k {
                        return None;
                    }
                    if !st.has_color[color.index()] {
                        st.has_color[color.index()] = true;
                        st.missing_colors -= 1;
                    }
                    let (east, north) = (st.new_var(), st.new_var());
                    st.tiles.push(Tile {
                        color,
                        west: gw,
                        south: gs,
                        east,
                        north,
                    });
                    if st.missing_colors > self.k - st.tiles.len() {
                        return None;
                    }
                    st.grid.push(st.tiles.len() - 1);
                }
            }
        }
    }

    fn dfs(&self, st: State, depth: usize) -> Option<State> {
        if !self.tick() {
            return None;
        }
        match self.run(st)? {
            Ok(done) => Some(done),
            Err(kids) => {
                if self.parallel && depth < PARALLEL_DEPTH {
                    kids.into_par_iter()
                        .find_map_first(|c| self.dfs(c, depth + 1))
                } else {
                    kids.into_iter().find_map(|c| self.dfs(c, depth + 1))
                }
            }
        }
    }
}

/// Minimum directed tile set for `p` by iterative deepening on the set size.
/// Each round grows the assembly position by position in column-major order,
/// creating a tile type whenever a `(west, south)` pair is new and branching
/// only when a glue is read for the first time (existing glue ids ascending,
/// then one new id).
pub fn solve_min(p: &Pattern, kind: SeedKind, opts: SolveOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let (w, h) = (p.width(), p.height());
    let c = p.color_count();
    let bound = match kind {
        SeedKind::NonUniform => (c as u64)
            .checked_pow(h as u32)
            .and_then(|b| b.checked_mul(h as u64))
            .map_or(w * h, |b| (b as usize).min(w * h)),
        SeedKind::Uniform => w * h,
    };
    let hi = opts.cap.map_or(bound, |cap| cap.min(bound));
    let mut nodes = 0u64;
    for k in c..=hi {
        let search = Search {
            p,
            k,
            nodes: AtomicU64::new(0),
            node_cap: opts.node_cap.map_or(u64::MAX, |n| n.saturating_sub(nodes)),
            over_cap: AtomicBool::new(false),
            parallel: opts.threads.is_some_and(|t| t > 1),
        };
        let found = match opts.threads {
            Some(t) if t > 1 => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::Validation(e.to_string()))?;
                pool.install(|| search.dfs(State::new(p, kind), 0))
            }
            _ => search.dfs(State::new(p, kind), 0),
        };
        nodes += search.nodes.load(Ordering::Relaxed);
        if search.over_cap.load(Ordering::Relaxed) {
            return Err(Error::SearchBudgetExceeded(
                opts.node_cap.unwrap_or(u64::MAX),
            ));
        }
        if let Some(st) = found {
            let mut next = st.glues;
            let fresh: Vec<u32> = st
                .vars
                .iter()
                .map(|v| {
                    if v.is_some() {
                        0
                    } else {
                        next += 1;
                        next - 1
                    }
                })
                .collect();
            let witness = st.resolve(kind, |v| fresh[v]);
            let ok = match &witness.seed {
                Seed::NonUniform { .. } => {
                    dp_verify(&witness.tiles, p, &SeedMode::Fixed(witness.seed.clone()))?.is_some()
                }
                Seed::Uniform { .. } => uniquely_assembles(&witness, p)?,
            };
            if !ok {
                return Err(Error::Validation(
                    "synthesized tile set failed verification".into(),
                ));
            }
            return Ok(SolveResult {
                min_size: k,
                witness,
                stats: SolveStats {
                    nodes,
                    elapsed: started.elapsed(),
                },
            });
        }
    }
    Err(Error::BudgetExhausted(hi))
}

/// Minimum non-uniform tile set for `p`; see [`solve_min`].
pub fn solve_nonuniform(p: &Pattern, cap: Option<usize>) -> Result<SolveResult> {
    solve_min(
        p,
        SeedKind::NonUniform,
        SolveOptions {
            cap,
            ..SolveOptions::default()
        },
    )
}

/// Minimum uniform tile set for `p`; see [`solve_min`].
pub fn solve_uniform(p: &Pattern, cap: Option<usize>) -> Result<SolveResult> {
    solve_min(
        p,
        SeedKind::Uniform,
        SolveOptions {
            cap,
            ..SolveOptions::default()
        },
    )
}
