use super::SeedKind;
use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::rtas::{is_directed, uniquely_assembles, Glue, Rtas, Seed, TileSet, TileType};

/// Default node cap for [`brute_force_min`].
pub const DEFAULT_BRUTE_NODES: u64 = 20_000_000;

/// Union-find without path compression so unions can be undone.
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    history: Vec<Option<(usize, usize, bool)>>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.history.push(None);
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let bumped = self.rank[a] == self.rank[b];
        self.parent[b] = a;
        if bumped {
            self.rank[a] += 1;
        }
        self.history.push(Some((a, b, bumped)));
    }

    fn mark(&self) -> usize {
        self.history.len()
    }

    fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            if let Some((a, b, bumped)) = self.history.pop().unwrap() {
                self.parent[b] = b;
                if bumped {
                    self.rank[a] -= 1;
                }
            }
        }
    }
}

const W: usize = 0;
const E: usize = 1;
const S: usize = 2;
const N: usize = 3;

/// Exhaustive search over labelings of the pattern cells by tile types.
/// Glues are the finest equivalence the labeling forces, so every directed
/// tile set assembling `p` has a labeling here of the same size.
struct Labeling<'a> {
    p: &'a Pattern,
    kind: SeedKind,
    k: usize,
    uf: UnionFind,
    colors: Vec<Color>,
    present: Vec<bool>,
    cells: Vec<usize>,
    seed_base: usize,
    nodes: u64,
    node_cap: u64,
}

impl Labeling<'_> {
    fn var(&self, label: usize, side: usize) -> usize {
        4 * label + side
    }

    fn left_var(&self, y: usize) -> usize {
        match self.kind {
            SeedKind::NonUniform => self.seed_base + y,
            SeedKind::Uniform => self.seed_base,
        }
    }

    fn bottom_var(&self, x: usize) -> usize {
        match self.kind {
            SeedKind::NonUniform => self.seed_base + self.p.height() + x,
            SeedKind::Uniform => self.seed_base + 1,
        }
    }

    fn directed(&self) -> bool {
        let inputs: Vec<(usize, usize)> = (0..self.colors.len())
            .map(|l| (self.uf.find(self.var(l, W)), self.uf.find(self.var(l, S))))
            .collect();
        for a in 0..inputs.len() {
            for b in a + 1..inputs.len() {
                if inputs[a] == inputs[b] {
                    return false;
                }
            }
        }
        true
    }

    fn system(&self) -> Rtas {
        let mut ids = std::collections::HashMap::new();
        let mut glue = |v: usize| {
            let r = self.uf.find(v);
            let next = ids.len() as u32;
            Glue(*ids.entry(r).or_insert(next))
        };
        let tiles: Vec<TileType> = (0..self.colors.len())
            .map(|l| {
                let g: Vec<Glue> = (0..4).map(|s| glue(self.var(l, s))).collect();
                TileType::new(self.colors[l], g[N], g[E], g[S], g[W])
            })
            .collect();
        let (w, h) = (self.p.width(), self.p.height());
        let seed = match self.kind {
            SeedKind::NonUniform => Seed::NonUniform {
                bottom: (0..w).map(|x| glue(self.bottom_var(x))).collect(),
                left: (0..h).map(|y| glue(self.left_var(y))).collect(),
            },
            SeedKind::Uniform => Seed::Uniform {
                east: glue(self.left_var(0)),
                north: glue(self.bottom_var(0)),
            },
        };
        let tiles = TileSet::new(tiles).expect("labels give distinct input pairs");
        Rtas::new(tiles, seed, w, h).expect("dimensions match")
    }

    fn dfs(&mut self, pos: usize) -> Result<Option<Rtas>> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::CapExceeded(format!(
                "more than {} labeling nodes",
                self.node_cap
            )));
        }
        let (w, h) = (self.p.width(), self.p.height());
        if pos == w * h {
            let rtas = self.system();
            if is_directed(&rtas.tiles) && uniquely_assembles(&rtas, self.p)? {
                return Ok(Some(rtas));
            }
            return Ok(None);
        }
        let (x, y) = (pos / h, pos % h);
        let color = self.p.get(x + 1, y + 1);
        let mut missing = self.present.clone();
        for c in &self.colors {
            missing[c.index()] = false;
        }
        let unseen = missing.iter().filter(|&&m| m).count();
        if unseen > self.k - self.colors.len() {
            return Ok(None);
        }
        let west = if x == 0 {
            self.left_var(y)
        } else {
            self.var(self.cells[pos - h], E)
        };
        let south = if y == 0 {
            self.bottom_var(x)
        } else {
            self.var(self.cells[pos - 1], N)
        };
        let labels = self.colors.len();
        for label in 0..=labels {
            let fresh = label == labels;
            if fresh && labels == self.k {
                break;
            }
            if !fresh && self.colors[label] != color {
                continue;
            }
            let mark = self.uf.mark();
            if fresh {
                self.colors.push(color);
            }
            self.uf.union(self.var(label, W), west);
            self.uf.union(self.var(label, S), south);
            if self.directed() {
                self.cells.push(label);
                let found = self.dfs(pos + 1)?;
                self.cells.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
            if fresh {
                self.colors.pop();
            }
            self.uf.rollback(mark);
        }
        Ok(None)
    }
}

/// Smallest tile set found by exhaustive labeling search, with a witness.
pub fn brute_force_search(p: &Pattern, kind: SeedKind, node_cap: u64) -> Result<(usize, Rtas)> {
    let (w, h) = (p.width(), p.height());
    let mut present = vec![false; p.palette_size()];
    for c in p.colors() {
        present[c.index()] = true;
    }
    let mut spent = 0;
    for k in p.color_count()..=w * h {
        let seed_base = 4 * k;
        let mut lab = Labeling {
            p,
            kind,
            k,
            uf: UnionFind::new(seed_base + w + h),
            colors: Vec::new(),
            present: present.clone(),
            cells: Vec::with_capacity(w * h),
            seed_base,
            nodes: 0,
            node_cap: node_cap - spent,
        };
        let found = lab.dfs(0)?;
        spent += lab.nodes;
        if let Some(rtas) = found {
            return Ok((rtas.size(), rtas));
        }
    }
    unreachable!("one tile type per cell always assembles the pattern")
}

/// Exact minimum tile-set size for a tiny pattern.
pub fn brute_force_min(p: &Pattern, kind: SeedKind) -> Result<usize> {
    brute_force_search(p, kind, DEFAULT_BRUTE_NODES).map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_pattern;

    fn min(text: &str, kind: SeedKind) -> usize {
        brute_force_min(&parse_pattern(text).unwrap(), kind).unwrap()
    }

    #[test]
    fn monochrome_is_one() {
        assert_eq!(min("aaa\naaa", SeedKind::NonUniform), 1);
        assert_eq!(min("aaa\naaa", SeedKind::Uniform), 1);
    }

    #[test]
    fn small_words() {
        assert_eq!(min("abc", SeedKind::Uniform), 3);
        assert_eq!(min("ababab", SeedKind::Uniform), 2);
        assert_eq!(min("abcabc", SeedKind::Uniform), 3);
        assert_eq!(min("aab", SeedKind::NonUniform), 2);
    }

    #[test]
    fn rollback_restores() {
        let mut uf = UnionFind::new(4);
        let m = uf.mark();
        uf.union(0, 1);
        uf.union(2, 3);
        uf.union(1, 3);
        assert_eq!(uf.find(0), uf.find(2));
        uf.rollback(m);
        assert!((0..4).all(|i| uf.find(i) == i));
    }

    #[test]
    fn node_cap() {
        let p = parse_pattern("abab\nbaba").unwrap();
        assert!(matches!(
            brute_force_search(&p, SeedKind::Uniform, 5),
            Err(Error::CapExceeded(_))
        ));
    }
}
