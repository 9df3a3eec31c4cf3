use std::collections::HashMap;

use super::patterns::{
    reduce_fst_to_pats_nonuniform, reduce_fst_to_pats_uniform, reduce_modified_fst_to_3pats,
    PatsInstance, BLACK, CYAN, GRAY, ORANGE, PINK, RED, WHITE,
};
use crate::error::{Error, Result};
use crate::fst::{transduce, Fst, FstEncodingInstance, Transition};
use crate::pattern::{Color, Pattern};
use crate::rtas::{Glue, GlueTable, Rtas, Seed, TileFile, TileSet, TileType};

/// Which FST-to-PATS construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatsReduction {
    NonUniform,
    Uniform,
    Uniform3,
}

impl PatsReduction {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nonuniform" => Ok(PatsReduction::NonUniform),
            "uniform" => Ok(PatsReduction::Uniform),
            "uniform3" => Ok(PatsReduction::Uniform3),
            other => Err(crate::error::format_err(format!(
                "unknown reduction {:?}",
                other
            ))),
        }
    }

    pub fn apply(self, inst: &FstEncodingInstance) -> Result<PatsInstance> {
        match self {
            PatsReduction::NonUniform => reduce_fst_to_pats_nonuniform(inst),
            PatsReduction::Uniform => reduce_fst_to_pats_uniform(inst),
            PatsReduction::Uniform3 => reduce_modified_fst_to_3pats(inst),
        }
    }
}

/// An intended solution system with readable glue names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rtas: Rtas,
    pub glues: GlueTable,
}

impl Witness {
    pub fn tile_file(&self, pattern: &Pattern) -> TileFile {
        TileFile {
            tiles: self.rtas.tiles.clone(),
            seed: self.rtas.seed.clone(),
            glyphs: pattern.glyphs().to_vec(),
            glues: self.glues.clone(),
        }
    }
}

struct Builder<'a> {
    glues: GlueTable,
    tiles: Vec<TileType>,
    pattern: &'a Pattern,
}

impl<'a> Builder<'a> {
    fn new(pattern: &'a Pattern) -> Self {
        Builder {
            glues: GlueTable::new(),
            tiles: Vec::new(),
            pattern,
        }
    }

    fn g(&mut self, name: &str) -> Glue {
        self.glues.intern(name)
    }

    fn state(&mut self, q: usize) -> Glue {
        self.g(&format!("s{}", q))
    }

    fn color(&self, glyph: char) -> Result<Color> {
        self.pattern
            .color_of_glyph(glyph)
            .ok_or_else(|| Error::Validation(format!("pattern has no color {:?}", glyph)))
    }

    fn tile(&mut self, color: Color, n: &str, e: &str, s: &str, w: &str) {
        let t = TileType::new(color, self.g(n), self.g(e), self.g(s), self.g(w));
        self.tiles.push(t);
    }

    /// One tile per distinct transition in `trace`, colored by the top-row
    /// cell of its first traversal (column `offset + position`).
    fn transition_tiles(
        &mut self,
        trace: &[Transition],
        offset: usize,
        symbol: impl Fn(u8) -> String,
    ) {
        let mut seen = HashMap::new();
        for (i, tr) in trace.iter().enumerate() {
            if seen.contains_key(&(tr.from, tr.input)) {
                continue;
            }
            seen.insert((tr.from, tr.input), ());
            let color = self.pattern.get(offset + i + 1, 2);
            let (w, e, s) = (
                self.state(tr.from),
                self.state(tr.to),
                self.g(&symbol(tr.input)),
            );
            let n = self.g("n");
            self.tiles.push(TileType::new(color, n, e, s, w));
        }
    }

    fn finish(self, seed: Seed) -> Result<Witness> {
        let rtas = Rtas::new(
            TileSet::new(self.tiles)?,
            seed,
            self.pattern.width(),
            self.pattern.height(),
        )?;
        Ok(Witness {
            rtas,
            glues: self.glues,
        })
    }
}

/// Builds the intended tile set for `pats` from an FST solving `inst`.
pub fn witness_tileset_from_fst(
    fst: &Fst,
    inst: &FstEncodingInstance,
    pats: &PatsInstance,
    kind: PatsReduction,
) -> Result<Witness> {
    let (_, trace) = transduce(fst, &inst.s)?;
    let mut b = Builder::new(&pats.pattern);
    match kind {
        PatsReduction::NonUniform => {
            let (pink, red) = (b.color(PINK)?, b.color(RED)?);
            b.tile(pink, "0", "e", "p", "e");
            b.tile(red, "1", "e", "r", "e");
            b.transition_tiles(&trace, 0, |a| a.to_string());
            let bottom = inst
                .s
                .iter()
                .map(|&a| b.g(if a == 0 { "p" } else { "r" }))
                .collect();
            let left = vec![b.g("e"), b.state(fst.start())];
            b.finish(Seed::NonUniform { bottom, left })
        }
        PatsReduction::Uniform => {
            let n = inst.s.len();
            let orange = b.color(ORANGE)?;
            for (x, &a) in inst.s.iter().enumerate() {
                let w = if x == 0 {
                    "0".to_string()
                } else {
                    format!("o{}", x)
                };
                b.tile(orange, &format!("in{}", a), &format!("o{}", x + 1), "0", &w);
            }
            let (black, white, pink, red) = (
                b.color(BLACK)?,
                b.color(WHITE)?,
                b.color(PINK)?,
                b.color(RED)?,
            );
            b.tile(black, "k", "0", "0", &format!("o{}", n));
            b.tile(white, "n", &format!("s{}", fst.start()), "k", "0");
            b.tile(pink, "n", "0", "in0", "0");
            b.tile(red, "n", "0", "in1", "0");
            b.transition_tiles(&trace, n + 1, |a| format!("in{}", a));
            let g0 = b.g("0");
            b.finish(Seed::uniform(g0))
        }
        PatsReduction::Uniform3 => {
            let k = fst.num_states();
            let mut cycle = Vec::with_capacity(k);
            let mut q = fst.start();
            for _ in 0..k {
                cycle.push(q);
                q = fst.step(q, 0).0;
            }
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if q != fst.start() || sorted.len() != k {
                return Err(Error::Validation(
                    "0-transitions do not form one cycle through the start".into(),
                ));
            }
            let phi = |b: &Builder, out: u8| b.color([CYAN, GRAY, ORANGE][out as usize]);
            let orange = b.color(ORANGE)?;
            let m = inst.s_prime.len();
            b.tile(orange, "z", "o1", "0", "0");
            for x in 2..=m + 1 {
                let e = if x == m + 1 {
                    format!("s{}", fst.start())
                } else {
                    format!("o{}", x)
                };
                b.tile(
                    orange,
                    &inst.s[x - 2].to_string(),
                    &e,
                    "0",
                    &format!("o{}", x - 1),
                );
            }
            let cyan = phi(&b, 0)?;
            b.tile(cyan, "n", &format!("s{}", fst.start()), "z", "0");
            for (pos, &q) in cycle.iter().enumerate() {
                let (to, out) = fst.step(q, 0);
                let north = if pos + 4 <= k { "0" } else { "1" };
                let color = phi(&b, out)?;
                b.tile(color, north, &format!("s{}", to), "0", &format!("s{}", q));
            }
            for q in 0..k {
                let (to, out) = fst.step(q, 1);
                let color = phi(&b, out)?;
                b.tile(color, "n", &format!("s{}", to), "1", &format!("s{}", q));
            }
            let g0 = b.g("0");
            b.finish(Seed::uniform(g0))
        }
    }
}
