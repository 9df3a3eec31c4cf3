use super::{Glue, GlueTable, Rtas, Seed, TileSet, TileType};
use crate::error::{format_err, Result};
use crate::pattern::Color;

/// A parsed tile-set file: tile types, seed, and the name tables used to
/// intern glyphs and glue labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileFile {
    pub tiles: TileSet,
    pub seed: Seed,
    pub glyphs: Vec<char>,
    pub glues: GlueTable,
}

impl TileFile {
    /// Builds a file view of `rtas` with glues named by decimal id.
    pub fn from_rtas(rtas: &Rtas, glyphs: &[char]) -> Self {
        let count = rtas.tiles.max_glue().map_or(0, |g| g.0 as usize + 1);
        let seed_max = match &rtas.seed {
            Seed::NonUniform { bottom, left } => {
                bottom.iter().chain(left).map(|g| g.0 as usize + 1).max()
            }
            Seed::Uniform { east, north } => Some(east.0.max(north.0) as usize + 1),
        };
        TileFile {
            tiles: rtas.tiles.clone(),
            seed: rtas.seed.clone(),
            glyphs: glyphs.to_vec(),
            glues: GlueTable::numbered(count.max(seed_max.unwrap_or(0))),
        }
    }

    pub fn into_rtas(self, width: usize, height: usize) -> Result<Rtas> {
        Rtas::new(self.tiles, self.seed, width, height)
    }
}

fn split_key<'a>(field: &'a str, key: &str) -> Result<&'a str> {
    field
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .filter(|v| !v.is_empty())
        .ok_or_else(|| format_err(format!("expected {}=<glue>, got {:?}", key, field)))
}

/// Parses a tile-set file. Color glyphs are resolved against `glyphs` first
/// (normally the target pattern's), so color ids line up with the pattern;
/// unseen glyphs are appended. A file without a seed record gets the uniform
/// seed with glue `0`.
pub fn parse_tile_file(text: &str, glyphs: &[char]) -> Result<TileFile> {
    let mut glyphs = glyphs.to_vec();
    let mut glues = GlueTable::new();
    let mut tiles = Vec::new();
    let mut seed = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ctx = |e: crate::Error| format_err(format!("line {}: {}", lineno + 1, e));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "tile" => {
                if fields.len() != 6 {
                    return Err(format_err(format!(
                        "line {}: malformed tile record",
                        lineno + 1
                    )));
                }
                let mut chars = fields[1].chars();
                let (Some(ch), None) = (chars.next(), chars.next()) else {
                    return Err(format_err(format!(
                        "line {}: color must be one glyph",
                        lineno + 1
                    )));
                };
                let color = match glyphs.iter().position(|&g| g == ch) {
                    Some(i) => Color(i as u32),
                    None => {
                        glyphs.push(ch);
                        Color(glyphs.len() as u32 - 1)
                    }
                };
                let mut side = |i: usize, key: &str| -> Result<Glue> {
                    Ok(glues.intern(split_key(fields[i], key).map_err(ctx)?))
                };
                let n = side(2, "N")?;
                let e = side(3, "E")?;
                let s = side(4, "S")?;
                let w = side(5, "W")?;
                tiles.push(TileType::new(color, n, e, s, w));
            }
            "seed" => {
                if seed.is_some() {
                    return Err(format_err(format!(
                        "line {}: second seed record",
                        lineno + 1
                    )));
                }
                seed = Some(match (fields.get(1).copied(), fields.len()) {
                    (Some("uniform"), 4) => {
                        let east = glues.intern(split_key(fields[2], "east").map_err(ctx)?);
                        let north = glues.intern(split_key(fields[3], "north").map_err(ctx)?);
                        Seed::Uniform { east, north }
                    }
                    (Some("nonuniform"), 4) => {
                        let mut list = |i: usize, key: &str| -> Result<Vec<Glue>> {
                            Ok(split_key(fields[i], key)
                                .map_err(ctx)?
                                .split(',')
                                .map(|g| glues.intern(g))
                                .collect())
                        };
                        let bottom = list(2, "bottom")?;
                        let left = list(3, "left")?;
                        Seed::NonUniform { bottom, left }
                    }
                    _ => {
                        return Err(format_err(format!(
                            "line {}: malformed seed record",
                            lineno + 1
                        )))
                    }
                });
            }
            other => {
                return Err(format_err(format!(
                    "line {}: unknown record {:?}",
                    lineno + 1,
                    other
                )));
            }
        }
    }
    let seed = seed.unwrap_or_else(|| Seed::uniform(glues.intern("0")));
    Ok(TileFile {
        tiles: TileSet::new(tiles)?,
        seed,
        glyphs,
        glues,
    })
}

/// Serializes a tile file: the seed record first, then one line per tile.
pub fn render_tile_file(file: &TileFile) -> String {
    let name = |g: Glue| file.glues.name(g);
    let mut out = String::new();
    match &file.seed {
        Seed::Uniform { east, north } => {
            out.push_str(&format!(
                "seed uniform east={} north={}\n",
                name(*east),
                name(*north)
            ));
        }
        Seed::NonUniform { bottom, left } => {
            let join = |v: &[Glue]| v.iter().map(|&g| name(g)).collect::<Vec<_>>().join(",");
            out.push_str(&format!(
                "seed nonuniform bottom={} left={}\n",
                join(bottom),
                join(left)
            ));
        }
    }
    for t in &file.tiles {
        let glyph = file.glyphs.get(t.color.index()).copied().unwrap_or('?');
        out.push_str(&format!(
            "tile {} N={} E={} S={} W={}\n",
            glyph,
            name(t.north),
            name(t.east),
            name(t.south),
            name(t.west)
        ));
    }
    out
}
