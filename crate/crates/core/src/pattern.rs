//! Rectangular color patterns and their text format.
//!
//! A pattern of width `w` and height `h` is indexed by `(x, y)` with
//! `x ∈ 1..=w`, `y ∈ 1..=h`, and `(1, 1)` the bottom-left cell. The seed of an
//! assembly occupies row 0 and column 0, so pattern coordinates line up with
//! assembly coordinates.
//!
//! The text format lists the top row first, one glyph per cell. Colors are
//! numbered by first occurrence in reading order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{format_err, Error, Result};

/// Dense color id. Glyphs are presentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A total map from `ℕ_w × ℕ_h` to colors, plus one display glyph per color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    width: usize,
    height: usize,
    /// Row-major, bottom row first: index `(y - 1) * width + (x - 1)`.
    cells: Vec<Color>,
    glyphs: Vec<char>,
}

fn is_glyph(c: char) -> bool {
    !c.is_whitespace() && !c.is_control()
}

impl Pattern {
    /// Builds a pattern from bottom-row-first, row-major cells.
    pub fn new(width: usize, height: usize, cells: Vec<Color>, glyphs: Vec<char>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(format_err("pattern dimensions must be positive"));
        }
        if cells.len() != width * height {
            return Err(format_err(format!(
                "expected {} cells for a {}x{} pattern, got {}",
                width * height,
                width,
                height,
                cells.len()
            )));
        }
        if let Some(c) = cells.iter().find(|c| c.index() >= glyphs.len()) {
            return Err(format_err(format!("color id {} has no glyph", c.0)));
        }
        let mut seen = HashMap::new();
        for (i, &g) in glyphs.iter().enumerate() {
            if !is_glyph(g) {
                return Err(format_err(format!("glyph {:?} is not printable", g)));
            }
            if let Some(j) = seen.insert(g, i) {
                return Err(format_err(format!(
                    "glyph {:?} used for colors {} and {}",
                    g, j, i
                )));
            }
        }
        Ok(Pattern {
            width,
            height,
            cells,
            glyphs,
        })
    }

    /// Builds a pattern from color ids given as a closure over `(x, y)`.
    pub fn from_fn(
        width: usize,
        height: usize,
        glyphs: Vec<char>,
        mut color: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self> {
        let mut cells = Vec::with_capacity(width * height);
        for y in 1..=height {
            for x in 1..=width {
                cells.push(color(x, y));
            }
        }
        Pattern::new(width, height, cells, glyphs)
    }

    /// Builds a pattern from glyph rows, top row first. Colors are numbered by
    /// first occurrence in reading order, exactly as [`parse_pattern`] does.
    pub fn from_glyph_rows(rows: &[Vec<char>]) -> Result<Self> {
        let height = rows.len();
        if height == 0 {
            return Err(format_err("empty pattern"));
        }
        let width = rows[0].len();
        if width == 0 {
            return Err(format_err("empty row"));
        }
        let mut glyphs: Vec<char> = Vec::new();
        let mut ids: HashMap<char, u32> = HashMap::new();
        let mut top_first = Vec::with_capacity(width * height);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(format_err(format!(
                    "row {} has length {}, expected {}",
                    r + 1,
                    row.len(),
                    width
                )));
            }
            for &g in row {
                if !is_glyph(g) {
                    return Err(format_err(format!("glyph {:?} is not printable", g)));
                }
                let id = *ids.entry(g).or_insert_with(|| {
                    glyphs.push(g);
                    (glyphs.len() - 1) as u32
                });
                top_first.push(Color(id));
            }
        }
        let mut cells = Vec::with_capacity(width * height);
        for row in top_first.chunks(width).rev() {
            cells.extend_from_slice(row);
        }
        Pattern::new(width, height, cells, glyphs)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Color at `(x, y)`, 1-based, `y = 1` the bottom row.
    pub fn get(&self, x: usize, y: usize) -> Color {
        assert!(
            (1..=self.width).contains(&x) && (1..=self.height).contains(&y),
            "({x}, {y}) outside {}x{} pattern",
            self.width,
            self.height
        );
        self.cells[(y - 1) * self.width + (x - 1)]
    }

    pub fn glyphs(&self) -> &[char] {
        &self.glyphs
    }

    pub fn glyph(&self, c: Color) -> char {
        self.glyphs[c.index()]
    }

    pub fn color_of_glyph(&self, g: char) -> Option<Color> {
        self.glyphs
            .iter()
            .position(|&h| h == g)
            .map(|i| Color(i as u32))
    }

    /// Number of declared colors (glyph table size).
    pub fn palette_size(&self) -> usize {
        self.glyphs.len()
    }

    /// `color(P)`: the distinct colors that occur in the pattern, ascending.
    pub fn colors(&self) -> Vec<Color> {
        let mut seen = vec![false; self.glyphs.len()];
        for c in &self.cells {
            seen[c.index()] = true;
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Color(i as u32))
            .collect()
    }

    pub fn color_count(&self) -> usize {
        self.colors().len()
    }

    /// Column `x`, bottom to top.
    pub fn column(&self, x: usize) -> impl Iterator<Item = Color> + '_ {
        (1..=self.height).map(move |y| self.get(x, y))
    }

    /// Row `y`, left to right.
    pub fn row(&self, y: usize) -> &[Color] {
        &self.cells[(y - 1) * self.width..y * self.width]
    }

    /// The sub-pattern made of columns `1..=width`.
    pub fn truncate_columns(&self, width: usize) -> Result<Pattern> {
        if width == 0 || width > self.width {
            return Err(format_err(format!(
                "cannot truncate width {} to {}",
                self.width, width
            )));
        }
        Pattern::from_fn(width, self.height, self.glyphs.clone(), |x, y| {
            self.get(x, y)
        })
    }
}

/// Parses the pattern text format. A single trailing newline is tolerated.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let body = text
        .strip_suffix("\r\n")
        .or_else(|| text.strip_suffix('\n'))
        .unwrap_or(text);
    if body.is_empty() {
        return Err(format_err("empty pattern"));
    }
    let rows: Vec<Vec<char>> = body
        .split('\n')
        .map(|line| line.strip_suffix('\r').unwrap_or(line).chars().collect())
        .collect();
    if rows.iter().any(|r| r.is_empty()) {
        return Err(format_err("empty line in pattern"));
    }
    Pattern::from_glyph_rows(&rows)
}

/// Renders a pattern, top row first, rows joined by `\n`, no trailing newline.
pub fn render_pattern(p: &Pattern) -> String {
    let mut out = String::with_capacity((p.width + 1) * p.height);
    for y in (1..=p.height).rev() {
        out.extend(p.row(y).iter().map(|&c| p.glyph(c)));
        if y > 1 {
            out.push('\n');
        }
    }
    out
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pattern(s)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_pattern(self))
    }
}

/// Glyphs reserved for the named colors used by the reduction generators.
pub const RESERVED_GLYPHS: [char; 7] = ['c', 'g', 'o', 'p', 'r', 'w', 'b'];

/// The `i`-th glyph (0-based) of the numbered palette: digits, upper-case
/// letters, the unreserved lower-case letters, then Unicode letters.
pub fn numbered_glyph(i: usize) -> char {
    const ASCII: &str = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZadefhijklmnqstuvxyz";
    let ascii = ASCII.as_bytes();
    if i < ascii.len() {
        return ascii[i] as char;
    }
    // Latin Extended-A and -B, then CJK ideographs; all printable.
    let j = i - ascii.len();
    let latin = 0x0250 - 0x0100;
    let cp = if j < latin {
        0x0100 + j
    } else {
        0x4E00 + (j - latin)
    };
    char::from_u32(cp as u32).expect("palette code point")
}

/// Default glyphs `a, b, c, ...` for anonymous color ids.
pub fn default_glyphs(n: usize) -> Vec<char> {
    (0..n)
        .map(|i| {
            if i < 26 {
                (b'a' + i as u8) as char
            } else {
                numbered_glyph(i - 26)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_top_row_first() {
        let p = parse_pattern("ab\nba").unwrap();
        assert_eq!((p.width(), p.height()), (2, 2));
        assert_eq!(p.glyph(p.get(1, 2)), 'a');
        assert_eq!(p.glyph(p.get(1, 1)), 'b');
        assert_eq!(p.glyph(p.get(2, 1)), 'a');
        assert_eq!(render_pattern(&p), "ab\nba");
    }

    #[test]
    fn monochrome_row() {
        let p = parse_pattern("aaaa").unwrap();
        assert_eq!((p.width(), p.height()), (4, 1));
        assert_eq!(p.color_count(), 1);
    }

    #[test]
    fn ragged_and_empty_inputs_rejected() {
        assert!(matches!(parse_pattern("abc\nab"), Err(Error::Format(_))));
        assert!(matches!(parse_pattern(""), Err(Error::Format(_))));
        assert!(matches!(parse_pattern("\n"), Err(Error::Format(_))));
        assert!(matches!(parse_pattern("ab\n\nab"), Err(Error::Format(_))));
    }

    #[test]
    fn single_cell() {
        let p = parse_pattern("x").unwrap();
        assert_eq!(render_pattern(&p), "x");
    }

    #[test]
    fn trailing_newline_tolerated() {
        let p = parse_pattern("ab\nba\n").unwrap();
        assert_eq!(render_pattern(&p), "ab\nba");
    }

    #[test]
    fn ids_by_first_occurrence() {
        let p = parse_pattern("zyz\nxxy").unwrap();
        assert_eq!(p.glyphs(), &['z', 'y', 'x']);
        assert_eq!(p.get(1, 2), Color(0));
        assert_eq!(p.get(1, 1), Color(2));
    }

    #[test]
    fn numbered_palette_avoids_reserved_and_is_distinct() {
        let glyphs: Vec<char> = (0..2000).map(numbered_glyph).collect();
        let mut sorted = glyphs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), glyphs.len());
        assert!(glyphs
            .iter()
            .all(|g| !RESERVED_GLYPHS.contains(g) && is_glyph(*g)));
    }

    #[test]
    fn truncation_keeps_palette() {
        let p = parse_pattern("abc\ncba").unwrap();
        let q = p.truncate_columns(2).unwrap();
        assert_eq!(render_pattern(&q), "ab\ncb");
        assert_eq!(q.palette_size(), 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn canonical_text() -> impl Strategy<Value = String> {
            (1usize..6, 1usize..6).prop_flat_map(|(w, h)| {
                proptest::collection::vec(
                    proptest::sample::select(vec!['a', 'b', 'c', '#', 'é']),
                    w * h,
                )
                .prop_map(move |cells| {
                    cells
                        .chunks(w)
                        .map(|r| r.iter().collect::<String>())
                        .collect::<Vec<_>>()
                        .join("\n")
                })
            })
        }

        proptest! {
            #[test]
            fn render_inverts_parse(s in canonical_text()) {
                let p = parse_pattern(&s).unwrap();
                prop_assert_eq!(render_pattern(&p), s);
            }

            #[test]
            fn color_ids_are_dense(s in canonical_text()) {
                let p = parse_pattern(&s).unwrap();
                let distinct: std::collections::HashSet<char> = s.chars().filter(|c| *c != '\n').collect();
                prop_assert_eq!(p.palette_size(), distinct.len());
                prop_assert_eq!(p.color_count(), distinct.len());
            }
        }
    }
}
