use crate::error::{Error, Result};
use crate::fst::{FstEncodingInstance, Variant};
use crate::pattern::{numbered_glyph, Pattern};

pub const CYAN: char = 'c';
pub const GRAY: char = 'g';
pub const ORANGE: char = 'o';
pub const PINK: char = 'p';
pub const RED: char = 'r';
pub const WHITE: char = 'w';
pub const BLACK: char = 'b';

/// Seed kind a PATS instance is posed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatsVariant {
    NonUniform,
    Uniform,
}

impl PatsVariant {
    pub fn name(self) -> &'static str {
        match self {
            PatsVariant::NonUniform => "nonuniform",
            PatsVariant::Uniform => "uniform",
        }
    }
}

/// Is there an RTAS with at most `budget` tile types uniquely assembling
/// `pattern`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatsInstance {
    pub pattern: Pattern,
    pub budget: usize,
    pub variant: PatsVariant,
}

fn input_glyph(a: u8) -> Result<char> {
    match a {
        0 => Ok(PINK),
        1 => Ok(RED),
        _ => Err(Error::Alphabet { symbol: a, size: 2 }),
    }
}

/// Glyph of the transition numbered `t` (1-based).
pub fn transition_glyph(t: usize) -> char {
    numbered_glyph(t - 1)
}

fn rows(top: Vec<char>, bottom: Vec<char>) -> Result<Pattern> {
    Pattern::from_glyph_rows(&[top, bottom])
}

/// Bottom row spells `S` in pink/red, top row the transition sequence.
pub fn reduce_fst_to_pats_nonuniform(inst: &FstEncodingInstance) -> Result<PatsInstance> {
    let order = inst.order.as_ref().ok_or(Error::MissingOrder)?;
    let bottom = inst
        .s
        .iter()
        .map(|&a| input_glyph(a))
        .collect::<Result<Vec<_>>>()?;
    let top = order.iter().map(|&t| transition_glyph(t)).collect();
    Ok(PatsInstance {
        pattern: rows(top, bottom)?,
        budget: 2 * inst.k + 2,
        variant: PatsVariant::NonUniform,
    })
}

/// Input half, white/black separator, transduction half.
pub fn reduce_fst_to_pats_uniform(inst: &FstEncodingInstance) -> Result<PatsInstance> {
    let order = inst.order.as_ref().ok_or(Error::MissingOrder)?;
    let n = inst.s.len();
    let mut top = inst
        .s
        .iter()
        .map(|&a| input_glyph(a))
        .collect::<Result<Vec<_>>>()?;
    top.push(WHITE);
    top.extend(order.iter().map(|&t| transition_glyph(t)));
    let mut bottom = vec![ORANGE; n];
    bottom.push(BLACK);
    bottom.extend(std::iter::repeat_n(ORANGE, n));
    Ok(PatsInstance {
        pattern: rows(top, bottom)?,
        budget: n + 2 * inst.k + 4,
        variant: PatsVariant::Uniform,
    })
}

/// Top row of block `i` of the FST-constructor gadget, without its last
/// three cells.
pub fn block_word(k: usize, i: usize) -> Vec<char> {
    let s = (3 * i) % k;
    if i > 0 && s <= k - 3 {
        let mut w = vec![CYAN; s - 1];
        w.push(GRAY);
        w.extend(std::iter::repeat_n(CYAN, k - 3 - s));
        w
    } else {
        vec![CYAN; k - 3]
    }
}

/// The 3-color height-2 pattern: a leading column, the transduction gadget
/// `φ(S')` over orange, and `K` blocks of width `K`.
pub fn reduce_modified_fst_to_3pats(inst: &FstEncodingInstance) -> Result<PatsInstance> {
    if inst.variant != Variant::ModifiedPromise {
        return Err(Error::Variant(format!(
            "expected a modified promise instance, got {}",
            inst.variant.name()
        )));
    }
    let k = inst.k;
    if k < 4 {
        return Err(Error::Variant(format!(
            "K = {} is too small for the block gadget",
            k
        )));
    }
    let mut top = vec![CYAN];
    let mut bottom = vec![ORANGE];
    for &b in &inst.s_prime {
        top.push([CYAN, GRAY, ORANGE][b as usize]);
        bottom.push(ORANGE);
    }
    for i in 0..k {
        top.extend(block_word(k, i));
        top.extend([if i + 1 == k { ORANGE } else { GRAY }; 3]);
        bottom.extend(std::iter::repeat_n(CYAN, k - 1));
        bottom.push(GRAY);
    }
    Ok(PatsInstance {
        pattern: rows(top, bottom)?,
        budget: inst.s_prime.len() + 2 * k + 2,
        variant: PatsVariant::Uniform,
    })
}
