use std::time::Instant;

use super::{SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::pattern::{Color, Pattern};
use crate::rtas::{Glue, Rtas, Seed, TileSet, TileType};

/// `z[i]` is the length of the longest common prefix of `s` and `s[i..]`;
/// `z[0] = s.len()`.
pub fn z_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = z[i - l].min(r - i);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// Length of the longest suffix of `word` that also ends at an earlier
/// position, and the 1-based start of the latest such earlier occurrence.
pub fn longest_repeated_suffix<T: PartialEq>(word: &[T]) -> (usize, Option<usize>) {
    let n = word.len();
    // Z-function of the reversed word, indexing `word` from the end.
    let at = |i: usize| &word[n - 1 - i];
    let mut z = vec![0u32; n];
    let mut best = (0, None);
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        let mut len = if i < r {
            (z[i - l] as usize).min(r - i)
        } else {
            0
        };
        while i + len < n && at(len) == at(i + len) {
            len += 1;
        }
        z[i] = len as u32;
        if i + len > r {
            l = i;
            r = i + len;
        }
        if len > best.0 {
            best = (len, Some(n - i - len + 1));
        }
    }
    best
}

/// Minimum uniform tile set for a height-1 pattern in linear time: with `y`
/// the longest suffix occurring earlier, `n - |y|` types suffice and are
/// necessary. The witness spells the first `n - |y|` cells with a chain of
/// types and loops the last one back into the earlier occurrence of `y`.
pub fn solve_uniform_h1(p: &Pattern) -> Result<SolveResult> {
    let started = Instant::now();
    if p.height() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected height 1, got {}",
            p.height()
        )));
    }
    let word: &[Color] = p.row(1);
    let n = word.len();
    let (y, start) = longest_repeated_suffix(word);
    let m = n - y;
    let north = Glue(m as u32 + 1);
    let tiles: Vec<TileType> = (1..=m)
        .map(|j| {
            let east = match start {
                Some(i) if j == m => Glue(i as u32 - 1),
                _ => Glue(j as u32),
            };
            TileType::new(word[j - 1], north, east, north, Glue(j as u32 - 1))
        })
        .collect();
    let witness = Rtas::new(
        TileSet::from_distinct(tiles),
        Seed::Uniform {
            east: Glue(0),
            north,
        },
        n,
        1,
    )?;
    Ok(SolveResult {
        min_size: m,
        witness,
        stats: SolveStats {
            nodes: 0,
            elapsed: started.elapsed(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_pattern;
    use crate::rtas::uniquely_assembles;

    fn m(word: &str) -> usize {
        let p = parse_pattern(word).unwrap();
        let r = solve_uniform_h1(&p).unwrap();
        assert!(uniquely_assembles(&r.witness, &p).unwrap(), "{}", word);
        assert_eq!(r.witness.size(), r.min_size);
        r.min_size
    }

    #[test]
    fn anchors() {
        assert_eq!(m("aaaa"), 1);
        assert_eq!(m("abc"), 3);
        assert_eq!(m("abcabc"), 3);
        assert_eq!(m("ababab"), 2);
        assert_eq!(m("a"), 1);
        assert_eq!(m("abaab"), 3);
    }

    #[test]
    fn z_values() {
        assert_eq!(z_function(b"aabxaab"), vec![7, 1, 0, 0, 3, 1, 0]);
        assert_eq!(longest_repeated_suffix(b"abcab"), (2, Some(1)));
        assert_eq!(longest_repeated_suffix(b"abc"), (0, None));
    }

    #[test]
    fn rejects_taller_patterns() {
        assert!(solve_uniform_h1(&parse_pattern("a\na").unwrap()).is_err());
    }
}
