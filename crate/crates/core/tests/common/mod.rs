#![allow(dead_code)]

use pats_core::pattern::{Color, Pattern};
use pats_core::rtas::{Glue, Rtas, Seed, TileSet, TileType};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every `w × h` pattern over `c` colors, glyphs `a, b, ...` by color id.
pub fn all_patterns(w: usize, h: usize, c: usize) -> Vec<Pattern> {
    let cells = w * h;
    let total = c.pow(cells as u32);
    let glyphs: Vec<char> = (0..c).map(|i| (b'a' + i as u8) as char).collect();
    (0..total)
        .map(|mut code| {
            let ids: Vec<Color> = (0..cells)
                .map(|_| {
                    let d = code % c;
                    code /= c;
                    Color(d as u32)
                })
                .collect();
            Pattern::new(w, h, ids, glyphs.clone()).unwrap()
        })
        .collect()
}

/// Every word of length `n` over the first `c` letters, as a height-1 pattern.
pub fn all_words(n: usize, c: usize) -> Vec<Pattern> {
    all_patterns(n, 1, c)
}

/// A random directed system: distinct `(W, S)` inputs, small glue alphabet.
pub fn random_directed_rtas(rng: &mut ChaCha8Rng) -> Rtas {
    let w = rng.gen_range(1..=4);
    let h = rng.gen_range(1..=4);
    let glues = rng.gen_range(1..=4u32);
    let k = rng.gen_range(1..=5usize).min((glues * glues) as usize);
    let mut inputs = Vec::new();
    while inputs.len() < k {
        let pair = (rng.gen_range(0..glues), rng.gen_range(0..glues));
        if !inputs.contains(&pair) {
            inputs.push(pair);
        }
    }
    let tiles = inputs
        .into_iter()
        .map(|(west, south)| {
            TileType::new(
                Color(rng.gen_range(0..2)),
                Glue(rng.gen_range(0..glues)),
                Glue(rng.gen_range(0..glues)),
                Glue(south),
                Glue(west),
            )
        })
        .collect();
    let seed = if rng.gen_bool(0.5) {
        Seed::Uniform {
            east: Glue(rng.gen_range(0..glues)),
            north: Glue(rng.gen_range(0..glues)),
        }
    } else {
        Seed::NonUniform {
            bottom: (0..w).map(|_| Glue(rng.gen_range(0..glues))).collect(),
            left: (0..h).map(|_| Glue(rng.gen_range(0..glues))).collect(),
        }
    };
    Rtas::new(TileSet::new(tiles).unwrap(), seed, w, h).unwrap()
}

/// Exhaustive 3-partition oracle: assigns elements to parts in index order,
/// never opening a second empty part.
pub fn partition_oracle(values: &[u32], n: usize, p: u32) -> Option<Vec<Vec<usize>>> {
    fn go(
        values: &[u32],
        p: u32,
        i: usize,
        parts: &mut Vec<Vec<usize>>,
        sums: &mut Vec<u32>,
    ) -> bool {
        if i == values.len() {
            return sums.iter().all(|&s| s == p);
        }
        let mut tried_empty = false;
        for b in 0..parts.len() {
            if sums[b] + values[i] > p {
                continue;
            }
            if parts[b].is_empty() {
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            parts[b].push(i);
            sums[b] += values[i];
            if go(values, p, i + 1, parts, sums) {
                return true;
            }
            parts[b].pop();
            sums[b] -= values[i];
        }
        false
    }
    let mut parts = vec![Vec::new(); n];
    let mut sums = vec![0; n];
    go(values, p, 0, &mut parts, &mut sums).then_some(parts)
}

/// Sorted multisets of `3n` positive integers with sum `pn ≤ max_sum`.
pub fn micro_instances(max_sum: u32) -> Vec<(Vec<u32>, usize, u32)> {
    fn multisets(len: usize, sum: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if sum == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for v in (1..=max.min(sum)).rev() {
            if sum - v < (len - 1) as u32 {
                continue;
            }
            acc.push(v);
            multisets(len - 1, sum - v, v, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1usize.. {
        if 3 * n as u32 > max_sum {
            break;
        }
        for p in 3..=max_sum / n as u32 {
            let mut sets = Vec::new();
            multisets(
                3 * n,
                p * n as u32,
                p * n as u32,
                &mut Vec::new(),
                &mut sets,
            );
            out.extend(sets.into_iter().map(|s| (s, n, p)));
        }
    }
    out
}

/// Distinct orderings of a multiset.
pub fn orderings(values: &[u32]) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let mut used = Vec::new();
        for i in 0..rest.len() {
            if used.contains(&rest[i]) {
                continue;
            }
            used.push(rest[i]);
            let v = rest.remove(i);
            acc.push(v);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut values.to_vec(), &mut Vec::new(), &mut out);
    out
}
