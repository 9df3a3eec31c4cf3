use crate::error::{Error, Result};
use crate::fst::{
    solve_encoding_by_search, transduce, transition_order, Fst, FstEncodingInstance, FstSkeleton,
    Rod, ThreePartitionInstance, Variant, DEFAULT_SEARCH_NODES,
};

/// A half-fixed interval: `2 * len` fixed states from `fixed_start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub fixed_start: usize,
    pub len: usize,
}

/// Where every gadget of the reduction lives among the states `0..num_states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateLayout {
    pub num_states: usize,
    pub modified: bool,
    /// One interval per element of `A`, in input order.
    pub intervals: Vec<Interval>,
    pub singletons: Vec<usize>,
    /// `(start, len)` of each box.
    pub boxes: Vec<(usize, usize)>,
}

impl StateLayout {
    pub fn new(inst: &ThreePartitionInstance, modified: bool) -> Self {
        let (n, p) = (inst.n(), inst.p() as usize);
        let shift = usize::from(modified);
        let mut intervals = Vec::with_capacity(3 * n);
        let mut at = shift;
        for &a in inst.values() {
            intervals.push(Interval {
                fixed_start: at,
                len: a as usize,
            });
            at += 2 * a as usize;
        }
        let base = 2 * p * n + shift;
        let mut singletons: Vec<usize> = (0..=n).map(|b| base + b * (p + 1)).collect();
        let boxes = (0..n).map(|b| (base + 1 + b * (p + 1), p)).collect();
        let mut num_states = 3 * p * n + n + 1 + shift;
        if modified && num_states % 3 == 0 {
            singletons.push(num_states);
            num_states += 1;
        }
        StateLayout {
            num_states,
            modified,
            intervals,
            singletons,
            boxes,
        }
    }

    pub fn rods(&self) -> Vec<Rod> {
        self.intervals
            .iter()
            .map(|iv| Rod {
                fixed_start: iv.fixed_start,
                len: iv.len,
            })
            .collect()
    }

    /// The fixed part of every solution: the 0-cycle, singleton loops, fixed
    /// halves, and in the modified layout the `(1,2)` loop on state 0.
    pub fn skeleton(&self) -> FstSkeleton {
        let k = self.num_states;
        let mut sk = FstSkeleton::new(k, 0, 2, if self.modified { 3 } else { 2 });
        for q in 0..k - 1 {
            sk.set(q, 0, q + 1, 0);
        }
        sk.set(k - 1, 0, 0, 1);
        if self.modified {
            sk.set(0, 1, 0, 2);
        }
        for &q in &self.singletons {
            sk.set(q, 1, q, 1);
        }
        for iv in &self.intervals {
            for j in 0..iv.len {
                sk.set(iv.fixed_start + 2 * j, 1, iv.fixed_start + 2 * j + 1, 1);
            }
        }
        sk.rods = self.rods();
        sk
    }
}

/// What a segment checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    Initial,
    FixedSingleton,
    HalfFixedTriple,
    HalfFixedInterval,
    ModifiedPrefix,
    ZeroOne,
}

/// A paired input/output substring `input → output`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub input: Vec<u8>,
    pub output: Vec<u8>,
}

fn zeros(n: usize) -> impl Iterator<Item = u8> {
    std::iter::repeat_n(0, n)
}

fn echo(kind: SegmentKind, input: Vec<u8>) -> Segment {
    Segment {
        kind,
        output: input.clone(),
        input,
    }
}

/// The segments in emission order.
pub fn segments(layout: &StateLayout) -> Vec<Segment> {
    let k = layout.num_states;
    let reset = if layout.modified {
        Segment {
            kind: SegmentKind::ZeroOne,
            input: vec![0, 1],
            output: vec![1, 2],
        }
    } else {
        Segment {
            kind: SegmentKind::ZeroOne,
            input: vec![0],
            output: vec![1],
        }
    };
    let prefix = Segment {
        kind: SegmentKind::ModifiedPrefix,
        input: [vec![1], zeros(k - 1).collect(), reset.input.clone()].concat(),
        output: [vec![2], zeros(k - 1).collect(), reset.output.clone()].concat(),
    };
    let mut bodies = Vec::new();
    bodies.push(Segment {
        kind: SegmentKind::Initial,
        input: zeros(k - 1)
            .chain(reset.input.iter().copied())
            .chain(zeros(k - 1))
            .collect(),
        output: zeros(k - 1)
            .chain(reset.output.iter().copied())
            .chain(zeros(k - 1))
            .collect(),
    });
    for &q in &layout.singletons {
        bodies.push(echo(
            SegmentKind::FixedSingleton,
            zeros(q).chain([1]).chain(zeros(k - 1 - q)).collect(),
        ));
    }
    for iv in &layout.intervals {
        for j in 0..iv.len {
            let a = iv.fixed_start + 2 * j;
            let b = a + 1;
            bodies.push(echo(
                SegmentKind::HalfFixedTriple,
                zeros(a).chain([1]).chain(zeros(k - 1 - b)).collect(),
            ));
            bodies.push(echo(
                SegmentKind::HalfFixedTriple,
                zeros(b).chain([1, 1]).chain(zeros(k - 1 - a)).collect(),
            ));
        }
        for j in 0..iv.len.saturating_sub(1) {
            let a = iv.fixed_start + 2 * j;
            let next = a + 2;
            bodies.push(echo(
                SegmentKind::HalfFixedInterval,
                zeros(a)
                    .chain([1, 1, 0, 1])
                    .chain(zeros(k - 1 - next))
                    .collect(),
            ));
        }
    }
    let mut out = Vec::with_capacity(2 * bodies.len() + 2);
    if layout.modified {
        out.push(prefix.clone());
    }
    for body in bodies {
        out.push(body);
        out.push(reset.clone());
    }
    if layout.modified {
        out.push(prefix);
    }
    out
}

/// A generated FST instance together with the structure that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FstReduction {
    pub instance: FstEncodingInstance,
    pub skeleton: FstSkeleton,
    pub layout: StateLayout,
    pub segments: Vec<Segment>,
}

impl FstReduction {
    fn build(
        inst: &ThreePartitionInstance,
        modified: bool,
        solution: impl FnOnce(&Self) -> Result<Option<Fst>>,
    ) -> Result<Self> {
        let layout = StateLayout::new(inst, modified);
        let segments = segments(&layout);
        let s: Vec<u8> = segments
            .iter()
            .flat_map(|g| g.input.iter().copied())
            .collect();
        let s_prime: Vec<u8> = segments
            .iter()
            .flat_map(|g| g.output.iter().copied())
            .collect();
        let k = layout.num_states;
        let mut red = FstReduction {
            instance: FstEncodingInstance::new(s, s_prime, k, None, Variant::Plain)?,
            skeleton: layout.skeleton(),
            layout,
            segments,
        };
        let fst = solution(&red)?.unwrap_or_else(|| red.skeleton.complete_with_loops());
        let (_, trace) = transduce(&fst, &red.instance.s)?;
        red.instance.order = Some(transition_order(&trace));
        red.instance.variant = if modified {
            Variant::ModifiedPromise
        } else {
            Variant::Promise
        };
        Ok(red)
    }
}

/// Reduces 3-partition to promise encoding by FST. The transition order is
/// read off the first FST found by rod search; an infeasible instance gets
/// the order of the loop-completed skeleton.
pub fn reduce_3partition_to_fst(inst: &ThreePartitionInstance) -> Result<FstReduction> {
    FstReduction::build(inst, false, |r| {
        solve_encoding_by_search(&r.instance, &r.skeleton, DEFAULT_SEARCH_NODES)
    })
}

/// As [`reduce_3partition_to_fst`], with the order taken from the FST that
/// packs `partition`.
pub fn reduce_3partition_to_fst_with(
    inst: &ThreePartitionInstance,
    partition: &[Vec<usize>],
) -> Result<FstReduction> {
    FstReduction::build(inst, false, |r| {
        build_intended_fst(&r.skeleton, &r.layout, inst, partition).map(Some)
    })
}

/// Reduces 3-partition to modified promise encoding by FST.
pub fn reduce_3partition_to_modified_fst(inst: &ThreePartitionInstance) -> Result<FstReduction> {
    FstReduction::build(inst, true, |r| {
        solve_encoding_by_search(&r.instance, &r.skeleton, DEFAULT_SEARCH_NODES)
    })
}

pub fn reduce_3partition_to_modified_fst_with(
    inst: &ThreePartitionInstance,
    partition: &[Vec<usize>],
) -> Result<FstReduction> {
    FstReduction::build(inst, true, |r| {
        build_intended_fst(&r.skeleton, &r.layout, inst, partition).map(Some)
    })
}

/// Completes `skeleton` by packing the rods of each part, in the listed
/// order, left to right into consecutive boxes. Parts hold 0-based indices
/// into `A`.
pub fn build_intended_fst(
    skeleton: &FstSkeleton,
    layout: &StateLayout,
    inst: &ThreePartitionInstance,
    partition: &[Vec<usize>],
) -> Result<Fst> {
    if partition.len() != layout.boxes.len() {
        return Err(Error::Packing(format!(
            "{} parts for {} boxes",
            partition.len(),
            layout.boxes.len()
        )));
    }
    let mut seen = vec![false; inst.values().len()];
    for (b, part) in partition.iter().enumerate() {
        let mut sum = 0u64;
        for &i in part {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Packing(format!(
                    "element index {} missing or repeated",
                    i
                )));
            }
            sum += inst.values()[i] as u64;
        }
        if sum != inst.p() as u64 {
            return Err(Error::Packing(format!(
                "part {} sums to {}, not {}",
                b + 1,
                sum,
                inst.p()
            )));
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Packing("not every element is assigned".into()));
    }
    let mut sk = skeleton.clone();
    let rods = layout.rods();
    for (part, &(start, _)) in partition.iter().zip(&layout.boxes) {
        let mut at = start;
        for &i in part {
            if !sk.try_place(rods[i], at) {
                return Err(Error::Packing(format!(
                    "rod {} collides at state {}",
                    i, at
                )));
            }
            at += rods[i].len;
        }
    }
    Ok(sk.complete_with_loops())
}

/// Reads the partition an FST encodes: each rod's free states, grouped by
/// the box holding them and ordered by position. `None` if some rod is not
/// inside a box.
pub fn decode_partition(layout: &StateLayout, fst: &Fst) -> Option<Vec<Vec<usize>>> {
    let mut parts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); layout.boxes.len()];
    for (i, iv) in layout.intervals.iter().enumerate() {
        let (r, _) = fst.step(iv.fixed_start + 1, 1);
        let b = layout
            .boxes
            .iter()
            .position(|&(s, len)| r >= s && r + iv.len <= s + len)?;
        parts[b].push((r, i));
    }
    Some(
        parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.into_iter().map(|(_, i)| i).collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fst::verify_promises;

    fn fig2() -> ThreePartitionInstance {
        ThreePartitionInstance::new(vec![1, 1, 2, 1, 1, 2], 2, 4, true).unwrap()
    }

    fn fig2_partition() -> Vec<Vec<usize>> {
        vec![vec![1, 3, 5], vec![0, 2, 4]]
    }

    #[test]
    fn state_count() {
        assert_eq!(StateLayout::new(&fig2(), false).num_states, 27);
        assert_eq!(StateLayout::new(&fig2(), true).num_states, 28);
        let one = ThreePartitionInstance::new(vec![2, 3, 2], 1, 7, true).unwrap();
        assert_eq!(StateLayout::new(&one, false).num_states, 23);
        // 24 states after adding the new one: padded to 25.
        assert_eq!(StateLayout::new(&one, true).num_states, 25);
    }

    #[test]
    fn layout_partitions_states() {
        for modified in [false, true] {
            let l = StateLayout::new(&fig2(), modified);
            let mut owner = vec![0u8; l.num_states];
            for iv in &l.intervals {
                for q in iv.fixed_start..iv.fixed_start + 2 * iv.len {
                    owner[q] += 1;
                }
            }
            for &q in &l.singletons {
                owner[q] += 1;
            }
            for &(s, len) in &l.boxes {
                for q in s..s + len {
                    owner[q] += 1;
                }
            }
            if modified {
                owner[0] += 1;
            }
            assert!(owner.iter().all(|&c| c == 1), "{:?}", owner);
        }
    }

    #[test]
    fn first_segment_shape() {
        let red = reduce_3partition_to_fst_with(&fig2(), &fig2_partition()).unwrap();
        let k = red.instance.k;
        let s = &red.instance.s;
        let sp = &red.instance.s_prime;
        assert!(s[..2 * k - 1].iter().all(|&a| a == 0));
        assert!(sp[..2 * k - 1]
            .iter()
            .enumerate()
            .all(|(i, &b)| b == u8::from(i == k - 1)));
        for g in &red.segments {
            assert_eq!(g.input.len(), g.output.len());
        }
    }

    #[test]
    fn intended_fst_solves_fig2() {
        let red = reduce_3partition_to_fst_with(&fig2(), &fig2_partition()).unwrap();
        let fst =
            build_intended_fst(&red.skeleton, &red.layout, &fig2(), &fig2_partition()).unwrap();
        assert_eq!(
            transduce(&fst, &red.instance.s).unwrap().0,
            red.instance.s_prime
        );
        assert!(verify_promises(&fst, &red.instance, false).unwrap().holds());
        assert_eq!(decode_partition(&red.layout, &fst), Some(fig2_partition()));
    }

    #[test]
    fn modified_frame() {
        let red = reduce_3partition_to_modified_fst_with(&fig2(), &fig2_partition()).unwrap();
        let k = red.instance.k;
        assert_ne!(k % 3, 0);
        let fst =
            build_intended_fst(&red.skeleton, &red.layout, &fig2(), &fig2_partition()).unwrap();
        assert!(verify_promises(&fst, &red.instance, false).unwrap().holds());
    }

    #[test]
    fn bad_partitions_rejected() {
        let red = reduce_3partition_to_fst_with(&fig2(), &fig2_partition()).unwrap();
        let bad = vec![vec![0, 1, 3], vec![2, 4, 5]];
        assert!(matches!(
            build_intended_fst(&red.skeleton, &red.layout, &fig2(), &bad),
            Err(Error::Packing(_))
        ));
        let repeated = vec![vec![1, 3, 5], vec![0, 2, 2]];
        assert!(build_intended_fst(&red.skeleton, &red.layout, &fig2(), &repeated).is_err());
    }

    #[test]
    fn search_finds_a_valid_packing() {
        let red = reduce_3partition_to_fst(&fig2()).unwrap();
        let fst = solve_encoding_by_search(&red.instance, &red.skeleton, DEFAULT_SEARCH_NODES)
            .unwrap()
            .unwrap();
        let parts = decode_partition(&red.layout, &fst).unwrap();
        for part in &parts {
            assert_eq!(part.iter().map(|&i| fig2().values()[i]).sum::<u32>(), 4);
        }
    }
}
