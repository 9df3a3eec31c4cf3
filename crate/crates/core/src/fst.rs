//! Deterministic finite state transducers, the encoding-by-FST instance
//! family with its promise checks, and the rod-placement search.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{format_err, Error, Result};

/// One step of a transduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: usize,
    pub input: u8,
    pub to: usize,
    pub output: u8,
}

/// A complete deterministic transducer. States are `0..num_states`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fst {
    num_states: usize,
    start: usize,
    in_size: u8,
    out_size: u8,
    delta: Vec<(usize, u8)>,
}

impl Fst {
    /// `delta[q * in_size + a]` is the image of `(q, a)`.
    pub fn new(
        num_states: usize,
        start: usize,
        in_size: u8,
        out_size: u8,
        delta: Vec<(usize, u8)>,
    ) -> Result<Self> {
        if num_states == 0 || start >= num_states {
            return Err(Error::Validation(
                "need at least one state and a valid start".into(),
            ));
        }
        if in_size == 0 || delta.len() != num_states * in_size as usize {
            return Err(Error::Validation("transition table is not total".into()));
        }
        for &(q, b) in &delta {
            if q >= num_states {
                return Err(Error::Validation(format!(
                    "target state {} out of range",
                    q
                )));
            }
            if b >= out_size {
                return Err(Error::Alphabet {
                    symbol: b,
                    size: out_size,
                });
            }
        }
        Ok(Fst {
            num_states,
            start,
            in_size,
            out_size,
            delta,
        })
    }

    /// The one-state transducer copying `{0, .., size-1}`.
    pub fn identity(size: u8) -> Self {
        Fst::new(1, 0, size, size, (0..size).map(|a| (0, a)).collect()).expect("identity is total")
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn in_size(&self) -> u8 {
        self.in_size
    }

    pub fn out_size(&self) -> u8 {
        self.out_size
    }

    pub fn step(&self, q: usize, a: u8) -> (usize, u8) {
        self.delta[q * self.in_size as usize + a as usize]
    }

    /// Every transition of the table, state-major.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        (0..self.num_states).flat_map(move |q| {
            (0..self.in_size).map(move |a| {
                let (to, output) = self.step(q, a);
                Transition {
                    from: q,
                    input: a,
                    to,
                    output,
                }
            })
        })
    }
}

/// Runs `t` on `s`, returning the output and the traversed transitions.
pub fn transduce(t: &Fst, s: &[u8]) -> Result<(Vec<u8>, Vec<Transition>)> {
    let mut q = t.start;
    let mut out = Vec::with_capacity(s.len());
    let mut trace = Vec::with_capacity(s.len());
    for &a in s {
        if a >= t.in_size {
            return Err(Error::Alphabet {
                symbol: a,
                size: t.in_size,
            });
        }
        let (to, b) = t.step(q, a);
        out.push(b);
        trace.push(Transition {
            from: q,
            input: a,
            to,
            output: b,
        });
        q = to;
    }
    Ok((out, trace))
}

/// Numbers transitions `1, 2, ..` by first traversal and rewrites the trace
/// with those numbers.
pub fn transition_order(trace: &[Transition]) -> Vec<usize> {
    canonical_order(trace.iter().map(|t| (t.from, t.input)))
}

fn canonical_order<K: std::hash::Hash + Eq>(items: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    items
        .map(|k| {
            let next = ids.len() + 1;
            *ids.entry(k).or_insert(next)
        })
        .collect()
}

/// A transducer with some transitions left open, plus the rods whose
/// placement completes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FstSkeleton {
    pub num_states: usize,
    pub start: usize,
    pub in_size: u8,
    pub out_size: u8,
    pub delta: Vec<Option<(usize, u8)>>,
    pub rods: Vec<Rod>,
}

/// A run of `len` free states attached to the fixed pairs starting at
/// `fixed_start`. Placing it at `r` closes the 3-cycles
/// `fixed_start + 2k → fixed_start + 2k + 1 → r + k → fixed_start + 2k` on 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rod {
    pub fixed_start: usize,
    pub len: usize,
}

impl FstSkeleton {
    pub fn new(num_states: usize, start: usize, in_size: u8, out_size: u8) -> Self {
        FstSkeleton {
            num_states,
            start,
            in_size,
            out_size,
            delta: vec![None; num_states * in_size as usize],
            rods: Vec::new(),
        }
    }

    pub fn get(&self, q: usize, a: u8) -> Option<(usize, u8)> {
        self.delta[q * self.in_size as usize + a as usize]
    }

    pub fn set(&mut self, q: usize, a: u8, to: usize, out: u8) {
        self.delta[q * self.in_size as usize + a as usize] = Some((to, out));
    }

    fn clear(&mut self, q: usize, a: u8) {
        self.delta[q * self.in_size as usize + a as usize] = None;
    }

    /// The (state, target) pairs that placing `rod` at `r` would define on
    /// input 1, or `None` if it leaves the state range.
    fn rod_edges(&self, rod: Rod, r: usize) -> Option<Vec<(usize, usize)>> {
        if r + rod.len > self.num_states || rod.fixed_start + 2 * rod.len > self.num_states {
            return None;
        }
        Some(
            (0..rod.len)
                .flat_map(|k| {
                    [
                        (rod.fixed_start + 2 * k + 1, r + k),
                        (r + k, rod.fixed_start + 2 * k),
                    ]
                })
                .collect(),
        )
    }

    /// Whether [`FstSkeleton::try_place`] would succeed.
    pub fn can_place(&self, rod: Rod, r: usize) -> bool {
        match self.rod_edges(rod, r) {
            Some(edges) => edges.iter().enumerate().all(|(i, &(q, _))| {
                self.get(q, 1).is_none() && edges[..i].iter().all(|&(p, _)| p != q)
            }),
            None => false,
        }
    }

    /// Places `rod` at `r` if every affected 1-transition is still open.
    pub fn try_place(&mut self, rod: Rod, r: usize) -> bool {
        let Some(edges) = self.rod_edges(rod, r) else {
            return false;
        };
        let mut done = Vec::with_capacity(edges.len());
        for (q, to) in edges {
            if self.get(q, 1).is_some() {
                for &q in &done {
                    self.clear(q, 1);
                }
                return false;
            }
            self.set(q, 1, to, 1);
            done.push(q);
        }
        true
    }

    fn unplace(&mut self, rod: Rod, r: usize) {
        for (q, _) in self.rod_edges(rod, r).expect("placed rod fits") {
            self.clear(q, 1);
        }
    }

    /// Fills every open 1-transition with a `(1,1)` self-loop and every other
    /// open transition with an output-0 self-loop.
    pub fn complete_with_loops(&self) -> Fst {
        let delta = (0..self.num_states)
            .flat_map(|q| (0..self.in_size).map(move |a| (q, a)))
            .map(|(q, a)| self.get(q, a).unwrap_or((q, if a == 1 { 1 } else { 0 })))
            .collect();
        Fst::new(
            self.num_states,
            self.start,
            self.in_size,
            self.out_size,
            delta,
        )
        .expect("skeleton targets are in range")
    }

    /// Number of open transitions on input 1.
    pub fn open_one_transitions(&self) -> usize {
        (0..self.num_states)
            .filter(|&q| self.get(q, 1).is_none())
            .count()
    }

    /// Runs the partial table on `s` against `expect`. Returns `Ok(true)` if
    /// the whole string is transduced correctly, `Ok(false)` if an open
    /// transition is reached first, and `Err(())` on a mismatch.
    fn partial_run(&self, s: &[u8], expect: &[u8]) -> std::result::Result<bool, ()> {
        let mut q = self.start;
        for (&a, &b) in s.iter().zip(expect) {
            match self.get(q, a) {
                None => return Ok(false),
                Some((to, out)) if out == b => q = to,
                Some(_) => return Err(()),
            }
        }
        Ok(true)
    }
}

/// Which problem an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Promise,
    ModifiedPromise,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Promise => "promise",
            Variant::ModifiedPromise => "modified",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "promise" => Ok(Variant::Promise),
            "modified" => Ok(Variant::ModifiedPromise),
            other => Err(format_err(format!("unknown variant {:?}", other))),
        }
    }
}

/// Does an FST with at most `k` states transduce `s` to `s_prime`?
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FstEncodingInstance {
    pub s: Vec<u8>,
    pub s_prime: Vec<u8>,
    pub k: usize,
    pub order: Option<Vec<usize>>,
    pub variant: Variant,
}

/// `1 0^k 1`.
pub fn modified_frame_input(k: usize) -> Vec<u8> {
    let mut v = vec![1];
    v.extend(std::iter::repeat_n(0, k));
    v.push(1);
    v
}

/// `2 0^(k-1) 1 2`.
pub fn modified_frame_output(k: usize) -> Vec<u8> {
    let mut v = vec![2];
    v.extend(std::iter::repeat_n(0, k - 1));
    v.extend([1, 2]);
    v
}

impl FstEncodingInstance {
    pub fn new(
        s: Vec<u8>,
        s_prime: Vec<u8>,
        k: usize,
        order: Option<Vec<usize>>,
        variant: Variant,
    ) -> Result<Self> {
        if s.len() != s_prime.len() {
            return Err(Error::Validation(format!(
                "|S| = {} but |S'| = {}",
                s.len(),
                s_prime.len()
            )));
        }
        if k == 0 {
            return Err(Error::Validation("K must be positive".into()));
        }
        if let Some(&a) = s.iter().find(|&&a| a > 1) {
            return Err(Error::Alphabet { symbol: a, size: 2 });
        }
        let out_size = if variant == Variant::Promise { 2 } else { 3 };
        if let Some(&b) = s_prime.iter().find(|&&b| b >= out_size) {
            return Err(Error::Alphabet {
                symbol: b,
                size: out_size,
            });
        }
        match (&order, variant) {
            (Some(_), Variant::Plain) => {
                return Err(Error::Validation(
                    "plain instances carry no transition order".into(),
                ))
            }
            (None, Variant::Promise | Variant::ModifiedPromise) => return Err(Error::MissingOrder),
            (Some(o), _) => {
                if o.len() != s.len() || o.iter().any(|&t| t == 0 || t > 2 * k) {
                    return Err(Error::Validation(format!(
                        "order must have {} entries in 1..={}",
                        s.len(),
                        2 * k
                    )));
                }
            }
            (None, Variant::Plain) => {}
        }
        if variant == Variant::ModifiedPromise {
            if k.is_multiple_of(3) {
                return Err(Error::Validation(format!("K = {} is a multiple of 3", k)));
            }
            let (fi, fo) = (modified_frame_input(k), modified_frame_output(k));
            let framed =
                |v: &[u8], f: &[u8]| v.len() >= f.len() && v.starts_with(f) && v.ends_with(f);
            if !framed(&s, &fi) || !framed(&s_prime, &fo) {
                return Err(Error::Validation(
                    "modified instance lacks the 10^K1 -> 20^(K-1)12 frame".into(),
                ));
            }
        }
        Ok(FstEncodingInstance {
            s,
            s_prime,
            k,
            order,
            variant,
        })
    }

    /// Output alphabet size: binary for promise instances, `{0, 1, 2}`
    /// otherwise.
    pub fn out_size(&self) -> u8 {
        if self.variant == Variant::Promise {
            2
        } else {
            3
        }
    }

    /// The same strings and bound with the order dropped.
    pub fn to_plain(&self) -> FstEncodingInstance {
        FstEncodingInstance {
            order: None,
            variant: Variant::Plain,
            ..self.clone()
        }
    }
}

/// Outcome of [`verify_promises`]: empty `violations` means every promise holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PromiseReport {
    pub violations: Vec<String>,
}

impl PromiseReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the promises of `inst.variant` for `t` on `inst.s`. With
/// `skip_in_degree` the two incoming-transition promises are not checked.
/// Transduction correctness itself is reported too.
pub fn verify_promises(
    t: &Fst,
    inst: &FstEncodingInstance,
    skip_in_degree: bool,
) -> Result<PromiseReport> {
    let mut v = Vec::new();
    if t.num_states > inst.k {
        v.push(format!("{} states exceed K = {}", t.num_states, inst.k));
    }
    let (out, trace) = transduce(t, &inst.s)?;
    if out != inst.s_prime {
        let at = out
            .iter()
            .zip(&inst.s_prime)
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        v.push(format!("output differs from S' at position {}", at + 1));
    }
    if inst.variant == Variant::Plain {
        return Ok(PromiseReport { violations: v });
    }
    if !skip_in_degree {
        for a in 0..t.in_size.min(2) {
            let mut indeg = vec![0usize; t.num_states];
            for tr in t.transitions().filter(|tr| tr.input == a) {
                indeg[tr.to] += 1;
            }
            for (q, &d) in indeg.iter().enumerate() {
                if d != 1 {
                    v.push(format!("state {} has {} incoming {}-transitions", q, d, a));
                }
            }
        }
    }
    let used: HashSet<Transition> = trace.iter().copied().collect();
    let mut kinds: HashMap<(u8, u8), usize> = HashMap::new();
    for tr in &used {
        *kinds.entry((tr.input, tr.output)).or_default() += 1;
    }
    let k = inst.k;
    let expected: &[((u8, u8), usize)] = match inst.variant {
        Variant::Promise => &[((0, 0), k - 1), ((1, 1), k), ((0, 1), 1)],
        _ => &[((0, 0), k - 1), ((1, 1), k - 1), ((0, 1), 1), ((1, 2), 1)],
    };
    for &(kind, want) in expected {
        let got = kinds.get(&kind).copied().unwrap_or(0);
        if got != want {
            v.push(format!(
                "{} distinct {:?}-transitions used, expected {}",
                got, kind, want
            ));
        }
    }
    for (&kind, &got) in &kinds {
        if !expected.iter().any(|&(e, _)| e == kind) {
            v.push(format!("{} unexpected {:?}-transitions used", got, kind));
        }
    }
    if inst.variant == Variant::ModifiedPromise {
        for (i, tr) in trace.iter().enumerate() {
            if (tr.input, tr.output) == (0, 1) {
                match trace.get(i + 1) {
                    Some(next) if (next.input, next.output) == (1, 2) => {}
                    _ => v.push(format!(
                        "(0,1)-transition at position {} not followed by a (1,2)",
                        i + 1
                    )),
                }
            }
        }
        for tr in t.transitions().filter(|tr| (tr.input, tr.output) == (1, 1)) {
            if !on_short_one_cycle(t, tr.from) {
                v.push(format!(
                    "(1,1)-transition from state {} is not on a 1- or 3-cycle",
                    tr.from
                ));
            }
        }
    }
    if let Some(order) = &inst.order {
        if canonical_order(order.iter()) != transition_order(&trace) {
            v.push("traversal order differs from the given transition order".into());
        }
    }
    Ok(PromiseReport { violations: v })
}

fn on_short_one_cycle(t: &Fst, q: usize) -> bool {
    let mut cur = q;
    for steps in 1..=3 {
        let (to, out) = t.step(cur, 1);
        if out != 1 {
            return false;
        }
        cur = to;
        if cur == q {
            return steps == 1 || steps == 3;
        }
    }
    false
}

/// Default node cap for [`solve_encoding_by_search`].
pub const DEFAULT_SEARCH_NODES: u64 = 50_000_000;

/// Searches rod placements completing `skeleton` into an FST that
/// transduces `inst.s` to `inst.s_prime` (and keeps the promises unless the
/// instance is plain). Rods are placed longest first; open 1-transitions
/// left at the end become `(1,1)` self-loops. `Ok(None)` means infeasible.
pub fn solve_encoding_by_search(
    inst: &FstEncodingInstance,
    skeleton: &FstSkeleton,
    node_cap: u64,
) -> Result<Option<Fst>> {
    let mut found = enumerate_encodings(inst, skeleton, node_cap, 1)?;
    Ok(found.pop())
}

/// Like [`solve_encoding_by_search`] but collects up to `limit` solutions in
/// search order.
pub fn enumerate_encodings(
    inst: &FstEncodingInstance,
    skeleton: &FstSkeleton,
    node_cap: u64,
    limit: usize,
) -> Result<Vec<Fst>> {
    let mut rods = skeleton.rods.clone();
    rods.sort_by_key(|r| std::cmp::Reverse(r.len));
    let mut search = RodSearch {
        inst,
        rods,
        sk: skeleton.clone(),
        nodes: 0,
        node_cap,
        limit,
        found: Vec::new(),
    };
    search.sk.rods.clear();
    search.dfs(0)?;
    Ok(search.found)
}

struct RodSearch<'a> {
    inst: &'a FstEncodingInstance,
    rods: Vec<Rod>,
    sk: FstSkeleton,
    nodes: u64,
    node_cap: u64,
    limit: usize,
    found: Vec<Fst>,
}

impl RodSearch<'_> {
    fn dfs(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::SearchBudgetExceeded(self.node_cap));
        }
        if self
            .sk
            .partial_run(&self.inst.s, &self.inst.s_prime)
            .is_err()
        {
            return Ok(());
        }
        if i == self.rods.len() {
            let fst = self.sk.complete_with_loops();
            let ok = match self.inst.variant {
                Variant::Plain => transduce(&fst, &self.inst.s)?.0 == self.inst.s_prime,
                _ => verify_promises(&fst, self.inst, false)?.holds(),
            };
            if ok {
                self.found.push(fst);
            }
            return Ok(());
        }
        let remaining: usize = self.rods[i..].iter().map(|r| 2 * r.len).sum();
        if self.sk.open_one_transitions() < remaining {
            return Ok(());
        }
        let k = self.sk.num_states;
        if !self.rods[i + 1..]
            .iter()
            .all(|&rod| (0..k).any(|r| self.sk.can_place(rod, r)))
        {
            return Ok(());
        }
        let rod = self.rods[i];
        for r in 0..k {
            if self.found.len() >= self.limit {
                return Ok(());
            }
            if self.sk.try_place(rod, r) {
                self.dfs(i + 1)?;
                self.sk.unplace(rod, r);
            }
        }
        Ok(())
    }
}

/// `3n` positive integers to be split into `n` parts of sum `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreePartitionInstance {
    values: Vec<u32>,
    n: usize,
    p: u32,
}

impl ThreePartitionInstance {
    /// Validates `|A| = 3n`, positivity, `ΣA = pn`, and unless `relaxed`,
    /// `p/4 < a < p/2` for every element.
    pub fn new(values: Vec<u32>, n: usize, p: u32, relaxed: bool) -> Result<Self> {
        if n == 0 || values.len() != 3 * n {
            return Err(Error::Validation(format!(
                "need 3n = {} values, got {}",
                3 * n,
                values.len()
            )));
        }
        if values.contains(&0) {
            return Err(Error::Validation("values must be positive".into()));
        }
        let sum: u64 = values.iter().map(|&a| a as u64).sum();
        if sum != p as u64 * n as u64 {
            return Err(Error::Validation(format!(
                "sum {} differs from pn = {}",
                sum,
                p as u64 * n as u64
            )));
        }
        if !relaxed {
            if let Some(&a) = values.iter().find(|&&a| !(4 * a > p && 2 * a < p)) {
                return Err(Error::Validation(format!(
                    "{} violates p/4 < a < p/2 for p = {}",
                    a, p
                )));
            }
        }
        Ok(ThreePartitionInstance { values, n, p })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

fn kv_pairs(text: &str) -> Result<Vec<(&str, &str)>> {
    text.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| format_err(format!("expected key=value, got {:?}", tok)))
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| format_err(format!("{}: not a number: {:?}", key, v)))
}

fn parse_digits(key: &str, v: &str) -> Result<Vec<u8>> {
    v.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| format_err(format!("{}: not a digit string: {:?}", key, v)))
        })
        .collect()
}

fn digits(v: &[u8]) -> String {
    v.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Parses `n=<int> p=<int> a=<comma list>`.
pub fn parse_three_partition(text: &str, relaxed: bool) -> Result<ThreePartitionInstance> {
    let (mut n, mut p, mut a) = (None, None, None);
    for (k, v) in kv_pairs(text)? {
        match k {
            "n" => n = Some(parse_num::<usize>(k, v)?),
            "p" => p = Some(parse_num::<u32>(k, v)?),
            "a" => {
                a = Some(
                    v.split(',')
                        .map(|x| parse_num::<u32>(k, x))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            other => return Err(format_err(format!("unknown key {:?}", other))),
        }
    }
    let missing = |k: &str| format_err(format!("missing {}=", k));
    ThreePartitionInstance::new(
        a.ok_or_else(|| missing("a"))?,
        n.ok_or_else(|| missing("n"))?,
        p.ok_or_else(|| missing("p"))?,
        relaxed,
    )
}

pub fn render_three_partition(inst: &ThreePartitionInstance) -> String {
    let a: Vec<String> = inst.values.iter().map(u32::to_string).collect();
    format!("n={} p={} a={}\n", inst.n, inst.p, a.join(","))
}

/// Parses an instance file of `key=value` lines.
pub fn parse_instance(text: &str) -> Result<FstEncodingInstance> {
    let (mut s, mut sp, mut k, mut order, mut variant) = (None, None, None, None, None);
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (key, v) = line
            .split_once('=')
            .ok_or_else(|| format_err(format!("expected key=value, got {:?}", line)))?;
        match key {
            "S" => s = Some(parse_digits(key, v)?),
            "S'" => sp = Some(parse_digits(key, v)?),
            "K" => k = Some(parse_num::<usize>(key, v)?),
            "order" => {
                order = Some(
                    v.split(',')
                        .map(|x| parse_num::<usize>(key, x))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "variant" => variant = Some(Variant::parse(v)?),
            other => return Err(format_err(format!("unknown key {:?}", other))),
        }
    }
    let missing = |k: &str| format_err(format!("missing {}=", k));
    let variant = variant.unwrap_or(if order.is_some() {
        Variant::Promise
    } else {
        Variant::Plain
    });
    FstEncodingInstance::new(
        s.ok_or_else(|| missing("S"))?,
        sp.ok_or_else(|| missing("S'"))?,
        k.ok_or_else(|| missing("K"))?,
        order,
        variant,
    )
}

pub fn render_instance(inst: &FstEncodingInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "S={}", digits(&inst.s));
    let _ = writeln!(out, "S'={}", digits(&inst.s_prime));
    let _ = writeln!(out, "K={}", inst.k);
    if let Some(o) = &inst.order {
        let o: Vec<String> = o.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "order={}", o.join(","));
    }
    let _ = writeln!(out, "variant={}", inst.variant.name());
    out
}

/// Parses `fst states=<K> start=<s>` followed by `trans <q> <a> -> <q'> <b>`
/// lines. The input alphabet is `{0, 1}`; the output alphabet grows to cover
/// every emitted symbol.
pub fn parse_fst(text: &str) -> Result<Fst> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| format_err("empty FST file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("fst") {
        return Err(format_err("FST file must start with `fst`"));
    }
    let (mut states, mut start) = (None, None);
    for (k, v) in kv_pairs(&fields.collect::<Vec<_>>().join(" "))? {
        match k {
            "states" => states = Some(parse_num::<usize>(k, v)?),
            "start" => start = Some(parse_num::<usize>(k, v)?),
            other => return Err(format_err(format!("unknown header key {:?}", other))),
        }
    }
    let states = states.ok_or_else(|| format_err("missing states="))?;
    let start = start.unwrap_or(0);
    let in_size = 2u8;
    let mut delta = vec![None; states * in_size as usize];
    let mut out_size = 2u8;
    for line in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 6 || f[0] != "trans" || f[3] != "->" {
            return Err(format_err(format!("malformed transition {:?}", line)));
        }
        let q: usize = parse_num("state", f[1])?;
        let a: u8 = parse_num("input", f[2])?;
        let to: usize = parse_num("state", f[4])?;
        let b: u8 = parse_num("output", f[5])?;
        if q >= states || to >= states {
            return Err(format_err(format!("state out of range in {:?}", line)));
        }
        if a >= in_size {
            return Err(Error::Alphabet {
                symbol: a,
                size: in_size,
            });
        }
        let slot = &mut delta[q * in_size as usize + a as usize];
        if slot.is_some() {
            return Err(format_err(format!(
                "transition ({}, {}) defined twice",
                q, a
            )));
        }
        *slot = Some((to, b));
        out_size = out_size.max(b + 1);
    }
    let delta = delta
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            d.ok_or_else(|| format_err(format!("transition ({}, {}) missing", i / 2, i % 2)))
        })
        .collect::<Result<Vec<_>>>()?;
    Fst::new(states, start, in_size, out_size, delta)
}

pub fn render_fst(t: &Fst) -> String {
    let mut out = format!("fst states={} start={}\n", t.num_states, t.start);
    for tr in t.transitions() {
        let _ = writeln!(
            out,
            "trans {} {} -> {} {}",
            tr.from, tr.input, tr.to, tr.output
        );
    }
    out
}
