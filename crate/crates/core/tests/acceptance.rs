mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pats_core::fst::{
    solve_encoding_by_search, transduce, verify_promises, ThreePartitionInstance,
    DEFAULT_SEARCH_NODES,
};
use pats_core::pattern::Pattern;
use pats_core::reductions::{
    build_intended_fst, reduce_3partition_to_fst_with, reduce_3partition_to_modified_fst,
    reduce_3partition_to_modified_fst_with, reduce_fst_to_pats_nonuniform,
    reduce_fst_to_pats_uniform, reduce_modified_fst_to_3pats, witness_tileset_from_fst,
    PatsReduction,
};
use pats_core::rtas::{
    brute_force_terminal_assemblies, is_directed, simulate, simulate_by, uniquely_assembles,
    DEFAULT_TERMINAL_CAP,
};
use pats_core::solvers::{brute_force_min, solve_nonuniform, solve_uniform_h1, SeedKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{all_patterns, all_words, orderings, random_directed_rtas};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(
        elapsed < limit,
        format!("took {:.2?}, limit {:.0?}", elapsed, limit),
    )
}

fn confluence() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let systems = 1500;
    for i in 0..systems {
        let rtas = random_directed_rtas(&mut rng);
        let det = simulate(&rtas).map_err(|e| e.to_string())?;
        let all = brute_force_terminal_assemblies(&rtas, DEFAULT_TERMINAL_CAP)
            .map_err(|e| e.to_string())?;
        check(
            all == vec![det.clone()],
            format!("system {} has {} terminal assemblies", i, all.len()),
        )?;
        let mut pick_rng = ChaCha8Rng::seed_from_u64(i as u64);
        let other = simulate_by(&rtas, |n| pick_rng.gen_range(0..n)).map_err(|e| e.to_string())?;
        check(
            other == det,
            format!("system {}: random attachment order diverged", i),
        )?;
    }
    let elapsed = started.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{} systems, {:.2?}", systems, elapsed))
}

/// Non-uniform and uniform brute-force minima plus the DP-based solver value
/// for every pattern of the given shape.
fn exact_minima(w: usize, h: usize) -> Result<Vec<(Pattern, usize, usize, usize)>, String> {
    all_patterns(w, h, 2)
        .into_par_iter()
        .map(|p| {
            let solved = solve_nonuniform(&p, None)
                .map_err(|e| e.to_string())?
                .min_size;
            let nonuni = brute_force_min(&p, SeedKind::NonUniform).map_err(|e| e.to_string())?;
            let uni = brute_force_min(&p, SeedKind::Uniform).map_err(|e| e.to_string())?;
            Ok((p, solved, nonuni, uni))
        })
        .collect()
}

fn nonuniform_oracle(table: &[(Pattern, usize, usize, usize)], elapsed: Duration) -> Outcome {
    for (p, solved, brute, _) in table {
        check(
            solved == brute,
            format!(
                "solver {} vs brute force {} on\n{}",
                solved,
                brute,
                pattern_text(p)
            ),
        )?;
    }
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("{} patterns, {:.2?}", table.len(), elapsed))
}

fn monotonicity(table: &[(Pattern, usize, usize, usize)]) -> Outcome {
    for (p, _, nonuni, uni) in table {
        check(
            uni >= nonuni,
            format!(
                "uniform {} below non-uniform {} on\n{}",
                uni,
                nonuni,
                pattern_text(p)
            ),
        )?;
    }
    let strict = table.iter().filter(|(_, _, n, u)| u > n).count();
    Ok(format!(
        "{} patterns, {} strictly larger uniform minimum",
        table.len(),
        strict
    ))
}

fn pattern_text(p: &Pattern) -> String {
    pats_core::render_pattern(p)
}

fn words_oracle() -> Outcome {
    let started = Instant::now();
    let words: Vec<Pattern> = (1..=8).flat_map(|n| all_words(n, 3)).collect();
    let count = words.len();
    words.into_par_iter().try_for_each(|p| {
        let fast = solve_uniform_h1(&p).map_err(|e| e.to_string())?;
        let brute = brute_force_min(&p, SeedKind::Uniform).map_err(|e| e.to_string())?;
        check(
            fast.min_size == brute,
            format!(
                "{}: linear {} vs brute force {}",
                pattern_text(&p),
                fast.min_size,
                brute
            ),
        )?;
        check(
            uniquely_assembles(&fast.witness, &p).map_err(|e| e.to_string())?,
            format!("{}: witness does not assemble", pattern_text(&p)),
        )
    })?;
    for (word, want) in [("aaaa", 1), ("abc", 3), ("abcabc", 3), ("ababab", 2)] {
        let p = pats_core::parse_pattern(word).map_err(|e| e.to_string())?;
        let got = solve_uniform_h1(&p).map_err(|e| e.to_string())?.min_size;
        check(
            got == want,
            format!("{} gives {}, expected {}", word, got, want),
        )?;
    }

    let time_at = |n: usize, runs: usize| -> Result<Duration, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let text: String = (0..n)
            .map(|_| (b'a' + rng.gen_range(0..3u8)) as char)
            .collect();
        let p = pats_core::parse_pattern(&text).map_err(|e| e.to_string())?;
        let mut best = Duration::MAX;
        for _ in 0..runs {
            let t = Instant::now();
            let r = solve_uniform_h1(&p).map_err(|e| e.to_string())?;
            best = best.min(t.elapsed());
            check(r.witness.size() == r.min_size, "witness size mismatch")?;
        }
        Ok(best)
    };
    let small = time_at(100_000, 50)?;
    let large = time_at(1_000_000, 10)?;
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-9);
    check(
        ratio <= 15.0,
        format!("scaling factor {:.1} above 15", ratio),
    )?;
    check(
        large < Duration::from_secs(2),
        format!("n = 10^6 took {:.2?}", large),
    )?;
    Ok(format!(
        "{} words, 10^5 in {:.2?}, 10^6 in {:.2?} (x{:.1}), {:.2?} total",
        count,
        small,
        large,
        ratio,
        started.elapsed()
    ))
}

fn fig2() -> ThreePartitionInstance {
    ThreePartitionInstance::new(vec![1, 1, 2, 1, 1, 2], 2, 4, true).unwrap()
}

fn fig2_partition() -> Vec<Vec<usize>> {
    vec![vec![1, 3, 5], vec![0, 2, 4]]
}

fn end_to_end() -> Outcome {
    let started = Instant::now();
    let inst = fig2();
    let part = fig2_partition();
    let e = |e: pats_core::Error| e.to_string();

    let red = reduce_3partition_to_fst_with(&inst, &part).map_err(e)?;
    check(
        red.instance.k == 27,
        format!("K = {}, expected 27", red.instance.k),
    )?;
    let fst = build_intended_fst(&red.skeleton, &red.layout, &inst, &part).map_err(e)?;
    check(
        transduce(&fst, &red.instance.s).map_err(e)?.0 == red.instance.s_prime,
        "intended FST misses S'",
    )?;
    let report = verify_promises(&fst, &red.instance, false).map_err(e)?;
    check(
        report.holds(),
        format!("promises fail: {:?}", report.violations),
    )?;

    let modified = reduce_3partition_to_modified_fst_with(&inst, &part).map_err(e)?;
    let k = modified.instance.k;
    let mfst = build_intended_fst(&modified.skeleton, &modified.layout, &inst, &part).map_err(e)?;
    check(
        transduce(&mfst, &modified.instance.s).map_err(e)?.0 == modified.instance.s_prime,
        "modified FST misses S'",
    )?;
    let report = verify_promises(&mfst, &modified.instance, false).map_err(e)?;
    check(
        report.holds(),
        format!("modified promises fail: {:?}", report.violations),
    )?;
    let pats = reduce_modified_fst_to_3pats(&modified.instance).map_err(e)?;
    let m = modified.instance.s_prime.len();
    check(
        pats.pattern.width() == 1 + m + k * k,
        format!("width {}, expected {}", pats.pattern.width(), 1 + m + k * k),
    )?;
    check(pats.pattern.height() == 2, "height is not 2")?;
    check(
        pats.pattern.color_count() == 3,
        format!("{} colors", pats.pattern.color_count()),
    )?;
    let w = witness_tileset_from_fst(&mfst, &modified.instance, &pats, PatsReduction::Uniform3)
        .map_err(e)?;
    check(
        w.rtas.size() == m + 2 * k + 2,
        format!(
            "witness has {} types, expected {}",
            w.rtas.size(),
            m + 2 * k + 2
        ),
    )?;
    check(is_directed(&w.rtas.tiles), "witness is not directed")?;
    check(
        uniquely_assembles(&w.rtas, &pats.pattern).map_err(e)?,
        "witness does not assemble the pattern",
    )?;
    let elapsed = started.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "K = 27 (modified {}), |S'| = {}, width {}, witness {} types, {:.2?}",
        k,
        m,
        pats.pattern.width(),
        w.rtas.size(),
        elapsed
    ))
}

fn soundness() -> Outcome {
    let mut cases: Vec<(Vec<u32>, usize, u32)> = orderings(&[7, 1, 1, 1, 1, 1])
        .into_iter()
        .map(|v| (v, 2, 6))
        .collect();
    cases.push((vec![7, 7, 7, 1, 1, 1], 2, 12));
    let mut slowest = Duration::ZERO;
    for (values, n, p) in &cases {
        check(
            common::partition_oracle(values, *n, *p).is_none(),
            format!("{:?} is feasible", values),
        )?;
        let inst =
            ThreePartitionInstance::new(values.clone(), *n, *p, true).map_err(|e| e.to_string())?;
        for modified in [false, true] {
            let started = Instant::now();
            let red = if modified {
                reduce_3partition_to_modified_fst(&inst)
            } else {
                pats_core::reductions::reduce_3partition_to_fst(&inst)
            }
            .map_err(|e| e.to_string())?;
            let found = solve_encoding_by_search(
                &red.instance.to_plain(),
                &red.skeleton,
                DEFAULT_SEARCH_NODES,
            )
            .map_err(|e| e.to_string())?;
            let elapsed = started.elapsed();
            slowest = slowest.max(elapsed);
            check(
                found.is_none(),
                format!("{:?} (modified: {}) has an encoding", values, modified),
            )?;
            within(elapsed, Duration::from_secs(10))?;
        }
    }
    Ok(format!(
        "{} infeasible instances, both encodings, slowest {:.2?}",
        cases.len(),
        slowest
    ))
}

fn budgets() -> Outcome {
    let e = |e: pats_core::Error| e.to_string();
    let instances = [
        (
            ThreePartitionInstance::new(vec![1, 1, 1], 1, 3, true).unwrap(),
            vec![vec![0, 1, 2]],
        ),
        (fig2(), fig2_partition()),
        (
            ThreePartitionInstance::new(vec![2, 3, 2], 1, 7, true).unwrap(),
            vec![vec![0, 1, 2]],
        ),
    ];
    let mut checked = 0;
    for (inst, part) in &instances {
        let red = reduce_3partition_to_fst_with(inst, part).map_err(e)?;
        let (k, s) = (red.instance.k, red.instance.s.len());
        let thm4 = reduce_fst_to_pats_nonuniform(&red.instance).map_err(e)?;
        check(
            thm4.budget == 2 * k + 2,
            format!("non-uniform budget {} for K = {}", thm4.budget, k),
        )?;
        let thm5 = reduce_fst_to_pats_uniform(&red.instance).map_err(e)?;
        check(
            thm5.budget == s + 2 * k + 4,
            format!("uniform budget {} for |S| = {}, K = {}", thm5.budget, s, k),
        )?;
        let modified = reduce_3partition_to_modified_fst_with(inst, part).map_err(e)?;
        let (mk, ms) = (modified.instance.k, modified.instance.s_prime.len());
        let thm6 = reduce_modified_fst_to_3pats(&modified.instance).map_err(e)?;
        check(
            thm6.budget == ms + 2 * mk + 2,
            format!(
                "3-color budget {} for |S'| = {}, K = {}",
                thm6.budget, ms, mk
            ),
        )?;
        checked += 3;
    }
    Ok(format!("{} generated instances", checked))
}

fn main() -> ExitCode {
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let wanted = |id: usize| only.is_empty() || only.contains(&id);
    let mut failed = 0;
    let mut report = |id: usize, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS {} {}: {}", id, name, detail),
        Err(why) => {
            failed += 1;
            println!("FAIL {} {}: {}", id, name, why);
        }
    };
    if wanted(1) {
        report(1, "confluence", confluence());
    }
    if wanted(2) || wanted(7) {
        criteria_2_and_7(&mut report);
    }
    if wanted(3) {
        report(3, "height-1 uniform solver", words_oracle());
    }
    if wanted(4) {
        report(4, "reduction end to end", end_to_end());
    }
    if wanted(5) {
        report(5, "reduction soundness", soundness());
    }
    if wanted(6) {
        report(6, "budget formulas", budgets());
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", failed);
        ExitCode::FAILURE
    }
}

fn criteria_2_and_7(report: &mut impl FnMut(usize, &str, Outcome)) {
    let started = Instant::now();
    let mut tables = Vec::new();
    let mut table_err = None;
    for (w, h) in [(4, 2), (4, 3)] {
        match exact_minima(w, h) {
            Ok(t) => tables.extend(t),
            Err(why) => table_err = Some(why),
        }
    }
    let elapsed = started.elapsed();
    match &table_err {
        Some(why) => {
            report(2, "non-uniform solver vs brute force", Err(why.clone()));
            report(7, "uniform minimum dominates", Err(why.clone()));
        }
        None => {
            report(
                2,
                "non-uniform solver vs brute force",
                nonuniform_oracle(&tables, elapsed),
            );
            report(7, "uniform minimum dominates", monotonicity(&tables));
        }
    }
}
