use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pats_core::fst::{
    parse_fst, parse_instance, parse_three_partition, render_fst, render_instance,
    solve_encoding_by_search, transduce, verify_promises, Fst, ThreePartitionInstance,
    DEFAULT_SEARCH_NODES,
};
use pats_core::reductions::{
    build_intended_fst, reduce_3partition_to_fst, reduce_3partition_to_fst_with,
    reduce_3partition_to_modified_fst, reduce_3partition_to_modified_fst_with,
    witness_tileset_from_fst, FstReduction, PatsReduction,
};
use pats_core::rtas::{parse_tile_file, render_tile_file, TileFile};
use pats_core::solvers::{brute_force_min, solve_min, solve_uniform_h1, SeedKind, SolveOptions};
use pats_core::{
    is_directed, parse_pattern, render_pattern, simulate, uniquely_assembles, Error, Pattern,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "pats",
    version,
    about = "Pattern self-assembly: simulate, verify, solve, and reduce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a directed tile set to its terminal assembly.
    Simulate {
        #[arg(long)]
        tiles: PathBuf,
        /// Target pattern; also fixes the region size.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
    },
    /// Decide whether a tile set uniquely assembles a pattern.
    Verify {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        tiles: PathBuf,
    },
    /// Find a minimum directed tile set for a pattern.
    Solve {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        uniform: bool,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        emit_tiles: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Minimum uniform tile set for a single-row pattern.
    MinsizeUniformH1 {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        emit_tiles: Option<PathBuf>,
    },
    /// Instance generators.
    Reduce {
        #[command(subcommand)]
        which: Reduce,
    },
    /// Full pipeline from a 3-partition instance to a pattern and its
    /// intended tile set.
    GenWitness {
        #[command(flatten)]
        source: PartitionSource,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in end-to-end checks.
    Selftest {
        #[arg(long, value_enum, default_value = "micro")]
        scale: Scale,
        #[arg(long, default_value_t = 1)]
        seed_rng: u64,
    },
}

#[derive(Subcommand)]
enum Reduce {
    /// 3-partition to FST encoding.
    #[command(name = "3part-to-fst")]
    ThreePartToFst {
        #[command(flatten)]
        source: PartitionSource,
        #[arg(long)]
        modified: bool,
        #[arg(long)]
        out: PathBuf,
        /// Also write the solving FST, if one exists.
        #[arg(long)]
        emit_fst: Option<PathBuf>,
    },
    /// FST encoding to a height-2 pattern.
    FstToPats {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// Output directory for `pattern.txt` and, with `--witness`, `witness.tiles`.
        #[arg(long)]
        out: PathBuf,
        /// FST solving the instance; emits the intended tile set.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PartitionSource {
    /// File holding `n=<int> p=<int> a=<list>`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Skip the `p/4 < a < p/2` check.
    #[arg(long)]
    relaxed: bool,
    /// Parts as 1-based element indices, e.g. `2,4,6;1,3,5`. Without it the
    /// solution comes from rod search.
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Nonuniform,
    Uniform,
    Uniform3,
}

impl VariantArg {
    fn reduction(self) -> PatsReduction {
        match self {
            VariantArg::Nonuniform => PatsReduction::NonUniform,
            VariantArg::Uniform => PatsReduction::Uniform,
            VariantArg::Uniform3 => PatsReduction::Uniform3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scale {
    Micro,
    Small,
}

enum Failure {
    /// A false verdict; the report is already on stdout.
    Verdict,
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {}", path.display(), e)))
}

fn read_pattern(path: &Path) -> Result<Pattern, Failure> {
    Ok(parse_pattern(&read(path)?)?)
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

fn parse_partition(text: &str, size: usize) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|part| {
            part.split(',')
                .map(|i| match i.trim().parse::<usize>() {
                    Ok(i) if (1..=size).contains(&i) => Ok(i - 1),
                    _ => Err(Failure::Error(format!("bad element index {:?}", i))),
                })
                .collect()
        })
        .collect()
}

/// The reduction for `source` and an FST solving it, if any.
fn reduce_with_solution(
    source: &PartitionSource,
    modified: bool,
) -> Result<(FstReduction, Option<Fst>), Failure> {
    let inst: ThreePartitionInstance =
        parse_three_partition(&read(&source.input)?, source.relaxed)?;
    match &source.partition {
        Some(text) => {
            let part = parse_partition(text, inst.values().len())?;
            let red = if modified {
                reduce_3partition_to_modified_fst_with(&inst, &part)?
            } else {
                reduce_3partition_to_fst_with(&inst, &part)?
            };
            let fst = build_intended_fst(&red.skeleton, &red.layout, &inst, &part)?;
            Ok((red, Some(fst)))
        }
        None => {
            let red = if modified {
                reduce_3partition_to_modified_fst(&inst)?
            } else {
                reduce_3partition_to_fst(&inst)?
            };
            let fst = solve_encoding_by_search(&red.instance, &red.skeleton, DEFAULT_SEARCH_NODES)?;
            Ok((red, fst))
        }
    }
}

fn simulate_cmd(
    tiles: &Path,
    pattern: Option<&Path>,
    width: Option<usize>,
    height: Option<usize>,
) -> Outcome {
    let pattern = pattern.map(read_pattern).transpose()?;
    let glyphs = pattern.as_ref().map_or(Vec::new(), |p| p.glyphs().to_vec());
    let file = parse_tile_file(&read(tiles)?, &glyphs)?;
    let glyphs = file.glyphs.clone();
    let (w, h) = match (&pattern, width, height) {
        (_, Some(w), Some(h)) => (w, h),
        (Some(p), None, None) => (p.width(), p.height()),
        _ => {
            return Err(Failure::Error(
                "give --pattern or both --width and --height".into(),
            ))
        }
    };
    let rtas = file.into_rtas(w, h)?;
    let asm = simulate(&rtas)?;
    println!("width={}", w);
    println!("height={}", h);
    println!("placed={}", asm.placed_count());
    println!("total={}", asm.is_total());
    for row in asm.render(&glyphs).lines() {
        println!("row={}", row);
    }
    if let Some(p) = &pattern {
        let matches = asm.has_pattern(p);
        println!("matches={}", matches);
        return verdict(matches);
    }
    Ok(())
}

fn verify_cmd(pattern: &Path, tiles: &Path) -> Outcome {
    let p = read_pattern(pattern)?;
    let file = parse_tile_file(&read(tiles)?, p.glyphs())?;
    if file.glyphs.len() > p.glyphs().len() {
        println!("size={}", file.tiles.len());
        println!("uniquely_assembles=false");
        eprintln!("tile set uses colors absent from the pattern");
        return Err(Failure::Verdict);
    }
    let rtas = file.into_rtas(p.width(), p.height())?;
    let ok = uniquely_assembles(&rtas, &p)?;
    println!("size={}", rtas.size());
    println!("directed={}", is_directed(&rtas.tiles));
    println!("uniquely_assembles={}", ok);
    verdict(ok)
}

fn emit_tiles(path: Option<&Path>, file: &TileFile) -> Outcome {
    match path {
        Some(path) => write(path, &render_tile_file(file)),
        None => Ok(()),
    }
}

fn solve_cmd(
    pattern: &Path,
    uniform: bool,
    cap: Option<usize>,
    emit: Option<&Path>,
    threads: Option<usize>,
    node_cap: Option<u64>,
) -> Outcome {
    let p = read_pattern(pattern)?;
    let kind = if uniform {
        SeedKind::Uniform
    } else {
        SeedKind::NonUniform
    };
    let started = Instant::now();
    match solve_min(
        &p,
        kind,
        SolveOptions {
            cap,
            threads,
            node_cap,
        },
    ) {
        Ok(r) => {
            println!("min_size={}", r.min_size);
            println!("seed={}", if uniform { "uniform" } else { "nonuniform" });
            eprintln!(
                "nodes={} elapsed_ms={}",
                r.stats.nodes,
                started.elapsed().as_millis()
            );
            emit_tiles(emit, &TileFile::from_rtas(&r.witness, p.glyphs()))
        }
        Err(Error::BudgetExhausted(k)) => {
            println!("min_size=none");
            println!("cap={}", k);
            Err(Failure::Verdict)
        }
        Err(e) => Err(e.into()),
    }
}

fn minsize_h1_cmd(pattern: &Path, emit: Option<&Path>) -> Outcome {
    let p = read_pattern(pattern)?;
    let started = Instant::now();
    let r = solve_uniform_h1(&p)?;
    println!("min_size={}", r.min_size);
    eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    emit_tiles(emit, &TileFile::from_rtas(&r.witness, p.glyphs()))
}

fn three_part_cmd(
    source: &PartitionSource,
    modified: bool,
    out: &Path,
    emit_fst: Option<&Path>,
) -> Outcome {
    let (red, fst) = reduce_with_solution(source, modified)?;
    write(out, &render_instance(&red.instance))?;
    println!("K={}", red.instance.k);
    println!("s_len={}", red.instance.s.len());
    println!("variant={}", red.instance.variant.name());
    println!("feasible={}", fst.is_some());
    if let (Some(path), Some(fst)) = (emit_fst, &fst) {
        write(path, &render_fst(fst))?;
    }
    Ok(())
}

fn write_pats(
    inst: &pats_core::fst::FstEncodingInstance,
    kind: PatsReduction,
    fst: Option<&Fst>,
    out: &Path,
) -> Outcome {
    fs::create_dir_all(out).map_err(|e| Failure::Error(format!("{}: {}", out.display(), e)))?;
    let pats = kind.apply(inst)?;
    write(
        &out.join("pattern.txt"),
        &(render_pattern(&pats.pattern) + "\n"),
    )?;
    println!("width={}", pats.pattern.width());
    println!("height={}", pats.pattern.height());
    println!("colors={}", pats.pattern.color_count());
    println!("budget={}", pats.budget);
    println!("seed={}", pats.variant.name());
    if let Some(fst) = fst {
        if transduce(fst, &inst.s)?.0 != inst.s_prime || !verify_promises(fst, inst, false)?.holds()
        {
            return Err(Failure::Error(
                "the given FST does not solve the instance".into(),
            ));
        }
        let w = witness_tileset_from_fst(fst, inst, &pats, kind)?;
        write(
            &out.join("witness.tiles"),
            &render_tile_file(&w.tile_file(&pats.pattern)),
        )?;
        println!("witness_size={}", w.rtas.size());
    }
    Ok(())
}

fn fst_to_pats_cmd(
    variant: VariantArg,
    input: &Path,
    out: &Path,
    witness: Option<&Path>,
) -> Outcome {
    let inst = parse_instance(&read(input)?)?;
    let fst = witness
        .map(|p| read(p).and_then(|t| Ok(parse_fst(&t)?)))
        .transpose()?;
    write_pats(&inst, variant.reduction(), fst.as_ref(), out)
}

fn gen_witness_cmd(source: &PartitionSource, variant: VariantArg, out: &Path) -> Outcome {
    let kind = variant.reduction();
    let (red, fst) = reduce_with_solution(source, kind == PatsReduction::Uniform3)?;
    let Some(fst) = fst else {
        println!("feasible=false");
        return Err(Failure::Verdict);
    };
    fs::create_dir_all(out).map_err(|e| Failure::Error(format!("{}: {}", out.display(), e)))?;
    write(&out.join("instance.txt"), &render_instance(&red.instance))?;
    write(&out.join("solution.fst"), &render_fst(&fst))?;
    println!("feasible=true");
    println!("K={}", red.instance.k);
    write_pats(&red.instance, kind, Some(&fst), out)
}

fn check(name: &str, ok: bool) -> bool {
    println!("check={} ok={}", name, ok);
    ok
}

fn selftest_cmd(scale: Scale, seed: u64) -> Outcome {
    let mut all = true;
    let mut toys = vec![(vec![1, 1, 1], 1, 3), (vec![1, 1, 2, 1, 1, 2], 2, 4)];
    if scale == Scale::Small {
        toys.push((vec![2, 2, 2, 1, 1, 1, 1, 1, 1], 3, 4));
    }
    for (values, n, p) in toys {
        let inst = ThreePartitionInstance::new(values.clone(), n, p, true)?;
        for kind in [
            PatsReduction::NonUniform,
            PatsReduction::Uniform,
            PatsReduction::Uniform3,
        ] {
            let red = if kind == PatsReduction::Uniform3 {
                reduce_3partition_to_modified_fst(&inst)?
            } else {
                reduce_3partition_to_fst(&inst)?
            };
            let name = format!("pipeline:{:?}:{:?}", values, kind).replace(' ', "");
            let Some(fst) =
                solve_encoding_by_search(&red.instance, &red.skeleton, DEFAULT_SEARCH_NODES)?
            else {
                all &= check(&name, false);
                continue;
            };
            let pats = kind.apply(&red.instance)?;
            let w = witness_tileset_from_fst(&fst, &red.instance, &pats, kind)?;
            let ok = is_directed(&w.rtas.tiles)
                && w.rtas.size() == pats.budget
                && uniquely_assembles(&w.rtas, &pats.pattern)?;
            all &= check(&name, ok);
        }
    }
    let infeasible = ThreePartitionInstance::new(vec![7, 1, 1, 1, 1, 1], 2, 6, true)?;
    let red = reduce_3partition_to_fst(&infeasible)?;
    let none = solve_encoding_by_search(
        &red.instance.to_plain(),
        &red.skeleton,
        DEFAULT_SEARCH_NODES,
    )?
    .is_none();
    all &= check("infeasible:[7,1,1,1,1,1]", none);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (count, max_w) = if scale == Scale::Small {
        (60, 4)
    } else {
        (15, 3)
    };
    let mut agree = true;
    for _ in 0..count {
        let (w, h) = (rng.gen_range(1..=max_w), rng.gen_range(1..=2));
        let cells: Vec<char> = (0..w * h)
            .map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' })
            .collect();
        let text = cells
            .chunks(w)
            .map(|r| r.iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("\n");
        let p = parse_pattern(&text)?;
        for kind in [SeedKind::NonUniform, SeedKind::Uniform] {
            agree &= solve_min(&p, kind, SolveOptions::default())?.min_size
                == brute_force_min(&p, kind)?;
        }
    }
    all &= check("solver-vs-brute-force", agree);
    let anchors = [("aaaa", 1), ("abc", 3), ("abcabc", 3), ("ababab", 2)];
    let mut ok = true;
    for (word, want) in anchors {
        ok &= solve_uniform_h1(&parse_pattern(word)?)?.min_size == want;
    }
    all &= check("uniform-h1-anchors", ok);
    println!("selftest={}", if all { "pass" } else { "fail" });
    verdict(all)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Simulate {
            tiles,
            pattern,
            width,
            height,
        } => simulate_cmd(&tiles, pattern.as_deref(), width, height),
        Command::Verify { pattern, tiles } => verify_cmd(&pattern, &tiles),
        Command::Solve {
            pattern,
            uniform,
            cap,
            emit_tiles,
            threads,
            node_cap,
        } => solve_cmd(
            &pattern,
            uniform,
            cap,
            emit_tiles.as_deref(),
            threads,
            node_cap,
        ),
        Command::MinsizeUniformH1 {
            pattern,
            emit_tiles,
        } => minsize_h1_cmd(&pattern, emit_tiles.as_deref()),
        Command::Reduce {
            which:
                Reduce::ThreePartToFst {
                    source,
                    modified,
                    out,
                    emit_fst,
                },
        } => three_part_cmd(&source, modified, &out, emit_fst.as_deref()),
        Command::Reduce {
            which:
                Reduce::FstToPats {
                    variant,
                    input,
                    out,
                    witness,
                },
        } => fst_to_pats_cmd(variant, &input, &out, witness.as_deref()),
        Command::GenWitness {
            source,
            variant,
            out,
        } => gen_witness_cmd(&source, variant, &out),
        Command::Selftest { scale, seed_rng } => selftest_cmd(scale, seed_rng),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
