mod common;

use pats_core::rtas::{
    brute_force_terminal_assemblies, parse_tile_file, render_tile_file, simulate, simulate_by,
    uniquely_assembles, Rtas, TileFile, DEFAULT_TERMINAL_CAP,
};
use pats_core::{parse_pattern, Pattern};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_rtas() -> impl Strategy<Value = Rtas> {
    any::<u64>().prop_map(|s| common::random_directed_rtas(&mut ChaCha8Rng::seed_from_u64(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn directed_systems_are_confluent(rtas in arb_rtas(), order in proptest::collection::vec(any::<usize>(), 16)) {
        let det = simulate(&rtas).unwrap();
        let mut i = 0;
        let other = simulate_by(&rtas, |n| { i += 1; order[i % order.len()] % n }).unwrap();
        prop_assert_eq!(&other, &det);
        prop_assert_eq!(brute_force_terminal_assemblies(&rtas, DEFAULT_TERMINAL_CAP).unwrap(), vec![det]);
    }

    #[test]
    fn terminal_assembly_is_a_staircase(rtas in arb_rtas()) {
        let asm = simulate(&rtas).unwrap();
        prop_assert!(asm.is_staircase());
        prop_assert!(asm.respects_tiling_rule(&rtas));
    }

    #[test]
    fn total_assembly_is_unique_for_its_own_colors(rtas in arb_rtas()) {
        let asm = simulate(&rtas).unwrap();
        if asm.is_total() {
            let cells = (1..=rtas.height)
                .flat_map(|y| (1..=rtas.width).map(move |x| (x, y)))
                .map(|(x, y)| asm.get(x, y).unwrap().color)
                .collect();
            let p = Pattern::new(rtas.width, rtas.height, cells, vec!['a', 'b']).unwrap();
            prop_assert!(uniquely_assembles(&rtas, &p).unwrap());
        }
    }

    #[test]
    fn tile_files_round_trip(rtas in arb_rtas()) {
        let glyphs = ['a', 'b'];
        let text = render_tile_file(&TileFile::from_rtas(&rtas, &glyphs));
        let back = parse_tile_file(&text, &glyphs).unwrap().into_rtas(rtas.width, rtas.height).unwrap();
        prop_assert_eq!(simulate(&back).unwrap().render(&glyphs), simulate(&rtas).unwrap().render(&glyphs));
        prop_assert_eq!(back.size(), rtas.size());
    }
}

#[test]
fn single_tile_file_fills_only_its_color() {
    let text = "\
seed uniform east=x north=b0
tile a N=b0 E=x S=b0 W=x
";
    let file = parse_tile_file(text, &[]).unwrap();
    let rtas = file.into_rtas(3, 2).unwrap();
    assert!(uniquely_assembles(&rtas, &parse_pattern("aaa\naaa").unwrap()).unwrap());
    assert!(!uniquely_assembles(&rtas, &parse_pattern("aab\naaa").unwrap()).unwrap());
}
