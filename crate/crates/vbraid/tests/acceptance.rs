//! Acceptance gate: one test per guaranteed behavior, each printing a
//! single pass/fail line (visible with `--nocapture`).

use std::panic::AssertUnwindSafe;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vbraid::{
    apply_move, braid_morse_report, bracket_braid_limited, bracket_gauss, bracket_gauss_limited,
    close_braid, destab, enumerate_moves, equiv_within, evaluate_morse, f_poly, f_poly_braid,
    forbidden_over, free_reduce, odd_writhe, r1_delete, r1_insert, r2_delete, r2_insert,
    random_code, random_morse, random_poly, random_word, stab, BraidWord, GaussCode, LaurentPoly,
    LmoveFlavor, MorseWord, Move, MoveBudget, Role, SearchBudget, Sign, StabFlavor, Verdict,
};

const CROSSING_LIMIT: usize = 25;

fn criterion(name: &str, check: impl FnOnce()) {
    match std::panic::catch_unwind(AssertUnwindSafe(check)) {
        Ok(()) => println!("criterion: {name} ... pass"),
        Err(cause) => {
            println!("criterion: {name} ... FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn sample_words(count: usize, max_len: usize) -> Vec<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=5);
            let len = rng.gen_range(0..=max_len);
            random_word(n, len, rng.gen()).expect("two or more strands")
        })
        .collect()
}

/// The fixed probe moves plus classically and virtually inserted strands
/// at three sampled cut points.
fn probe_moves(word: &BraidWord, rng: &mut ChaCha8Rng) -> Vec<Move> {
    let mut moves = vec![
        Move::ConjVirtual { i: 1 },
        Move::ConjReal { i: 1, eps: Sign::PLUS },
        Move::ConjReal { i: 1, eps: Sign::MINUS },
        Move::Stab { flavor: StabFlavor::Virtual, eps: None },
        Move::Stab { flavor: StabFlavor::Real, eps: Some(Sign::PLUS) },
        Move::Stab { flavor: StabFlavor::Real, eps: Some(Sign::MINUS) },
        Move::ThreadRight { eps: Sign::PLUS },
        Move::ThreadRight { eps: Sign::MINUS },
        Move::ThreadLeft { eps: Sign::PLUS },
        Move::ThreadLeft { eps: Sign::MINUS },
    ];
    for _ in 0..3 {
        let p = rng.gen_range(0..=word.len());
        let j = rng.gen_range(1..=word.strands());
        moves.push(Move::Lmove { p, j, flavor: LmoveFlavor::Virtual, eps: None });
        moves.push(Move::Lmove { p, j, flavor: LmoveFlavor::Real, eps: Some(Sign::PLUS) });
        moves.push(Move::Lmove { p, j, flavor: LmoveFlavor::Real, eps: Some(Sign::MINUS) });
        moves.push(Move::Lmove { p, j, flavor: LmoveFlavor::Over, eps: None });
        moves.push(Move::Lmove { p, j, flavor: LmoveFlavor::Under, eps: None });
    }
    moves
}

#[test]
fn criterion_1_moves_preserve_closure_invariants() {
    criterion(
        "every diagram move preserves components, the normalized bracket, and the odd writhe \
         (200 random words, under two minutes)",
        || {
            let start = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for word in sample_words(200, 12) {
                let code = close_braid(&word);
                let components = code.component_count();
                let f = f_poly(&code, CROSSING_LIMIT).unwrap();
                let odd = (components == 1).then(|| odd_writhe(&code).unwrap());
                for mv in probe_moves(&word, &mut rng) {
                    let moved = match apply_move(&word, &mv) {
                        Ok(m) => m,
                        // A classical strand insertion can be blocked on
                        // both sides by virtual letters.
                        Err(vbraid::Error::NotAllowed) => continue,
                        Err(e) => panic!("{mv:?} failed on `{word}`: {e}"),
                    };
                    let moved_code = close_braid(&moved);
                    assert_eq!(
                        moved_code.component_count(),
                        components,
                        "{mv:?} on `{word}` changed the component count"
                    );
                    assert_eq!(
                        f_poly(&moved_code, CROSSING_LIMIT).unwrap(),
                        f,
                        "{mv:?} on `{word}` changed the normalized bracket"
                    );
                    if let Some(odd) = odd {
                        assert_eq!(
                            odd_writhe(&moved_code).unwrap(),
                            odd,
                            "{mv:?} on `{word}` changed the odd writhe"
                        );
                    }
                }
            }
            assert!(start.elapsed() < Duration::from_secs(120), "took too long");
        },
    );
}

#[test]
fn criterion_2_the_two_bracket_evaluators_agree() {
    criterion(
        "the braid-state bracket and the code-arc bracket agree on 200 random closures",
        || {
            for word in sample_words(200, 12) {
                let direct = bracket_braid_limited(&word, CROSSING_LIMIT).unwrap();
                let via_code =
                    bracket_gauss_limited(&close_braid(&word), CROSSING_LIMIT).unwrap();
                assert_eq!(direct, via_code, "bracket mismatch on `{word}`");
            }
        },
    );
}

#[test]
fn criterion_3_invariant_golden_values() {
    criterion(
        "bracket, normalized bracket, and odd writhe hit their pinned values",
        || {
            let kink: BraidWord = "2 | s1".parse().unwrap();
            assert_eq!(bracket_gauss(&close_braid(&kink)).unwrap().to_string(), "-A^3");
            assert_eq!(f_poly(&close_braid(&kink), 20).unwrap(), LaurentPoly::one());

            let two_circles: BraidWord = "2 | ".parse().unwrap();
            assert_eq!(
                bracket_gauss(&close_braid(&two_circles)).unwrap().to_string(),
                "-A^2 - A^-2"
            );

            let trefoil: BraidWord = "2 | s1 s1 s1".parse().unwrap();
            assert_eq!(
                f_poly_braid(&trefoil, 20).unwrap().to_string(),
                "A^-4 + A^-12 - A^-16"
            );

            let virtual_witness: GaussCode = "O1+,O2+,U1+,U2+".parse().unwrap();
            assert_eq!(odd_writhe(&virtual_witness).unwrap(), 2);
        },
    );
}

#[test]
fn criterion_4_moves_undo_exactly() {
    criterion(
        "stabilizations and code moves undo to the exact starting point (100 cases each)",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            for _ in 0..100 {
                let n = rng.gen_range(2..=5);
                let len = rng.gen_range(0..=10);
                let word = random_word(n, len, rng.gen()).unwrap();
                for (flavor, eps) in [
                    (StabFlavor::Virtual, None),
                    (StabFlavor::Real, Some(Sign::PLUS)),
                    (StabFlavor::Real, Some(Sign::MINUS)),
                ] {
                    let up = stab(&word, flavor, eps).unwrap();
                    assert_eq!(destab(&up).unwrap(), word, "stab/destab broke on `{word}`");
                }
            }

            for seed in 0..100u64 {
                let code = random_code(seed, 4, 3);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);

                let comp = rng.gen_range(0..code.component_count());
                let gap = rng.gen_range(0..=code.components()[comp].len());
                let role = if rng.gen::<bool>() { Role::O } else { Role::U };
                let sign = if rng.gen::<bool>() { 1 } else { -1 };
                let kinked = r1_insert(&code, comp, gap, role, sign).unwrap();
                assert!(
                    undo_positions(&kinked).any(|(c, p)| r1_delete(&kinked, c, p) == Ok(code.clone())),
                    "no kink deletion recovers `{code}` from `{kinked}`"
                );

                let comp1 = rng.gen_range(0..code.component_count());
                let gap1 = rng.gen_range(0..=code.components()[comp1].len());
                let comp2 = rng.gen_range(0..code.component_count());
                let gap2 = rng.gen_range(0..=code.components()[comp2].len());
                let clasped = r2_insert(&code, comp1, gap1, comp2, gap2, sign).unwrap();
                assert!(
                    undo_positions(&clasped).any(|(c, p)| r2_delete(&clasped, c, p) == Ok(code.clone())),
                    "no clasp deletion recovers `{code}` from `{clasped}`"
                );
            }
        },
    );
}

fn undo_positions(code: &GaussCode) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..code.component_count())
        .flat_map(move |c| (0..code.components()[c].len()).map(move |p| (c, p)))
}

#[test]
fn criterion_5_forbidden_moves_change_the_odd_writhe() {
    criterion(
        "the forbidden transposition moves are detected by the odd writhe",
        || {
            let witness: GaussCode = "O1+,O2+,U1+,U2+".parse().unwrap();
            assert_eq!(witness.component_count(), 1);
            assert_eq!(odd_writhe(&witness).unwrap(), 2);
            let moved = forbidden_over(&witness, 0, 0).unwrap();
            assert_eq!(moved.component_count(), 1);
            assert_eq!(odd_writhe(&moved).unwrap(), 0);
        },
    );
}

#[test]
fn criterion_6_braiding_reproduces_the_diagram() {
    criterion(
        "braided diagrams close back to the same code, brackets included, within the strand \
         bound (20 fixed + 100 random diagrams, under a minute)",
        || {
            let start = Instant::now();
            let fixed = [
                "cup1 cap1",
                "cup1 x1+ cap1",
                "cup1 x1- cap1",
                "cup1 v1 cap1",
                "cup1 x1+ x1+ cap1",
                "cup1 x1+ x1- cap1",
                "cup1 cup1 cap1 cap1",
                "cup1 cup2 cap2 cap1",
                "cup1 cup1 x2+ x2+ cap1 cap1",
                "cup1 cup1 x2+ x2+ x2+ cap1 cap1",
                "cup1 cup1 x2+ v2 x2+ cap1 cap1",
                "cup1 cup1 v2 cap1 cap1",
                "cup1 cup1 x1+ cap1 cap1",
                "cup1 cup1 x2- x2- cap1 cap1",
                "cup1 cup1 x2+ x2- cap1 cap1",
                "cup1 cup1 cup1 x3+ cap3 x1+ cap1 cap1",
                "cup1 v1 v1 cap1",
                "cup1 cup1 v2 x2+ v2 cap1 cap1",
                "cup1 x1+ cup1 x3+ cap3 cap1",
                "cup1 cup1 x2+ cap2 x1+ cap1",
            ];
            let diagrams = fixed
                .iter()
                .map(|text| text.parse::<MorseWord>().unwrap())
                .chain((0..100u64).map(|seed| random_morse(seed, 6, 12)));
            for diagram in diagrams {
                let direct = evaluate_morse(&diagram).unwrap();
                let (braid, stats) = braid_morse_report(&diagram).unwrap();
                assert_eq!(
                    close_braid(&braid),
                    direct,
                    "braiding `{diagram}` lost the closure code"
                );
                assert_eq!(
                    f_poly_braid(&braid, CROSSING_LIMIT).unwrap(),
                    f_poly(&direct, CROSSING_LIMIT).unwrap(),
                    "braiding `{diagram}` changed the normalized bracket"
                );
                assert_eq!(
                    braid.strands(),
                    stats.crossingless + stats.up_runs,
                    "braiding `{diagram}` broke its strand bound"
                );
            }
            assert!(start.elapsed() < Duration::from_secs(60), "took too long");
        },
    );
}

#[test]
fn criterion_7_search_decides_known_pairs() {
    criterion(
        "the equivalence search recovers 20 scrambled pairs with replayable paths and \
         separates two inequivalent pairs by invariants",
        || {
            let budget = SearchBudget { max_strands: 7, max_len: 48, max_nodes: 200_000 };
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..20 {
                let n = rng.gen_range(2..=3);
                let len = rng.gen_range(0..=4);
                let a = random_word(n, len, rng.gen()).unwrap();
                let mut b = free_reduce(&a);
                let scramble = MoveBudget { max_strands: 6, max_len: 24 };
                for _ in 0..rng.gen_range(1..=3usize) {
                    let neighbors = enumerate_moves(&b, &scramble);
                    if neighbors.is_empty() {
                        break;
                    }
                    b = neighbors[rng.gen_range(0..neighbors.len())].1.clone();
                }

                let outcome = equiv_within(&a, &b, &budget).unwrap();
                assert_eq!(
                    outcome.verdict,
                    Verdict::Equivalent,
                    "search missed `{a}` ~ `{b}`"
                );
                let mut replay = free_reduce(&a);
                for mv in &outcome.path {
                    replay = free_reduce(&apply_move(&replay, mv).unwrap());
                }
                assert_eq!(replay, free_reduce(&b), "path from `{a}` misses `{b}`");
            }

            let knot: BraidWord = "2 | s1".parse().unwrap();
            let two_circles: BraidWord = "2 | ".parse().unwrap();
            let outcome = equiv_within(&knot, &two_circles, &budget).unwrap();
            assert_eq!(outcome.verdict, Verdict::NotFoundWithinBudget);
            assert!(outcome.distinguished_by_invariant.is_some());

            let trefoil: BraidWord = "2 | s1 s1 s1".parse().unwrap();
            let unknot: BraidWord = "1 | ".parse().unwrap();
            let outcome = equiv_within(&trefoil, &unknot, &budget).unwrap();
            assert_eq!(outcome.verdict, Verdict::NotFoundWithinBudget);
            assert!(outcome.distinguished_by_invariant.is_some());
        },
    );
}

#[test]
fn criterion_8_serialization_round_trips_are_byte_stable() {
    criterion(
        "words, codes, diagrams, and polynomials survive 1000 text and JSON round trips \
         byte for byte",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            for _ in 0..1000 {
                let word = random_word(rng.gen_range(2..=5), rng.gen_range(0..=12), rng.gen())
                    .unwrap();
                let text = word.to_string();
                let reparsed: BraidWord = text.parse().unwrap();
                assert_eq!(reparsed.to_string(), text);
                let json = serde_json::to_string(&word).unwrap();
                assert_eq!(serde_json::from_str::<BraidWord>(&json).unwrap(), word);

                let code = random_code(rng.gen(), 5, 3);
                let text = code.to_string();
                let reparsed: GaussCode = text.parse().unwrap();
                assert_eq!(reparsed.to_string(), text);
                let json = serde_json::to_string(&code).unwrap();
                assert_eq!(serde_json::from_str::<GaussCode>(&json).unwrap(), code);

                let diagram = random_morse(rng.gen(), 6, 12);
                let text = diagram.to_string();
                let reparsed: MorseWord = text.parse().unwrap();
                assert_eq!(reparsed.to_string(), text);
                let json = serde_json::to_string(&diagram).unwrap();
                assert_eq!(serde_json::from_str::<MorseWord>(&json).unwrap(), diagram);

                let poly = random_poly(rng.gen());
                let text = poly.to_string();
                let reparsed: LaurentPoly = text.parse().unwrap();
                assert_eq!(reparsed.to_string(), text);
                let json = serde_json::to_string(&poly).unwrap();
                assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), poly);
            }
        },
    );
}
