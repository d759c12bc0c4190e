//! Invariants as property tests over the small-game pool and random inputs.

mod common;

use std::sync::OnceLock;

use chipfire::arithmetical::{euclidean_sequence, good_representation, is_good_representation};
use chipfire::game::natural_form;
use chipfire::oracle::{count_good_representations, reduced_bruteforce};
use chipfire::rank::{enumerate_extremes, rank_via_extremes, Ranker};
use chipfire::reduction::{all_reduced_representatives, is_reduced, reduce};
use chipfire::sandpile::{stabilize, stabilize_with};
use chipfire::{Game, DEFAULT_BUDGET};
use common::{random_digraph, row, small_games};
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pool() -> &'static [(String, Game)] {
    static POOL: OnceLock<Vec<(String, Game)>> = OnceLock::new();
    POOL.get_or_init(small_games)
}

/// A pool game, a base vertex and a divisor with entries in [lo, hi].
fn game_and_divisor(lo: i64, hi: i64) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0..pool().len()).prop_flat_map(move |i| {
        let n = pool()[i].1.vertex_count();
        (Just(i), 0..n, prop::collection::vec(lo..=hi, n))
    })
}

fn game_divisor_strategy() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (0..pool().len()).prop_flat_map(|i| {
        let n = pool()[i].1.vertex_count();
        (
            Just(i),
            prop::collection::vec(-5i64..=5, n),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(-3i64..=3, n),
        )
    })
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn firing_is_additive_and_keeps_degree((i, d, f, g) in game_divisor_strategy()) {
        let game = &pool()[i].1;
        let once = game.fire(&game.fire(&d, &f).unwrap(), &g).unwrap();
        prop_assert_eq!(&once, &game.fire(&d, &add(&f, &g)).unwrap());
        prop_assert_eq!(game.degree(&once), game.degree(&d));
        prop_assert!(game.equivalent(&once, &d));
        prop_assert_eq!(game.fire(&d, game.period()).unwrap(), d);
    }

    #[test]
    fn natural_form_is_canonical((i, _d, f, _g) in game_divisor_strategy()) {
        prop_assume!(f.iter().any(|&x| x != 0));
        let game = &pool()[i].1;
        let p = game.period();
        let nf = natural_form(p, &f).unwrap();
        prop_assert!(nf.iter().zip(p).all(|(x, q)| x <= q));
        prop_assert!(nf.iter().any(|&x| x > 0));
        let k = Integer::div_floor(&(f[0] - nf[0]), &p[0]);
        prop_assert!(f.iter().zip(&nf).zip(p).all(|((a, b), q)| a - b == k * q));
        prop_assert_eq!(natural_form(p, &nf).unwrap(), nf.clone());
        let shifted: Vec<i64> = f.iter().zip(p).map(|(x, q)| x + 3 * q).collect();
        prop_assume!(shifted.iter().any(|&x| x != 0));
        prop_assert_eq!(natural_form(p, &shifted).unwrap(), nf);
    }

    #[test]
    fn lattice_is_closed((i, d, f, g) in game_divisor_strategy()) {
        let game = &pool()[i].1;
        let lattice = game.lattice();
        let a: Vec<i64> = game.fire(&vec![0; d.len()], &f).unwrap();
        let b: Vec<i64> = game.fire(&vec![0; d.len()], &g).unwrap();
        prop_assert!(lattice.contains(&a));
        prop_assert!(lattice.contains(&add(&a, &b)));
        prop_assert!(lattice.contains(&a.iter().map(|x| -x).collect::<Vec<_>>()));
        prop_assert_eq!(lattice.contains(&d), lattice.contains(&add(&d, &a)));
        prop_assert_eq!(lattice.residue(&d), lattice.residue(&add(&d, &b)));
    }

    #[test]
    fn reduce_gives_equivalent_reduced_divisor((i, v0, d) in game_and_divisor(-4, 6)) {
        let game = &pool()[i].1;
        let (r, f) = reduce(game, v0, &d).unwrap();
        prop_assert!(is_reduced(game, v0, &r).unwrap());
        prop_assert!(game.equivalent(&r, &d));
        prop_assert_eq!(game.fire(&d, &f).unwrap(), r.clone());
        let reps = all_reduced_representatives(game, v0, &d).unwrap();
        prop_assert!(reps.contains(&r));
    }

    #[test]
    fn reduced_representative_count_is_base_period((i, v0, d) in game_and_divisor(-4, 6)) {
        let game = &pool()[i].1;
        let reps = all_reduced_representatives(game, v0, &d).unwrap();
        prop_assert_eq!(reps.len() as i64, game.period()[v0]);
        let mut sorted = reps.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), reps.len());
        for r in &reps {
            prop_assert!(game.equivalent(r, &d));
        }
    }

    #[test]
    fn dhar_matches_bruteforce((i, v0, mut d) in game_and_divisor(0, 3)) {
        let game = &pool()[i].1;
        d[v0] = -1;
        prop_assert_eq!(is_reduced(game, v0, &d).unwrap(), reduced_bruteforce(game, v0, &d));
    }

    #[test]
    fn rank_is_monotone((i, v0, d) in game_and_divisor(-2, 3), v in 0usize..4) {
        let game = &pool()[i].1;
        let v = v % game.vertex_count();
        let mut ranker = Ranker::new(game, v0).unwrap();
        let r = ranker.rank(&d).unwrap();
        let mut up = d.clone();
        up[v] += 1;
        let r_up = ranker.rank(&up).unwrap();
        prop_assert!(r <= r_up && r_up <= r + game.weight()[v]);
        prop_assert!(r >= -1);
        prop_assert_eq!(r == -1, ranker.in_sigma(&d));
        let (reduced, _) = reduce(game, v0, &d).unwrap();
        prop_assert_eq!(ranker.rank(&reduced).unwrap(), r);
    }

    #[test]
    fn stabilization_is_order_independent(
        (i, v0, d) in game_and_divisor(0, 6),
        seed in any::<u64>(),
    ) {
        let game = &pool()[i].1;
        let mut d = d;
        d[v0] = 0;
        let (expected, _) = stabilize(game, v0, &d, Some(1_000_000)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = stabilize_with(game, v0, &d, |len| rng.gen_range(0..len)).unwrap();
        prop_assert_eq!(other, expected);
    }

    #[test]
    fn good_representations_agree_with_counting(r1 in 1i64..30, extra in 1i64..30, x in -2i64..70) {
        let r0 = r1 + extra;
        prop_assume!(r0.gcd(&r1) == 1);
        let seq = euclidean_sequence(r0, r1).unwrap();
        let found = good_representation(r0, r1, x).unwrap();
        let count = count_good_representations(&seq.values, &seq.chain_deltas(), x);
        prop_assert_eq!(found.is_some(), count > 0);
        prop_assert_eq!(found.is_some(), (0..r0).contains(&x));
        if let Some(t) = found {
            prop_assert!(is_good_representation(&seq, x, &t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_matches_extremes_on_random_digraphs(
        seed in any::<u64>(),
        n in 2usize..=4,
        d in prop::collection::vec(-2i64..=3, 4),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_digraph(&mut rng, n, 2);
        prop_assume!(g.period_vector().unwrap().iter().all(|&p| p <= 3));
        let game = row(&g);
        let d = &d[..n];
        let set = enumerate_extremes(&game, 0, DEFAULT_BUDGET).unwrap();
        let fast = Ranker::new(&game, 0).unwrap().rank(d).unwrap();
        prop_assert_eq!(rank_via_extremes(&game, &set, d, 12).unwrap(), fast);
    }
}
