//! Brute-force reference implementations for tiny instances. They share no
//! code with the Dhar-based algorithms beyond firing itself.

use std::collections::HashMap;

use crate::game::Game;
use crate::graph::Digraph;

/// Is there an f with entries in [-radius, radius] and D - M f >= 0?
/// One-sided: false may mean the box is too small.
pub fn effective_bruteforce(game: &Game, d: &[i64], radius: i64) -> bool {
    let n = game.vertex_count();
    if d.iter().all(|&x| x >= 0) {
        return true;
    }
    if game.degree(d) < 0 {
        return false;
    }
    let side = (2 * radius + 1) as u64;
    let total = side.pow(n as u32);
    let m = game.matrix();
    let mut f = vec![0i64; n];
    (0..total).any(|mut idx| {
        for x in f.iter_mut() {
            *x = (idx % side) as i64 - radius;
            idx /= side;
        }
        (0..n).all(|v| d[v] - (0..n).map(|u| m[v][u] * f[u]).sum::<i64>() >= 0)
    })
}

/// All E >= 0 with weighted degree exactly `target`, lexicographically.
pub fn weighted_compositions(weight: &[i64], target: i64) -> Vec<Vec<i64>> {
    fn go(weight: &[i64], i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == weight.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left / weight[i] {
            cur.push(k);
            go(weight, i + 1, left - k * weight[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, 0, target, &mut Vec::new(), &mut out);
    out
}

/// Rank straight from the definition: the least degree of an effective E
/// with D - E not equivalent to an effective divisor, minus one, using
/// `effective_bruteforce` with the given box as the test.
pub fn rank_bruteforce(game: &Game, d: &[i64], radius: i64) -> i64 {
    let mut cache: HashMap<Vec<i64>, bool> = HashMap::new();
    rank_bruteforce_cached(game, d, radius, &mut cache)
}

pub fn rank_bruteforce_cached(
    game: &Game,
    d: &[i64],
    radius: i64,
    cache: &mut HashMap<Vec<i64>, bool>,
) -> i64 {
    let mut target = 0;
    loop {
        for e in weighted_compositions(game.weight(), target) {
            let diff: Vec<i64> = d.iter().zip(&e).map(|(a, b)| a - b).collect();
            let eff = *cache
                .entry(diff.clone())
                .or_insert_with(|| effective_bruteforce(game, &diff, radius));
            if !eff {
                return target - 1;
            }
        }
        target += 1;
    }
}

/// Condition (i) plus, for every valid strategy, a negative entry off v0
/// after firing.
pub fn reduced_bruteforce(game: &Game, v0: usize, d: &[i64]) -> bool {
    let n = game.vertex_count();
    if (0..n).any(|v| v != v0 && d[v] < 0) {
        return false;
    }
    game.valid_strategies(v0).all(|f| {
        let after = game.fire(d, &f).expect("dimensions agree");
        (0..n).any(|v| v != v0 && after[v] < 0)
    })
}

/// Directed parking test by subset enumeration: every nonempty A avoiding
/// v0 has a vertex with more arcs leaving A than chips.
pub fn gparking_bruteforce(g: &Digraph, v0: usize, d: &[i64]) -> bool {
    let n = g.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != v0).collect();
    if others.iter().any(|&v| d[v] < 0) {
        return false;
    }
    (1u64..1 << others.len()).all(|mask| {
        let inside: Vec<bool> = {
            let mut s = vec![false; n];
            for (k, &v) in others.iter().enumerate() {
                s[v] = mask >> k & 1 == 1;
            }
            s
        };
        (0..n).filter(|&v| inside[v]).any(|v| {
            let leaving: i64 = (0..n).filter(|&u| !inside[u]).map(|u| g.multiplicity(v, u)).sum();
            leaving > d[v]
        })
    })
}

/// Number of good representations of x, counted by a digit automaton that
/// tracks whether a δ-1 digit is followed only by δ-2 digits so far.
pub fn count_good_representations(values: &[i64], deltas: &[i64], x: i64) -> u64 {
    fn go(values: &[i64], deltas: &[i64], i: usize, left: i64, open: bool) -> u64 {
        if i == deltas.len() {
            return (left == 0) as u64;
        }
        let r = values[i + 1];
        let mut total = 0;
        for t in 0..deltas[i] {
            if t * r > left {
                break;
            }
            let next_open = if t == deltas[i] - 1 {
                if open {
                    continue;
                }
                true
            } else {
                open && t == deltas[i] - 2
            };
            total += go(values, deltas, i + 1, left - t * r, next_open);
        }
        total
    }
    go(values, deltas, 0, x, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Side;

    #[test]
    fn effectivity_boxes() {
        let t3 = Game::on_digraph(&fixtures::t3(), Side::Row).unwrap();
        assert!(effective_bruteforce(&t3, &[2, 0, 1], 0));
        assert!(effective_bruteforce(&t3, &[-1, 1, 0], 2));
        let exa = fixtures::ex_a().chip_game();
        assert!(!effective_bruteforce(&exa, &[-1, 0, 1, 1, 1, 0], 6));
    }

    #[test]
    fn brute_ranks() {
        let k4 = Game::on_digraph(&fixtures::k4u(), Side::Row).unwrap();
        assert_eq!(rank_bruteforce(&k4, &[-1, 0, 0, 0], 2), -1);
        assert_eq!(rank_bruteforce(&k4, &[0, 0, 0, 0], 2), 0);
        assert_eq!(rank_bruteforce(&k4, &[1, 1, 1, 1], 2), 2);
    }

    #[test]
    fn brute_reducedness() {
        let t3 = Game::on_digraph(&fixtures::t3(), Side::Row).unwrap();
        assert!(reduced_bruteforce(&t3, 0, &[0, 0, 0]));
        assert!(!reduced_bruteforce(&t3, 0, &[0, 1, 0]));
    }

    #[test]
    fn compositions() {
        assert_eq!(weighted_compositions(&[2, 1], 3), vec![vec![0, 3], vec![1, 1]]);
        assert!(weighted_compositions(&[2, 2], 3).is_empty());
    }

    #[test]
    fn good_rep_counts() {
        assert_eq!(count_good_representations(&[5, 3, 1], &[2, 3], 4), 1);
        assert_eq!(count_good_representations(&[5, 3, 1], &[2, 3], 5), 0);
    }
}
