//! The region Σ of divisors not equivalent to effective ones, the rank
//! function, and extreme divisors.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::reduction::{effective_unchecked, reduced_unchecked, reps_of_reduced};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

pub fn in_sigma(game: &Game, v0: usize, d: &[i64]) -> Result<bool> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    Ok(!effective_unchecked(game, v0, d))
}

pub fn is_extreme(game: &Game, v0: usize, d: &[i64]) -> Result<bool> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    Ok(extreme_unchecked(game, v0, d))
}

fn extreme_unchecked(game: &Game, v0: usize, d: &[i64]) -> bool {
    if effective_unchecked(game, v0, d) {
        return false;
    }
    let mut up = d.to_vec();
    (0..d.len()).all(|v| {
        up[v] += 1;
        let out = effective_unchecked(game, v0, &up);
        up[v] -= 1;
        out
    })
}

/// Rank evaluator with per-class memoisation.
///
/// For D outside Σ every witness E is nonzero, so it contains some e_v and
/// r(D) = min_v (w_v + r(D - e_v)). Rank only depends on the class of D.
pub struct Ranker<'a> {
    game: &'a Game,
    v0: usize,
    cache: HashMap<Vec<i64>, i64>,
}

impl<'a> Ranker<'a> {
    pub fn new(game: &'a Game, v0: usize) -> Result<Self> {
        game.check_base(v0)?;
        Ok(Ranker { game, v0, cache: HashMap::new() })
    }

    pub fn game(&self) -> &Game {
        self.game
    }

    pub fn rank(&mut self, d: &[i64]) -> Result<i64> {
        self.game.check_divisor(d)?;
        Ok(self.rank_inner(d))
    }

    /// Rank without the dimension check; `d` must have the game's length.
    pub fn rank_unchecked(&mut self, d: &[i64]) -> i64 {
        self.rank_inner(d)
    }

    pub fn in_sigma(&mut self, d: &[i64]) -> bool {
        self.rank_inner(d) == -1
    }

    fn rank_inner(&mut self, d: &[i64]) -> i64 {
        if self.game.degree(d) < 0 {
            return -1;
        }
        let key = self.game.class_key(d);
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let r = if !effective_unchecked(self.game, self.v0, &key) {
            -1
        } else {
            let mut best = i64::MAX;
            let mut down = key.clone();
            for v in 0..down.len() {
                down[v] -= 1;
                let w = self.game.weight()[v];
                best = best.min(w + self.rank_inner(&down));
                down[v] += 1;
            }
            best
        };
        self.cache.insert(key, r);
        r
    }
}

pub fn rank(game: &Game, v0: usize, d: &[i64]) -> Result<i64> {
    Ranker::new(game, v0)?.rank(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremeClass {
    pub rep: Vec<i64>,
    pub degree: i64,
    pub all_reps: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremeClassSet {
    pub base: usize,
    pub classes: Vec<ExtremeClass>,
    pub g_min: i64,
    pub g_max: i64,
}

impl ExtremeClassSet {
    pub fn is_uniform(&self) -> bool {
        self.g_min == self.g_max
    }

    pub fn position_of(&self, game: &Game, d: &[i64]) -> Option<usize> {
        self.classes.iter().position(|c| game.equivalent(&c.rep, d))
    }
}

/// Number of candidates scanned by `enumerate_extremes`.
pub fn extreme_candidate_count(game: &Game, v0: usize) -> u128 {
    (0..game.vertex_count())
        .filter(|&v| v != v0)
        .map(|v| game.threshold(v) as u128)
        .product()
}

/// Scans every D with D(v0) = -1 and 0 <= D(v) < M[v][v] elsewhere, keeping
/// the reduced, non-effective, extreme ones, grouped by class.
pub fn enumerate_extremes(game: &Game, v0: usize, budget: u128) -> Result<ExtremeClassSet> {
    game.check_base(v0)?;
    let needed = extreme_candidate_count(game, v0);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = game.vertex_count();
    let radix: Vec<i64> = (0..n).map(|v| if v == v0 { 1 } else { game.threshold(v) }).collect();
    let decode = |mut idx: u128| {
        let mut d = vec![0i64; n];
        for v in (0..n).rev() {
            let r = radix[v] as u128;
            d[v] = (idx % r) as i64;
            idx /= r;
        }
        d[v0] = -1;
        d
    };
    let mut found: Vec<(Vec<Vec<i64>>, Vec<i64>)> = (0..needed)
        .into_par_iter()
        .filter_map(|idx| {
            let d = decode(idx);
            if !reduced_unchecked(game, v0, &d) {
                return None;
            }
            let reps = reps_of_reduced(game, v0, &d);
            if reps.iter().any(|r| r[v0] >= 0) || !extreme_unchecked(game, v0, &d) {
                return None;
            }
            Some((reps, d))
        })
        .collect();
    found.sort();
    let mut classes: Vec<ExtremeClass> = Vec::new();
    let mut last: Option<Vec<Vec<i64>>> = None;
    for (reps, d) in found {
        if last.as_ref() == Some(&reps) {
            continue;
        }
        classes.push(ExtremeClass { degree: game.degree(&d), rep: d, all_reps: reps.clone() });
        last = Some(reps);
    }
    classes.sort_by(|a, b| a.rep.cmp(&b.rep));
    let g_min = classes.iter().map(|c| c.degree).min();
    let g_max = classes.iter().map(|c| c.degree).max();
    match (g_min, g_max) {
        (Some(lo), Some(hi)) => Ok(ExtremeClassSet { base: v0, classes, g_min: lo + 1, g_max: hi + 1 }),
        _ => Err(Error::InvalidInput("no extreme divisors found".into())),
    }
}

/// Lattice points with every coordinate in [-radius, radius]. Lattice points
/// have weighted degree 0, so the last coordinate is solved from the others.
pub fn lattice_translates(game: &Game, radius: i64) -> Vec<Vec<i64>> {
    let n = game.vertex_count();
    let w = game.weight();
    let side = (2 * radius + 1) as usize;
    let total = side.pow(n as u32 - 1);
    (0..total)
        .filter_map(|mut idx| {
            let mut x = vec![0i64; n];
            for c in x.iter_mut().take(n - 1) {
                *c = (idx % side) as i64 - radius;
                idx /= side;
            }
            let partial: i64 = (0..n - 1).map(|v| w[v] * x[v]).sum();
            if partial % w[n - 1] != 0 {
                return None;
            }
            x[n - 1] = -partial / w[n - 1];
            (x[n - 1].abs() <= radius && game.lattice().contains(&x)).then_some(x)
        })
        .collect()
}

/// min over extreme classes ν and translates ℓ in the box of
/// deg+(D - ν - ℓ), minus one. An upper bound on the rank that is exact once
/// the box holds an optimal translate.
pub fn rank_via_extremes(
    game: &Game,
    extremes: &ExtremeClassSet,
    d: &[i64],
    box_radius: i64,
) -> Result<i64> {
    game.check_divisor(d)?;
    let translates = lattice_translates(game, box_radius);
    Ok(rank_via_translates(game, extremes, &translates, d))
}

pub fn rank_via_translates(
    game: &Game,
    extremes: &ExtremeClassSet,
    translates: &[Vec<i64>],
    d: &[i64],
) -> i64 {
    let mut best = i64::MAX;
    let mut diff = vec![0i64; d.len()];
    for class in &extremes.classes {
        for l in translates {
            for v in 0..d.len() {
                diff[v] = d[v] - class.rep[v] - l[v];
            }
            best = best.min(game.degree_plus(&diff));
        }
    }
    best - 1
}
