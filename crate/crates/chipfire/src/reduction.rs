//! Reduced divisors, the generalized Dhar algorithm and reduction.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Game, Side};
use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DharStep {
    /// Strategy before this step's decrement.
    pub strategy: Vec<i64>,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DharTrace {
    pub steps: Vec<DharStep>,
    pub terminal: Vec<i64>,
    pub reduced_witnesses: Vec<Vec<i64>>,
}

impl DharTrace {
    pub fn is_reduced(&self) -> bool {
        self.terminal.iter().all(|&x| x == 0)
    }
}

struct DharRun {
    terminal: Vec<i64>,
    witnesses: Vec<Vec<i64>>,
    steps: Vec<DharStep>,
}

fn check_sandpile_form(game: &Game, v0: usize, d: &[i64]) -> Result<()> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    match (0..d.len()).find(|&v| v != v0 && d[v] < 0) {
        Some(v) => Err(Error::NotSandpileForm(v)),
        None => Ok(()),
    }
}

/// Runs the decreasing-strategy recursion from f = P. `current` tracks
/// D - M f, which starts at D because M P = 0.
fn run_dhar(game: &Game, v0: usize, d: &[i64], record: bool, witnesses: bool) -> DharRun {
    let n = game.vertex_count();
    let mut f = game.period().to_vec();
    let mut current = d.to_vec();
    let mut steps = Vec::new();
    let mut found = Vec::new();
    loop {
        let debtor = (0..n).find(|&v| v != v0 && current[v] <= -1);
        let v = match debtor {
            Some(v) => v,
            None if f[v0] > 0 => {
                if witnesses {
                    found.push(current.clone());
                }
                v0
            }
            None => break,
        };
        if record {
            steps.push(DharStep { strategy: f.clone(), vertex: v });
        }
        f[v] -= 1;
        game.fire_vertex(&mut current, v, -1);
    }
    DharRun { terminal: f, witnesses: found, steps }
}

pub fn dhar(game: &Game, v0: usize, d: &[i64]) -> Result<DharTrace> {
    check_sandpile_form(game, v0, d)?;
    let run = run_dhar(game, v0, d, true, true);
    Ok(DharTrace { steps: run.steps, terminal: run.terminal, reduced_witnesses: run.witnesses })
}

pub fn is_reduced(game: &Game, v0: usize, d: &[i64]) -> Result<bool> {
    check_sandpile_form(game, v0, d)?;
    Ok(reduced_unchecked(game, v0, d))
}

pub(crate) fn reduced_unchecked(game: &Game, v0: usize, d: &[i64]) -> bool {
    run_dhar(game, v0, d, false, false).terminal.iter().all(|&x| x == 0)
}

/// Distance layers from `v0` along the direction chips flow when firing.
fn layers(game: &Game, v0: usize) -> Vec<Vec<usize>> {
    let n = game.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[v0] = 0;
    let mut queue = VecDeque::from([v0]);
    while let Some(u) = queue.pop_front() {
        for &v in game.receivers(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut out = vec![Vec::new(); depth + 1];
    for (v, &k) in dist.iter().enumerate() {
        out[k].push(v);
    }
    out
}

/// Returns a v0-reduced divisor equivalent to `d` and the strategy `f` with
/// result = d - M f.
pub fn reduce(game: &Game, v0: usize, d: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    Ok(reduce_unchecked(game, v0, d))
}

pub(crate) fn reduce_unchecked(game: &Game, v0: usize, d: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let n = game.vertex_count();
    let mut current = d.to_vec();
    let mut total = vec![0i64; n];

    // Clear debt layer by layer from the outside in: firing everything
    // closer to v0 than layer i pushes at least one chip per firing into each
    // vertex of layer i, while the outer layers only receive.
    let layers = layers(game, v0);
    let mut inner = vec![false; n];
    for layer in &layers {
        for &v in layer {
            inner[v] = true;
        }
    }
    for i in (1..layers.len()).rev() {
        for &v in &layers[i] {
            inner[v] = false;
        }
        let b = layers[i].iter().map(|&v| -current[v]).max().unwrap_or(0).max(0);
        if b > 0 {
            for u in (0..n).filter(|&u| inner[u]) {
                game.fire_vertex(&mut current, u, b);
                total[u] += b;
            }
        }
    }
    debug_assert!((0..n).all(|v| v == v0 || current[v] >= 0));

    // A failing Dhar run ends at a nonzero valid strategy that keeps the
    // divisor nonnegative off v0; fire it as often as that stays true.
    loop {
        let run = run_dhar(game, v0, &current, false, false);
        let f = run.terminal;
        if f.iter().all(|&x| x == 0) {
            break;
        }
        let delta: Vec<i64> = (0..n)
            .map(|v| (0..n).map(|u| game.matrix()[v][u] * f[u]).sum())
            .collect();
        let k = (0..n)
            .filter(|&v| v != v0 && delta[v] > 0)
            .map(|v| current[v] / delta[v])
            .min()
            .expect("a valid firing loses chips somewhere off the base");
        debug_assert!(k >= 1);
        for v in 0..n {
            current[v] -= k * delta[v];
            total[v] += k * f[v];
        }
    }
    (current, total)
}

/// The r0 distinct v0-reduced divisors equivalent to `d`, sorted.
pub fn all_reduced_representatives(game: &Game, v0: usize, d: &[i64]) -> Result<Vec<Vec<i64>>> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    Ok(reps_unchecked(game, v0, d))
}

pub(crate) fn reps_unchecked(game: &Game, v0: usize, d: &[i64]) -> Vec<Vec<i64>> {
    let (reduced, _) = reduce_unchecked(game, v0, d);
    reps_of_reduced(game, v0, &reduced)
}

pub(crate) fn reps_of_reduced(game: &Game, v0: usize, reduced: &[i64]) -> Vec<Vec<i64>> {
    let mut reps = run_dhar(game, v0, reduced, false, true).witnesses;
    reps.sort();
    debug_assert_eq!(reps.len() as i64, game.period()[v0]);
    reps
}

pub fn is_effective_class(game: &Game, v0: usize, d: &[i64]) -> Result<bool> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    Ok(effective_unchecked(game, v0, d))
}

pub(crate) fn effective_unchecked(game: &Game, v0: usize, d: &[i64]) -> bool {
    if d.iter().all(|&x| x >= 0) {
        return true;
    }
    if game.degree(d) < 0 {
        return false;
    }
    // Reduced representatives are nonnegative off v0.
    reps_unchecked(game, v0, d).iter().any(|r| r[v0] >= 0)
}

/// Directed G-parking test: Dhar's burning in the column game.
pub fn is_gparking(g: &Digraph, v0: usize, d: &[i64]) -> Result<bool> {
    let game = Game::on_digraph(g, Side::Column)?;
    is_reduced(&game, v0, d)
}

/// Column-game reduction performed directly with column firings.
pub fn column_reduce(g: &Digraph, v0: usize, d: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let game = Game::on_digraph(g, Side::Column)?;
    reduce(&game, v0, d)
}

/// Column-game reduction delegated to the row game of the Eulerian digraph
/// with Laplacian Q^T diag(R), which plays on diag(R)·D.
pub fn column_reduce_via_eulerian(
    g: &Digraph,
    v0: usize,
    d: &[i64],
) -> Result<(Vec<i64>, Vec<i64>)> {
    let r = g.period_vector()?;
    let euler = Game::on_digraph(&g.eulerian_transform()?, Side::Row)?;
    let scaled: Vec<i64> = d.iter().zip(&r).map(|(x, w)| x * w).collect();
    let (reduced, f) = reduce(&euler, v0, &scaled)?;
    let back = reduced
        .iter()
        .zip(&r)
        .map(|(x, w)| {
            debug_assert_eq!(x % w, 0);
            x / w
        })
        .collect();
    Ok((back, f))
}
