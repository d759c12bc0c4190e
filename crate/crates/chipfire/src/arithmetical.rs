//! Arithmetical graphs, Euclidean chains and stars, good representations and
//! staircase divisors.

use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Game, Side};
use crate::graph::Digraph;
use crate::linalg::{gcd_all, Matrix};
use crate::rank::enumerate_extremes;
use crate::riemann_roch::rr_verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticalGraph {
    edges: Matrix,
    r: Vec<i64>,
    deltas: Vec<i64>,
}

fn is_connected(edges: &Matrix) -> bool {
    let n = edges.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if edges[u][v] > 0 && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Symmetric multiplicity matrix from undirected `(i, j, m)` triples.
pub fn edge_matrix(vertices: usize, edges: &[(usize, usize, i64)]) -> Result<Matrix> {
    let mut a = vec![vec![0i64; vertices]; vertices];
    for &(i, j, m) in edges {
        if i >= vertices || j >= vertices {
            return Err(Error::InvalidGraph(format!("edge ({i},{j}) out of range")));
        }
        if i == j {
            return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
        }
        if m < 1 {
            return Err(Error::InvalidGraph(format!("edge ({i},{j}) has multiplicity {m}")));
        }
        a[i][j] += m;
        a[j][i] += m;
    }
    Ok(a)
}

/// Checks (diag(δ) - A) R = 0 with integral δ and gcd(R) = 1.
pub fn validate_arithmetical(edges: Matrix, r: Vec<i64>) -> Result<ArithmeticalGraph> {
    let n = edges.len();
    if n < 2 {
        return Err(Error::InvalidGraph(format!("need at least 2 vertices, got {n}")));
    }
    if r.len() != n {
        return Err(Error::Dimension { expected: n, got: r.len() });
    }
    for i in 0..n {
        if edges[i].len() != n {
            return Err(Error::InvalidGraph("edge matrix is not square".into()));
        }
        if edges[i][i] != 0 {
            return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
        }
        for j in 0..n {
            if edges[i][j] != edges[j][i] || edges[i][j] < 0 {
                return Err(Error::InvalidGraph("edge matrix is not symmetric".into()));
            }
        }
    }
    if !is_connected(&edges) {
        return Err(Error::InvalidGraph("graph is not connected".into()));
    }
    if let Some(i) = r.iter().position(|&x| x < 1) {
        return Err(Error::NotArithmetical(format!("multiplicity of vertex {i} is not positive")));
    }
    let g = gcd_all(&r);
    if g != 1 {
        return Err(Error::NotPrimitive(g));
    }
    let mut deltas = Vec::with_capacity(n);
    for i in 0..n {
        let s: i64 = (0..n).map(|j| edges[i][j] * r[j]).sum();
        if s % r[i] != 0 {
            return Err(Error::NotArithmetical(format!(
                "vertex {i}: neighbour sum {s} is not divisible by {}",
                r[i]
            )));
        }
        deltas.push(s / r[i]);
    }
    Ok(ArithmeticalGraph { edges, r, deltas })
}

impl ArithmeticalGraph {
    pub fn from_edges(vertices: usize, edges: &[(usize, usize, i64)], r: &[i64]) -> Result<Self> {
        validate_arithmetical(edge_matrix(vertices, edges)?, r.to_vec())
    }

    pub fn vertex_count(&self) -> usize {
        self.r.len()
    }

    pub fn edges(&self) -> &Matrix {
        &self.edges
    }

    pub fn edge_list(&self) -> Vec<(usize, usize, i64)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.edges[i][j] > 0 {
                    out.push((i, j, self.edges[i][j]));
                }
            }
        }
        out
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.r
    }

    pub fn deltas(&self) -> &[i64] {
        &self.deltas
    }

    /// Q = diag(δ) - A.
    pub fn q(&self) -> Matrix {
        let n = self.vertex_count();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.deltas[i] } else { -self.edges[i][j] }).collect())
            .collect()
    }

    /// From 2 g0 - 2 = Σ r_i (δ_i - 2).
    pub fn g0(&self) -> Result<i64> {
        let s: i64 = self.r.iter().zip(&self.deltas).map(|(r, d)| r * (d - 2)).sum();
        if s % 2 != 0 {
            return Err(Error::NotArithmetical(format!("Σ r_i(δ_i - 2) = {s} is odd")));
        }
        Ok(s / 2 + 1)
    }

    /// Edge v_i v_j becomes r_j arcs i -> j and r_i arcs j -> i.
    pub fn associated_digraph(&self) -> Digraph {
        let n = self.vertex_count();
        let arcs = (0..n)
            .map(|i| (0..n).map(|j| self.edges[i][j] * self.r[j]).collect())
            .collect();
        Digraph::from_matrix(arcs).expect("connected arithmetical graph")
    }

    /// The game on the lattice spanned by the columns of Q, with period and
    /// weight R.
    pub fn chip_game(&self) -> Game {
        Game::new(self.q()).expect("validated arithmetical graph")
    }
}

pub fn g0(ag: &ArithmeticalGraph) -> Result<i64> {
    ag.g0()
}

/// Column-game Riemann-Roch verdict on the associated digraph.
pub fn column_rr_always(ag: &ArithmeticalGraph, budget: u128) -> Result<bool> {
    let game = Game::on_digraph(&ag.associated_digraph(), Side::Column)?;
    Ok(rr_verdict(&game, 0, budget)?.rr_property)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EuclideanSequence {
    pub values: Vec<i64>,
    /// δ_1 … δ_{m-1}, one per interior value.
    pub deltas: Vec<i64>,
}

impl EuclideanSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Chain-end value δ_m = r_{m-1} / r_m.
    pub fn end_delta(&self) -> i64 {
        let m = self.values.len() - 1;
        self.values[m - 1] / self.values[m]
    }

    /// δ_1 … δ_m, the digit bounds for good representations.
    pub fn chain_deltas(&self) -> Vec<i64> {
        let mut out = self.deltas.clone();
        out.push(self.end_delta());
        out
    }
}

/// r_{i+1} = δ_i r_i - r_{i-1} with 0 < r_{i+1} < r_i, stopping once r_m
/// divides r_{m-1}.
pub fn euclidean_sequence(r0: i64, r1: i64) -> Result<EuclideanSequence> {
    if !(r0 > r1 && r1 >= 1) {
        return Err(Error::InvalidInput(format!("need r0 > r1 >= 1, got ({r0},{r1})")));
    }
    let mut values = vec![r0, r1];
    let mut deltas = Vec::new();
    loop {
        let (prev, cur) = (values[values.len() - 2], values[values.len() - 1]);
        if prev % cur == 0 {
            break;
        }
        let delta = prev / cur + 1;
        deltas.push(delta);
        values.push(delta * cur - prev);
    }
    Ok(EuclideanSequence { values, deltas })
}

fn has_forbidden_pattern(t: &[i64], deltas: &[i64]) -> bool {
    let mut open = false;
    for (&x, &d) in t.iter().zip(deltas) {
        if x == d - 1 {
            if open {
                return true;
            }
            open = true;
        } else if x != d - 2 {
            open = false;
        }
    }
    false
}

pub fn is_good_representation(seq: &EuclideanSequence, x: i64, t: &[i64]) -> bool {
    let deltas = seq.chain_deltas();
    t.len() == deltas.len()
        && t.iter().zip(&deltas).all(|(&c, &d)| c >= 0 && c < d)
        && t.iter().zip(&seq.values[1..]).map(|(c, r)| c * r).sum::<i64>() == x
        && !has_forbidden_pattern(t, &deltas)
}

/// Digits t_1 … t_m of x over r_1 … r_m: t_1 = floor(x / r_1), and when
/// t_1 = δ_1 - 1 the remainder is taken as x - t_1 r_1 + r_2 with the next
/// digit lowered by one.
fn good_digits(values: &[i64], deltas: &[i64], x: i64) -> Option<Vec<i64>> {
    if x < 0 || x >= values[0] {
        return None;
    }
    if values.len() == 2 {
        return Some(vec![x / values[1]]);
    }
    let t1 = x / values[1];
    let rest = x - t1 * values[1];
    if t1 <= deltas[0] - 2 {
        let mut out = vec![t1];
        out.extend(good_digits(&values[1..], &deltas[1..], rest)?);
        Some(out)
    } else if t1 == deltas[0] - 1 {
        let mut tail = good_digits(&values[1..], &deltas[1..], rest + values[2])?;
        if tail[0] == 0 {
            return None;
        }
        tail[0] -= 1;
        let mut out = vec![t1];
        out.extend(tail);
        Some(out)
    } else {
        None
    }
}

pub fn good_representation(r0: i64, r1: i64, x: i64) -> Result<Option<Vec<i64>>> {
    let seq = euclidean_sequence(r0, r1)?;
    if seq.values.last() != Some(&1) {
        return Err(Error::NotPrimitive(r0.gcd(&r1)));
    }
    let deltas = seq.chain_deltas();
    let t = good_digits(&seq.values, &deltas, x);
    debug_assert!(t.as_ref().is_none_or(|t| is_good_representation(&seq, x, t)));
    Ok(t)
}

/// Center v0 of multiplicity r0 joined to r0 identical chains r_1 … r_m.
/// Chain c occupies vertices 1 + c·m … m + c·m, outward from the center.
pub fn euclidean_star(r0: i64, r1: i64) -> Result<ArithmeticalGraph> {
    let seq = euclidean_sequence(r0, r1)?;
    let m = seq.values.len() - 1;
    let n = 1 + r0 as usize * m;
    let mut edges = Vec::new();
    let mut r = vec![r0];
    for c in 0..r0 as usize {
        let first = 1 + c * m;
        edges.push((0, first, 1));
        for k in 1..m {
            edges.push((first + k - 1, first + k, 1));
        }
        r.extend_from_slice(&seq.values[1..]);
    }
    ArithmeticalGraph::from_edges(n, &edges, &r)
}

/// Every divisor on STAR(r0, r1) with -1 at the center whose chains carry the
/// good representations of 0 … r0-1 in some order.
pub fn staircase_divisors(r0: i64, r1: i64) -> Result<Vec<Vec<i64>>> {
    let seq = euclidean_sequence(r0, r1)?;
    let m = seq.values.len() - 1;
    let reps = (0..r0)
        .map(|x| {
            good_representation(r0, r1, x)?
                .ok_or_else(|| Error::InvalidInput(format!("no good representation of {x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = 1 + r0 as usize * m;
    let mut out: Vec<Vec<i64>> = (0..r0 as usize)
        .permutations(r0 as usize)
        .map(|labels| {
            let mut d = vec![0i64; n];
            d[0] = -1;
            for (c, &x) in labels.iter().enumerate() {
                d[1 + c * m..1 + (c + 1) * m].copy_from_slice(&reps[x]);
            }
            d
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmaxBound {
    pub g_min: i64,
    pub g_max: i64,
    pub g0: i64,
    pub holds: bool,
    /// Present when g_max = g0: whether K - D is extreme for every extreme
    /// class D of top degree, with K = δ - 2.
    pub pairing: Option<bool>,
}

pub fn gmax_bound_check(ag: &ArithmeticalGraph, budget: u128) -> Result<GmaxBound> {
    let game = ag.chip_game();
    let set = enumerate_extremes(&game, 0, budget)?;
    let g0 = ag.g0()?;
    let pairing = (set.g_max == g0).then(|| {
        let k: Vec<i64> = ag.deltas.iter().map(|d| d - 2).collect();
        set.classes.iter().filter(|c| c.degree == set.g_max - 1).all(|c| {
            let dual: Vec<i64> = k.iter().zip(&c.rep).map(|(a, b)| a - b).collect();
            crate::rank::is_extreme(&game, 0, &dual).unwrap_or(false)
        })
    });
    Ok(GmaxBound { g_min: set.g_min, g_max: set.g_max, g0, holds: set.g_max <= g0, pairing })
}
