#![allow(dead_code)]

use chipfire::fixtures;
use chipfire::{ArithmeticalGraph, Digraph, Game, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All integer vectors with entries in lo[v] ..= hi[v], lexicographically.
pub fn grid(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn cube(n: usize, radius: i64) -> Vec<Vec<i64>> {
    grid(&vec![-radius; n], &vec![radius; n])
}

/// Random strongly connected digraph on `n` vertices: a Hamiltonian cycle
/// in random order plus random extra arcs, multiplicities up to `max_mult`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, max_mult: i64) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut arcs = vec![vec![0i64; n]; n];
    for k in 0..n {
        arcs[order[k]][order[(k + 1) % n]] += 1;
    }
    for (i, row) in arcs.iter_mut().enumerate() {
        for (j, a) in row.iter_mut().enumerate() {
            if i != j && rng.gen_bool(0.4) {
                *a += rng.gen_range(1..=max_mult);
            }
        }
    }
    Digraph::from_matrix(arcs).expect("cycle keeps it strongly connected")
}

/// Random connected arithmetical graph with m_ij = c_ij r_i r_j, so that
/// δ_i = Σ_j c_ij r_j² is integral. `max_r = 1` gives ordinary multigraphs.
pub fn random_arithmetical<R: Rng>(rng: &mut R, n: usize, max_r: i64, max_c: i64) -> ArithmeticalGraph {
    loop {
        let mut r: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_r)).collect();
        r[rng.gen_range(0..n)] = 1;
        let mut edges = Vec::new();
        for j in 1..n {
            let i = rng.gen_range(0..j);
            edges.push((i, j, rng.gen_range(1..=max_c) * r[i] * r[j]));
        }
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.3) {
                    edges.push((i, j, rng.gen_range(1..=max_c) * r[i] * r[j]));
                }
            }
        }
        if let Ok(ag) = ArithmeticalGraph::from_edges(n, &edges, &r) {
            return ag;
        }
    }
}

pub fn row(g: &Digraph) -> Game {
    Game::on_digraph(g, Side::Row).unwrap()
}

pub fn column(g: &Digraph) -> Game {
    Game::on_digraph(g, Side::Column).unwrap()
}

/// The named arithmetical fixtures, with labels.
pub fn arithmetical_fixtures() -> Vec<(String, ArithmeticalGraph)> {
    let mut out = vec![
        ("EX-A".to_string(), fixtures::ex_a()),
        ("EX-B".to_string(), fixtures::ex_b()),
        ("EX-C".to_string(), fixtures::ex_c()),
    ];
    for n in 2..=4 {
        out.push((format!("EC({n})"), fixtures::ec(n)));
    }
    for n in 3..=6 {
        out.push((format!("cycle-mult({n})"), fixtures::cycle_multiplicities(n)));
    }
    for (a, b) in [(2, 3), (3, 4)] {
        out.push((format!("two-vertex({a},{b})"), fixtures::two_vertex(a, b)));
    }
    for (a, b) in [(3, 2), (4, 3), (5, 2), (5, 3)] {
        out.push((format!("STAR({a},{b})"), fixtures::star(a, b)));
    }
    out
}

/// Small games (at most 4 vertices, periods at most 3) used by the
/// exhaustive suites.
pub fn small_games() -> Vec<(String, Game)> {
    let mut out = Vec::new();
    for (name, g) in [
        ("T3", fixtures::t3()),
        ("B2", fixtures::b2()),
        ("P3", fixtures::p3()),
        ("K4U", fixtures::k4u()),
    ] {
        out.push((format!("{name} row"), row(&g)));
        out.push((format!("{name} column"), column(&g)));
    }
    out.push(("EC(2) chip".to_string(), fixtures::ec(2).chip_game()));
    out.push(("two-vertex(2,3) chip".to_string(), fixtures::two_vertex(2, 3).chip_game()));
    let mut rng = rng(7);
    for k in 0..12 {
        // small periods keep the brute-force strategy boxes exhaustive
        let g = loop {
            let g = random_digraph(&mut rng, 2 + k % 3, 2);
            if g.period_vector().unwrap().iter().all(|&p| p <= 3) {
                break g;
            }
        };
        out.push((format!("random digraph {k} row"), row(&g)));
        out.push((format!("random digraph {k} column"), column(&g)));
    }
    out
}

/// Number of valid firing strategies at any base: Π (P_v + 1) over v ≠ v0.
pub fn strategy_count(game: &Game, v0: usize) -> u64 {
    game.period()
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != v0)
        .map(|(_, &p)| p as u64 + 1)
        .product()
}
