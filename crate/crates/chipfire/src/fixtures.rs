//! Small named graphs used by tests, examples and the CLI documentation.

use crate::arithmetical::{euclidean_star, ArithmeticalGraph};
use crate::graph::Digraph;

/// Directed 3-cycle v0 -> v1 -> v2 -> v0.
pub fn t3() -> Digraph {
    Digraph::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap()
}

/// One arc v0 -> v1 and two arcs v1 -> v0.
pub fn b2() -> Digraph {
    Digraph::new(2, &[(0, 1, 1), (1, 0, 2)]).unwrap()
}

/// Undirected path v0 - v1 - v2 with both orientations of every edge.
pub fn p3() -> Digraph {
    Digraph::new(3, &[(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)]).unwrap()
}

/// Complete graph on 4 vertices with both orientations of every edge.
pub fn k4u() -> Digraph {
    let mut arcs = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                arcs.push((i, j, 1));
            }
        }
    }
    Digraph::new(4, &arcs).unwrap()
}

/// Bidirected version of an undirected multigraph.
pub fn undirected(vertices: usize, edges: &[(usize, usize, i64)]) -> Digraph {
    let arcs: Vec<_> = edges.iter().flat_map(|&(i, j, m)| [(i, j, m), (j, i, m)]).collect();
    Digraph::new(vertices, &arcs).unwrap()
}

/// 6-cycle v0 … v5 with two extra edges v0 v3, R = (1,2,1,2,1,2).
pub fn ex_a() -> ArithmeticalGraph {
    let edges = [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1), (0, 3, 2)];
    ArithmeticalGraph::from_edges(6, &edges, &[1, 2, 1, 2, 1, 2]).unwrap()
}

/// K4 on v0 … v3 with the edge v2 v3 replaced by the path v2 v4 v5 v3,
/// R = (2,4,3,3,3,3).
pub fn ex_b() -> ArithmeticalGraph {
    let edges = [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 4, 1), (4, 5, 1), (5, 3, 1)];
    ArithmeticalGraph::from_edges(6, &edges, &[2, 4, 3, 3, 3, 3]).unwrap()
}

/// Three vertices with r_i r_j edges between v_i and v_j, R = (1,2,3).
pub fn ex_c() -> ArithmeticalGraph {
    complete_product(&[1, 2, 3])
}

/// Complete graph with r_i r_j parallel edges between v_i and v_j.
pub fn complete_product(r: &[i64]) -> ArithmeticalGraph {
    let mut edges = Vec::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            edges.push((i, j, r[i] * r[j]));
        }
    }
    ArithmeticalGraph::from_edges(r.len(), &edges, r).unwrap()
}

/// 2n-cycle with multiplicities alternating 1, 2, starting with 1 at v0.
pub fn ec(n: usize) -> ArithmeticalGraph {
    let len = 2 * n;
    let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len, 1)).collect();
    let r: Vec<i64> = (0..len).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect();
    ArithmeticalGraph::from_edges(len, &edges, &r).unwrap()
}

/// n-cycle whose i-th vertex (from 0) has multiplicity i + 1.
pub fn cycle_multiplicities(n: usize) -> ArithmeticalGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    let r: Vec<i64> = (1..=n as i64).collect();
    ArithmeticalGraph::from_edges(n, &edges, &r).unwrap()
}

/// Two vertices joined by r0·r1 edges, R = (r0, r1).
pub fn two_vertex(r0: i64, r1: i64) -> ArithmeticalGraph {
    ArithmeticalGraph::from_edges(2, &[(0, 1, r0 * r1)], &[r0, r1]).unwrap()
}

pub fn star(r0: i64, r1: i64) -> ArithmeticalGraph {
    euclidean_star(r0, r1).unwrap()
}
