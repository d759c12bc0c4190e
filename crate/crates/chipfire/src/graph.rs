//! Directed multigraphs, their Laplacians and period vectors.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{primitive_kernel, transpose, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    arcs: Matrix,
}

/// Builds a digraph from `(tail, head, multiplicity)` triples, inferring the
/// vertex count from the largest index. Repeated pairs are summed.
pub fn build_digraph(arc_list: &[(usize, usize, i64)]) -> Result<Digraph> {
    let n = arc_list
        .iter()
        .map(|&(t, h, _)| t.max(h) + 1)
        .max()
        .ok_or_else(|| Error::InvalidGraph("empty arc list".into()))?;
    Digraph::new(n, arc_list)
}

impl Digraph {
    pub fn new(vertices: usize, arc_list: &[(usize, usize, i64)]) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {vertices}"
            )));
        }
        if arc_list.is_empty() {
            return Err(Error::InvalidGraph("empty arc list".into()));
        }
        let mut arcs = vec![vec![0i64; vertices]; vertices];
        for &(t, h, m) in arc_list {
            if t >= vertices || h >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "arc ({t},{h}) out of range for {vertices} vertices"
                )));
            }
            if t == h {
                return Err(Error::InvalidGraph(format!("loop at vertex {t}")));
            }
            if m < 1 {
                return Err(Error::InvalidGraph(format!(
                    "arc ({t},{h}) has multiplicity {m}"
                )));
            }
            arcs[t][h] += m;
        }
        Ok(Digraph { arcs })
    }

    pub fn from_matrix(arcs: Matrix) -> Result<Self> {
        let n = arcs.len();
        let mut list = Vec::new();
        for (i, row) in arcs.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph("arc matrix is not square".into()));
            }
            for (j, &m) in row.iter().enumerate() {
                if m < 0 {
                    return Err(Error::InvalidGraph(format!("negative multiplicity at ({i},{j})")));
                }
                if m > 0 {
                    list.push((i, j, m));
                }
            }
        }
        Digraph::new(n, &list)
    }

    pub fn vertex_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &Matrix {
        &self.arcs
    }

    pub fn multiplicity(&self, tail: usize, head: usize) -> i64 {
        self.arcs[tail][head]
    }

    pub fn arc_list(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (i, row) in self.arcs.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn out_degree(&self, v: usize) -> i64 {
        self.arcs[v].iter().sum()
    }

    pub fn in_degree(&self, v: usize) -> i64 {
        self.arcs.iter().map(|row| row[v]).sum()
    }

    pub fn out_degrees(&self) -> Vec<i64> {
        (0..self.vertex_count()).map(|v| self.out_degree(v)).collect()
    }

    pub fn is_eulerian(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.out_degree(v) == self.in_degree(v))
    }

    /// Q = diag(deg+) - A.
    pub fn laplacian(&self) -> Matrix {
        let n = self.vertex_count();
        let mut q = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = if i == j { self.out_degree(i) } else { -self.arcs[i][j] };
            }
        }
        q
    }

    pub fn reversed(&self) -> Digraph {
        Digraph { arcs: transpose(&self.arcs) }
    }

    fn reaches_all(&self, from: usize, forward: bool) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let m = if forward { self.arcs[u][v] } else { self.arcs[v][u] };
                if m > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reaches_all(0, true) && self.reaches_all(0, false)
    }

    /// The primitive positive R with Q^T R = 0.
    pub fn period_vector(&self) -> Result<Vec<i64>> {
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let r = primitive_kernel(&transpose(&self.laplacian()))
            .ok_or_else(|| Error::InvalidInput("period vector does not fit in 64 bits".into()))?;
        debug_assert!(r.iter().all(|&x| x > 0));
        Ok(r)
    }

    /// The Eulerian digraph whose Laplacian is Q^T diag(R): arcs i -> j
    /// number A[j][i] * r_j.
    pub fn eulerian_transform(&self) -> Result<Digraph> {
        let r = self.period_vector()?;
        let n = self.vertex_count();
        let arcs = (0..n)
            .map(|i| (0..n).map(|j| self.arcs[j][i] * r[j]).collect())
            .collect();
        Digraph::from_matrix(arcs)
    }
}
