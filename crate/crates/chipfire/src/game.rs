//! Chip-firing games given by a Z-matrix.
//!
//! A game is a square integer matrix `M` with positive diagonal and
//! nonpositive off-diagonal entries whose kernel and left kernel are spanned
//! by positive vectors. Firing a strategy `f` takes `D` to `D - M f`. The
//! period `P` (with `M P = 0`) is the strategy that changes nothing, and the
//! weight `W` (with `W^T M = 0`) defines the conserved degree.
//!
//! | game                     | `M`          | `P` | `W` |
//! |--------------------------|--------------|-----|-----|
//! | row game on a digraph    | `Q^T`        | `R` | `1` |
//! | column game on a digraph | `Q`          | `1` | `R` |
//! | arithmetical chip game   | `diag(δ) - A`| `R` | `R` |

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::graph::Digraph;
use crate::lattice::Lattice;
use crate::linalg::{dot, primitive_kernel, transpose, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Row,
    Column,
}

#[derive(Debug, Clone)]
pub struct Game {
    m: Matrix,
    period: Vec<i64>,
    weight: Vec<i64>,
    lattice: Lattice,
    flow: Vec<Vec<usize>>,
}

impl Game {
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.len();
        if n < 2 {
            return Err(Error::InvalidGraph(format!("need at least 2 vertices, got {n}")));
        }
        for (i, row) in m.iter().enumerate() {
            check_dim(n, row.len())?;
            for (j, &x) in row.iter().enumerate() {
                if i != j && x > 0 {
                    return Err(Error::InvalidInput(format!(
                        "positive off-diagonal entry at ({i},{j})"
                    )));
                }
            }
        }
        let period = primitive_kernel(&m).ok_or(Error::NotStronglyConnected)?;
        let weight = primitive_kernel(&transpose(&m)).ok_or(Error::NotStronglyConnected)?;
        if period.iter().chain(&weight).any(|&x| x <= 0) {
            return Err(Error::NotStronglyConnected);
        }
        let lattice = Lattice::from_rows(n, transpose(&m));
        let flow = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && m[v][u] < 0).collect())
            .collect();
        Ok(Game { m, period, weight, lattice, flow })
    }

    pub fn on_digraph(g: &Digraph, side: Side) -> Result<Self> {
        if !g.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let q = g.laplacian();
        match side {
            Side::Row => Game::new(transpose(&q)),
            Side::Column => Game::new(q),
        }
    }

    /// The game on diag(W)·Λ: matrix diag(W)·M, same period, weight 1.
    pub fn scaled(&self) -> Game {
        let m = self
            .m
            .iter()
            .zip(&self.weight)
            .map(|(row, &w)| row.iter().map(|x| x * w).collect())
            .collect();
        Game::new(m).expect("scaling preserves the game structure")
    }

    pub fn vertex_count(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Chips a vertex loses when it fires once; deg+ in the digraph games.
    pub fn threshold(&self, v: usize) -> i64 {
        self.m[v][v]
    }

    pub fn thresholds(&self) -> Vec<i64> {
        (0..self.vertex_count()).map(|v| self.m[v][v]).collect()
    }

    /// Vertices that receive chips when `u` fires.
    pub fn receivers(&self, u: usize) -> &[usize] {
        &self.flow[u]
    }

    pub fn check_base(&self, v0: usize) -> Result<()> {
        if v0 < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "base vertex {v0} out of range for {} vertices",
                self.vertex_count()
            )))
        }
    }

    pub fn check_divisor(&self, d: &[i64]) -> Result<()> {
        check_dim(self.vertex_count(), d.len())
    }

    /// D - M f.
    pub fn fire(&self, d: &[i64], f: &[i64]) -> Result<Vec<i64>> {
        self.check_divisor(d)?;
        check_dim(self.vertex_count(), f.len())?;
        let mut out = d.to_vec();
        for (u, &k) in f.iter().enumerate() {
            if k != 0 {
                self.fire_vertex(&mut out, u, k);
            }
        }
        Ok(out)
    }

    /// Fires vertex `u` `times` times in place (borrows when negative).
    pub fn fire_vertex(&self, d: &mut [i64], u: usize, times: i64) {
        for (v, x) in d.iter_mut().enumerate() {
            *x -= self.m[v][u] * times;
        }
    }

    pub fn degree(&self, d: &[i64]) -> i64 {
        dot(&self.weight, d)
    }

    pub fn degree_plus(&self, d: &[i64]) -> i64 {
        degree_plus(&self.weight, d)
    }

    pub fn equivalent(&self, a: &[i64], b: &[i64]) -> bool {
        a.len() == b.len() && {
            let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            self.lattice.contains(&diff)
        }
    }

    /// Canonical residue of the class of `d`, usable as a hash key.
    pub fn class_key(&self, d: &[i64]) -> Vec<i64> {
        self.lattice.residue(d)
    }

    pub fn natural_form(&self, f: &[i64]) -> Result<Vec<i64>> {
        natural_form(&self.period, f)
    }

    /// Nonzero strategies with 0 <= f <= P and f(v0) = 0, lexicographically.
    pub fn valid_strategies(&self, v0: usize) -> ValidStrategies {
        let mut upper = self.period.clone();
        upper[v0] = 0;
        ValidStrategies { upper, current: Some(vec![0; self.vertex_count()]) }
    }

    /// The divisor with entries M[v][v] - 2.
    pub fn natural_canonical(&self) -> Vec<i64> {
        self.thresholds().into_iter().map(|t| t - 2).collect()
    }
}

pub fn degree(weight: &[i64], d: &[i64]) -> i64 {
    dot(weight, d)
}

pub fn degree_plus(weight: &[i64], d: &[i64]) -> i64 {
    weight.iter().zip(d).map(|(w, x)| w * x.max(&0)).sum()
}

/// The unique f' = f - kP with f' <= P and f' not <= 0, where
/// k = max_i ceil(f_i / p_i) - 1.
pub fn natural_form(period: &[i64], f: &[i64]) -> Result<Vec<i64>> {
    check_dim(period.len(), f.len())?;
    if f.iter().all(|&x| x == 0) {
        return Err(Error::ZeroStrategy);
    }
    let k = f
        .iter()
        .zip(period)
        .map(|(&x, &p)| num_integer::Integer::div_ceil(&x, &p))
        .max()
        .expect("nonempty")
        - 1;
    Ok(f.iter().zip(period).map(|(x, p)| x - k * p).collect())
}

pub struct ValidStrategies {
    upper: Vec<i64>,
    current: Option<Vec<i64>>,
}

impl Iterator for ValidStrategies {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.current.as_mut()?;
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                return None;
            }
            i -= 1;
            if cur[i] < self.upper[i] {
                cur[i] += 1;
                for x in cur[i + 1..].iter_mut() {
                    *x = 0;
                }
                return Some(cur.clone());
            }
        }
    }
}

/// Row game D - Q^T f or column game D - Q f on a digraph.
pub fn apply_firing(g: &Digraph, side: Side, d: &[i64], f: &[i64]) -> Result<Vec<i64>> {
    let n = g.vertex_count();
    check_dim(n, d.len())?;
    check_dim(n, f.len())?;
    let q = g.laplacian();
    Ok((0..n)
        .map(|v| {
            let moved: i64 = (0..n)
                .map(|u| match side {
                    Side::Row => q[u][v] * f[u],
                    Side::Column => q[v][u] * f[u],
                })
                .sum();
            d[v] - moved
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn row_and_column_firing() {
        let t3 = fixtures::t3();
        assert_eq!(apply_firing(&t3, Side::Row, &[0, 0, 0], &[1, 0, 0]).unwrap(), vec![-1, 1, 0]);
        assert_eq!(apply_firing(&t3, Side::Row, &[4, -2, 7], &[1, 1, 1]).unwrap(), vec![4, -2, 7]);
        // Column firing of v1 on B2: v1 loses deg+(v1) = 2, v0 gains one chip
        // per arc v0 -> v1.
        let b2 = fixtures::b2();
        assert_eq!(apply_firing(&b2, Side::Column, &[0, 0], &[0, 1]).unwrap(), vec![1, -2]);
        assert_eq!(apply_firing(&b2, Side::Row, &[0, 0], &[0, 1]).unwrap(), vec![2, -2]);
        assert!(matches!(
            apply_firing(&b2, Side::Row, &[0, 0, 0], &[0, 1]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn game_fire_matches_apply_firing() {
        let b2 = fixtures::b2();
        for side in [Side::Row, Side::Column] {
            let game = Game::on_digraph(&b2, side).unwrap();
            let f = [3, -1];
            let d = [5, -4];
            assert_eq!(game.fire(&d, &f).unwrap(), apply_firing(&b2, side, &d, &f).unwrap());
        }
    }

    #[test]
    fn periods_and_weights() {
        let b2 = fixtures::b2();
        let row = Game::on_digraph(&b2, Side::Row).unwrap();
        assert_eq!(row.period(), &[2, 1]);
        assert_eq!(row.weight(), &[1, 1]);
        let col = Game::on_digraph(&b2, Side::Column).unwrap();
        assert_eq!(col.period(), &[1, 1]);
        assert_eq!(col.weight(), &[2, 1]);
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&[1, 1, 1], &[1, -1, 0]), 0);
        assert_eq!(degree(&[2, 1], &[1, 1]), 3);
        assert_eq!(degree(&[1, 2, 1, 2, 1, 2], &[-1, 0, 1, 1, 1, 0]), 3);
        assert_eq!(degree_plus(&[1, 1, 1], &[-5, 2, 3]), 5);
        assert_eq!(degree_plus(&[1, 2, 3], &[-1, -1, 2]), 6);
        assert_eq!(degree_plus(&[2, 1], &[3, 4]), degree(&[2, 1], &[3, 4]));
    }

    #[test]
    fn equivalence() {
        let t3 = Game::on_digraph(&fixtures::t3(), Side::Row).unwrap();
        assert!(t3.equivalent(&[2, 0, 1], &[2, 0, 1]));
        assert!(t3.equivalent(&[0, 0, 0], &[-1, 1, 0]));
        assert!(!t3.equivalent(&[1, 0, 0], &[0, 0, 0]));
    }

    #[test]
    fn natural_forms() {
        assert_eq!(natural_form(&[1, 1, 1], &[5, 5, 5]).unwrap(), vec![1, 1, 1]);
        assert_eq!(natural_form(&[2, 1], &[3, 0]).unwrap(), vec![1, -1]);
        assert_eq!(natural_form(&[1, 1, 1], &[0, -2, 1]).unwrap(), vec![0, -2, 1]);
        assert_eq!(natural_form(&[1, 1], &[0, 0]), Err(Error::ZeroStrategy));
    }

    #[test]
    fn valid_strategy_counts() {
        let t3 = Game::on_digraph(&fixtures::t3(), Side::Row).unwrap();
        let all: Vec<_> = t3.valid_strategies(0).collect();
        assert_eq!(all, vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]);
        let b2 = Game::on_digraph(&fixtures::b2(), Side::Row).unwrap();
        assert_eq!(b2.valid_strategies(0).collect::<Vec<_>>(), vec![vec![0, 1]]);
        let ec2 = Game::on_digraph(&fixtures::ec(2).associated_digraph(), Side::Row).unwrap();
        assert_eq!(ec2.valid_strategies(0).count(), 17);
    }
}
