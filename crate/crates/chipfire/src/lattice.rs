//! Integer lattices with an exact membership test.
//!
//! The generators are brought to Hermite normal form once: rows in echelon
//! order, positive pivots, entries above each pivot reduced into
//! `[0, pivot)`. Membership and canonical coset residues then take one pass
//! over the basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    generators: Matrix,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    small: Option<Vec<Vec<i128>>>,
}

fn hermite(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (p, q) = (a[r][c].clone(), a[i][c].clone());
            let e = p.extended_gcd(&q);
            let (pg, qg) = (&p / &e.gcd, &q / &e.gcd);
            for j in c..cols {
                let top = &e.x * &a[r][j] + &e.y * &a[i][j];
                let bottom = &qg * &a[r][j] - &pg * &a[i][j];
                a[r][j] = top;
                a[i][j] = bottom;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let k = a[i][c].div_floor(&a[r][c]);
            if !k.is_zero() {
                for j in c..cols {
                    let delta = &k * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

impl Lattice {
    /// The lattice spanned by the given rows, each of length `dim`.
    pub fn from_rows(dim: usize, rows: Matrix) -> Self {
        let big = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), dim, "generator length");
                row.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        let (basis, pivots) = hermite(big, dim);
        let small = basis
            .iter()
            .map(|row| row.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        Lattice { dim, generators: rows, basis, pivots, small }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn contains_big(&self, x: &[BigInt]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let mut x = x.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if x[..c].iter().any(|v| !v.is_zero()) {
                return false;
            }
            let (k, rem) = x[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return false;
            }
            for j in c..self.dim {
                let delta = &k * &row[j];
                x[j] -= delta;
            }
        }
        x.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.contains_big(&big)
    }

    /// Rational vectors belong only when every entry is an integer.
    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        if !x.iter().all(|q| q.is_integer()) {
            return false;
        }
        let big: Vec<BigInt> = x.iter().map(|q| q.to_integer()).collect();
        self.contains_big(&big)
    }

    /// Canonical residue of `x` modulo the lattice: two vectors are congruent
    /// exactly when their residues agree.
    pub fn residue_big(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut x = x.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let k = x[c].div_floor(&row[c]);
            if !k.is_zero() {
                for j in c..self.dim {
                    let delta = &k * &row[j];
                    x[j] -= delta;
                }
            }
        }
        x
    }

    fn residue_small(&self, basis: &[Vec<i128>], x: &[i64]) -> Option<Vec<i64>> {
        let mut y: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        for (row, &c) in basis.iter().zip(&self.pivots) {
            let k = y[c].div_euclid(row[c]);
            if k != 0 {
                for j in c..self.dim {
                    y[j] = y[j].checked_sub(k.checked_mul(row[j])?)?;
                }
            }
        }
        y.into_iter().map(|v| i64::try_from(v).ok()).collect()
    }

    pub fn residue(&self, x: &[i64]) -> Vec<i64> {
        if let Some(basis) = &self.small {
            if let Some(r) = self.residue_small(basis, x) {
                return r;
            }
        }
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.residue_big(&big)
            .iter()
            .map(|v| v.to_i64().expect("lattice residue exceeds 64 bits"))
            .collect()
    }

    /// Image under p -> diag(w) p.
    pub fn scaled(&self, w: &[i64]) -> Lattice {
        let rows = self
            .generators
            .iter()
            .map(|g| g.iter().zip(w).map(|(a, b)| a * b).collect())
            .collect();
        Lattice::from_rows(self.dim, rows)
    }

    /// Image under p -> diag(w)^{-1} p, defined when every generator image is
    /// integral.
    pub fn unscaled(&self, w: &[i64]) -> Option<Lattice> {
        let rows = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .zip(w)
                    .map(|(a, b)| if a % b == 0 { Some(a / b) } else { None })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Lattice::from_rows(self.dim, rows))
    }

}
