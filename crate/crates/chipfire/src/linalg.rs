//! Exact kernels and integer vector helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Matrix = Vec<Vec<i64>>;

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

pub fn mat_vec(m: &Matrix, x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Primitive integer generator of a one-dimensional kernel, sign chosen so
/// the entries sum to a positive value. `None` when the nullity is not 1.
pub fn primitive_kernel(m: &Matrix) -> Option<Vec<i64>> {
    let cols = m.first()?.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if cols - pivots.len() != 1 {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -a[row][free].clone();
    }
    let lcm = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let sum: BigInt = ints.iter().sum();
    let sign = if sum.is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|v| (v / &g * &sign).to_i64()).collect()
}
