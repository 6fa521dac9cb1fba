//! Exact linear systems by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// No solution exists; `row` is an equation reduced to `0 = c != 0`.
    Inconsistent { row: usize },
    /// Solutions exist but `free` parameters remain undetermined.
    Underdetermined { free: usize },
}

impl std::fmt::Display for SolveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveError::Inconsistent { row } => write!(f, "inconsistent system (equation {row})"),
            SolveError::Underdetermined { free } => {
                write!(f, "underdetermined system ({free} free parameters)")
            }
        }
    }
}

fn integer_row(row: &[Rational], rhs: &Rational) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in row.iter().chain(std::iter::once(rhs)) {
        l = l.lcm(c.denom());
    }
    row.iter()
        .chain(std::iter::once(rhs))
        .map(|c| c.numer() * (&l / c.denom()))
        .collect()
}

/// Row echelon form of the augmented integer matrix; returns pivot columns.
fn echelon(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let p = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..pivot_row.len() {
                let v = &p * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = p;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a x = b` exactly, requiring a unique solution.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    assert_eq!(a.len(), b.len(), "row count");
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a.iter().zip(b).map(|(r, c)| integer_row(r, c)).collect();
    let pivots = echelon(&mut m, ncols);
    let rank = pivots.len();
    for (i, row) in m.iter().enumerate().skip(rank) {
        if !row[ncols].is_zero() {
            return Err(SolveError::Inconsistent { row: i });
        }
    }
    if rank < ncols {
        return Err(SolveError::Underdetermined { free: ncols - rank });
    }
    let mut x = vec![Rational::zero(); ncols];
    for t in (0..rank).rev() {
        let c = pivots[t];
        let row = &m[t];
        let mut s = Rational::from_integer(row[ncols].clone());
        for j in c + 1..ncols {
            if !row[j].is_zero() {
                s -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = s / Rational::from_integer(row[c].clone());
    }
    Ok(x)
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let zero = Rational::zero();
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r, &zero)).collect();
    echelon(&mut m, ncols).len()
}

/// Exact determinant of a square rational matrix.
pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(i) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if i != c {
            m.swap(i, c);
            det = -det;
        }
        let p = m[c][c].clone();
        det *= &p;
        for i in c + 1..n {
            let f = &m[i][c] / &p;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}
