//! Dense matrices of polynomials.

use std::sync::Arc;

use num_traits::One;

use super::{Poly, Rational, VarSet};
use crate::error::{Error, Result};

pub type PolyGrid = Vec<Vec<Poly>>;

pub fn identity(n: usize, vars: &Arc<VarSet>) -> PolyGrid {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Poly::one(vars)
                    } else {
                        Poly::zero(vars)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn zeros(rows: usize, cols: usize, vars: &Arc<VarSet>) -> PolyGrid {
    vec![vec![Poly::zero(vars); cols]; rows]
}

pub fn transpose(a: &PolyGrid) -> PolyGrid {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn mul(a: &PolyGrid, b: &PolyGrid) -> PolyGrid {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let mut s = Poly::zero(row[0].vars());
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s = s + &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn add(a: &PolyGrid, b: &PolyGrid) -> PolyGrid {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &PolyGrid, c: &Poly) -> PolyGrid {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn is_symmetric(a: &PolyGrid) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

/// Determinant by fraction-free (Bareiss) elimination with exact division.
pub fn det_bareiss(a: &PolyGrid) -> Poly {
    let n = a.len();
    assert!(n > 0, "empty matrix");
    let vars = a[0][0].vars().clone();
    let mut m = a.clone();
    let mut prev = Poly::one(&vars);
    let mut negate = false;
    for k in 0..n - 1 {
        let best = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].term_count());
        let Some(i) = best else {
            return Poly::zero(&vars);
        };
        if i != k {
            m.swap(i, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v.exact_divide(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Inverse of a polynomial matrix with constant nonzero determinant.
///
/// Gauss-Jordan elimination that only ever divides by nonzero constants.
pub fn inverse_constant_det(a: &PolyGrid) -> Result<PolyGrid> {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let mut left = a.clone();
    let mut right = identity(n, &vars);
    for c in 0..n {
        let pivot = (c..n).find(|&r| !left[r][c].is_zero() && left[r][c].is_constant());
        let Some(r) = pivot else {
            return Err(Error::Solver {
                step: format!("inverting column {}", c + 1),
                reason: "no constant pivot; determinant is not a nonzero constant".into(),
            });
        };
        left.swap(r, c);
        right.swap(r, c);
        let inv = Rational::one() / left[c][c].constant_term();
        for j in 0..n {
            left[c][j] = left[c][j].scale(&inv);
            right[c][j] = right[c][j].scale(&inv);
        }
        for i in 0..n {
            if i == c || left[i][c].is_zero() {
                continue;
            }
            let f = left[i][c].clone();
            for j in 0..n {
                if !left[c][j].is_zero() {
                    left[i][j] = &left[i][j] - &(&f * &left[c][j]);
                }
                if !right[c][j].is_zero() {
                    right[i][j] = &right[i][j] - &(&f * &right[c][j]);
                }
            }
        }
    }
    debug_assert!(left
        .iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| {
            if i == j {
                x.constant_term().is_one() && x.is_constant()
            } else {
                x.is_zero()
            }
        })));
    Ok(right)
}
