//! Small dense linear algebra over `Q(i)`: rank, inverse, and signature of
//! rational symmetric forms. Sizes here are tens, not thousands; the sparse
//! machinery for operator matrices lives in `kernel::elim`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::GQ;

/// Row-reduces a copy of `m` and returns its rank.
pub fn rank(m: &[Vec<GQ>]) -> usize {
    let mut a: Vec<Vec<GQ>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= &t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &[Vec<GQ>]) -> Option<Vec<Vec<GQ>>> {
    let n = m.len();
    let mut a: Vec<Vec<GQ>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { GQ::one() } else { GQ::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].inv().ok()?;
        for v in a[c].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..2 * n {
                let t = &f * &a[c][j];
                a[i][j] -= &t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inertia `(positive, negative, zero)` of a real symmetric matrix, by exact
/// congruence diagonalization.
pub fn symmetric_inertia(m: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let (mut pos, mut neg) = (0, 0);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // Row/column i += row/column j makes the diagonal 2·a_ij ≠ 0.
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
            } else {
                continue;
            }
        }
        let pivot = a[i][i].clone();
        for r in i + 1..n {
            if a[r][i].is_zero() {
                continue;
            }
            let f = &a[r][i] / &pivot;
            for k in i..n {
                let t = &f * &a[i][k];
                a[r][k] -= t;
            }
            for k in i..n {
                let t = &f * &a[k][i];
                a[k][r] -= t;
            }
        }
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos, neg, n - pos - neg)
}
