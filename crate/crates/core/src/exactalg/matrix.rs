//! Dense exact linear algebra over the Gaussian rationals.

use super::gq::GQ;
use crate::error::{HpError, HpResult};

pub type DenseMatrix = Vec<Vec<GQ>>;

pub fn zeros(rows: usize, cols: usize) -> DenseMatrix {
    vec![vec![GQ::zero(); cols]; rows]
}

pub fn identity(n: usize) -> DenseMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = GQ::one();
    }
    m
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), inner);
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &(x * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn transpose(a: &DenseMatrix) -> DenseMatrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row echelon form by plain Gaussian elimination; returns the rank.
pub fn rank(a: &DenseMatrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in (r + 1)..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                if !m[r][j].is_zero() {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
pub fn inverse(a: &DenseMatrix) -> HpResult<DenseMatrix> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(HpError::Shape("inverse of a non-square matrix".into()));
    }
    let mut m = a.clone();
    let mut inv = identity(n);
    for c in 0..n {
        let p =
            (c..n).find(|&i| !m[i][c].is_zero()).ok_or_else(|| HpError::Singular("matrix is not invertible".into()))?;
        m.swap(c, p);
        inv.swap(c, p);
        let s = m[c][c].inv()?;
        for j in 0..n {
            m[c][j] = &m[c][j] * &s;
            inv[c][j] = &inv[c][j] * &s;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..n {
                let t = &f * &m[c][j];
                m[i][j] -= &t;
                let t = &f * &inv[c][j];
                inv[i][j] -= &t;
            }
        }
    }
    Ok(inv)
}

/// Solve `a x = b` for square invertible `a`.
pub fn solve(a: &DenseMatrix, b: &[GQ]) -> HpResult<Vec<GQ>> {
    let inv = inverse(a)?;
    Ok(inv.iter().map(|row| row.iter().zip(b).fold(GQ::zero(), |acc, (x, y)| &acc + &(x * y))).collect())
}

/// Horizontal concatenation.
pub fn hcat(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect()
}
