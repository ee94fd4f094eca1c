//! Exact ranks: fraction-free sparse elimination over `ℤ[i]`, and a dense oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::complex::SparseMatrix;
use crate::exactalg::{matrix, GQ};

/// Gaussian integer.
#[derive(Clone, PartialEq, Eq, Debug)]
struct GI {
    re: BigInt,
    im: BigInt,
}

impl GI {
    fn one() -> GI {
        GI { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GI) -> GI {
        GI { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GI) -> GI {
        GI { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Exact quotient; the elimination guarantees divisibility.
    fn div_exact(&self, d: &GI) -> GI {
        let norm = &d.re * &d.re + &d.im * &d.im;
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        let (qr, rr) = re.div_rem(&norm);
        let (qi, ri) = im.div_rem(&norm);
        debug_assert!(rr.is_zero() && ri.is_zero(), "inexact Bareiss division");
        GI { re: qr, im: qi }
    }
}

/// Column scaled to Gaussian integers by the lcm of its denominators.
fn integral_column(col: &[(usize, GQ)]) -> BTreeMap<usize, GI> {
    let l = col.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(&v.denom_lcm()));
    col.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(r, v)| {
            let re = (&v.re * &l).to_integer();
            let im = (&v.im * &l).to_integer();
            (*r, GI { re, im })
        })
        .collect()
}

/// Rank by one-step Bareiss elimination on sparse columns.
///
/// Pivot column: fewest nonzeros, ties by lowest index; pivot row: lowest row
/// index in that column.
pub fn sparse_rank(m: &SparseMatrix) -> usize {
    let mut cols: Vec<Option<BTreeMap<usize, GI>>> =
        m.columns().iter().map(|c| Some(integral_column(c))).map(|c| c.filter(|c| !c.is_empty())).collect();
    let mut prev = GI::one();
    let mut rank = 0;
    loop {
        let pick = cols.iter().enumerate().filter_map(|(j, c)| c.as_ref().map(|c| (c.len(), j))).min();
        let Some((_, pc)) = pick else { break };
        let pivot_col = cols[pc].take().expect("picked");
        let (&pr, p) = pivot_col.iter().next().expect("nonempty");
        let p = p.clone();
        for slot in cols.iter_mut() {
            let Some(col) = slot.as_mut() else { continue };
            let a = col.remove(&pr);
            let mut next = BTreeMap::new();
            for (&r, v) in col.iter() {
                next.insert(r, p.mul(v));
            }
            if let Some(a) = &a {
                for (&r, v) in pivot_col.iter() {
                    if r == pr {
                        continue;
                    }
                    let t = a.mul(v);
                    let e = next.entry(r).or_insert_with(|| GI { re: BigInt::zero(), im: BigInt::zero() });
                    *e = e.sub(&t);
                }
            }
            next.retain(|_, v: &mut GI| !v.is_zero());
            for v in next.values_mut() {
                *v = v.div_exact(&prev);
            }
            *slot = if next.is_empty() { None } else { Some(next) };
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Rank by plain dense Gaussian elimination over `ℚ(i)`.
pub fn dense_rank(m: &SparseMatrix) -> usize {
    matrix::rank(&m.to_dense())
}
