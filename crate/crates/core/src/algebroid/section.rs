//! Sections of a free module, as coefficient vectors in its frame.

use crate::exactalg::{Chart, PolyGQ, GQ};

pub type Section = Vec<PolyGQ>;

pub fn zero(chart: Chart, rank: usize) -> Section {
    vec![PolyGQ::zero(chart); rank]
}

pub fn unit(chart: Chart, rank: usize, i: usize) -> Section {
    let mut s = zero(chart, rank);
    s[i] = PolyGQ::one(chart);
    s
}

pub fn is_zero(s: &[PolyGQ]) -> bool {
    s.iter().all(|f| f.is_zero())
}

pub fn add(a: &[PolyGQ], b: &[PolyGQ]) -> Section {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[PolyGQ], b: &[PolyGQ]) -> Section {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[PolyGQ]) -> Section {
    a.iter().map(|x| -x).collect()
}

pub fn mul_poly(a: &[PolyGQ], f: &PolyGQ) -> Section {
    a.iter().map(|x| x * f).collect()
}

pub fn scale(a: &[PolyGQ], c: &GQ) -> Section {
    a.iter().map(|x| x.scale(c)).collect()
}

/// `acc += f · a`.
pub fn add_mul(acc: &mut [PolyGQ], f: &PolyGQ, a: &[PolyGQ]) {
    if f.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            x.add_assign_ref(&(f * y));
        }
    }
}
