//! Truncated total complexes, their matrices, and Betti reports.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::rank::{dense_rank, sparse_rank};
use super::Bicomplex;
use crate::algebroid::MatchedPairData;
use crate::error::{HpError, HpResult};
use crate::exactalg::{monomials_of_degree, Chart, Mono, PolyGQ, GQ};
use crate::multivec::mask;

/// Finite piece of the polynomial cochain space.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "mode", content = "bound", rename_all = "snake_case")]
pub enum Truncation {
    /// Coefficients of total degree at most the bound; a subcomplex when the
    /// differential never raises degree.
    TotalDegree(u32),
    /// The block of one weight `deg + |S| + (1 − m)|T|`, where `m` is the
    /// homogeneity degree of `π`; preserved exactly by both differentials.
    Weight(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sparse,
    Oracle,
}

/// Basis vector `x^mono · e^S ⊗ f^T`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisElement {
    pub s: u32,
    pub t: u32,
    pub mono: Mono,
}

/// Column-major sparse matrix over `ℚ(i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, GQ)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, GQ)>>) -> Self {
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn columns(&self) -> &[Vec<(usize, GQ)>] {
        &self.columns
    }

    pub fn select_columns(&self, idx: &[usize]) -> SparseMatrix {
        SparseMatrix::new(self.rows, idx.iter().map(|&j| self.columns[j].clone()).collect())
    }

    pub fn to_dense(&self) -> Vec<Vec<GQ>> {
        let mut d = vec![vec![GQ::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    /// `self · o` as dense matrices.
    pub fn compose_dense(&self, o: &SparseMatrix) -> Vec<Vec<GQ>> {
        crate::exactalg::matrix::matmul(&self.to_dense(), &o.to_dense())
    }

    /// Header `rows cols nnz`, then `i j value` in column-major order.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                let _ = writeln!(s, "{} {} {}", i, j, v);
            }
        }
        s
    }
}

/// Bases per total degree and the matrices `D_t : C^t → C^{t+1}`.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub truncation: Truncation,
    pub bases: Vec<Vec<BasisElement>>,
    pub matrices: Vec<SparseMatrix>,
    pub exact: bool,
}

fn homogeneity(mp: &MatchedPairData) -> HpResult<i64> {
    let Some(pi) = &mp.pi else { return Ok(1) };
    let mut deg = None;
    for (_, f) in pi.terms() {
        for (m, _) in f.terms() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(HpError::Truncation("weight mode needs a homogeneous Poisson structure".into()))
                }
                _ => {}
            }
        }
    }
    Ok(deg.map_or(1, |d| d as i64))
}

fn enumerate_basis(chart: Chart, ranks: (usize, usize), t: usize, tr: Truncation, m: i64) -> Vec<BasisElement> {
    let nv = chart.nvars();
    let mut out = Vec::new();
    for k in 0..=t.min(ranks.0) {
        let l = t - k;
        if l > ranks.1 {
            continue;
        }
        for s in mask::subsets_of_size(ranks.0, k) {
            for tt in mask::subsets_of_size(ranks.1, l) {
                let degrees: Vec<u32> = match tr {
                    Truncation::TotalDegree(d) => (0..=d).collect(),
                    Truncation::Weight(w) => {
                        let d = w as i64 - k as i64 - (1 - m) * l as i64;
                        if d < 0 {
                            vec![]
                        } else {
                            vec![d as u32]
                        }
                    }
                };
                for d in degrees {
                    for mono in monomials_of_degree(nv, d) {
                        out.push(BasisElement { s, t: tt, mono });
                    }
                }
            }
        }
    }
    out
}

/// Number of worker threads from `HOLOPOISSON_THREADS` (unset or `0`: rayon's default).
fn thread_pool() -> rayon::ThreadPool {
    let n = std::env::var("HOLOPOISSON_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

/// Matrices of `∂_A + (−1)ᵏ ∂_B` on the truncated cochain space.
pub fn assemble_total(mp: &MatchedPairData, truncation: Truncation) -> HpResult<TotalComplex> {
    let bc = Bicomplex::new(mp)?;
    let chart = mp.a.chart();
    let ranks = (mp.a.rank(), mp.b.rank());
    let m = match truncation {
        Truncation::Weight(_) => homogeneity(mp)?,
        Truncation::TotalDegree(_) => 1,
    };
    let top = ranks.0 + ranks.1;
    let bases: Vec<Vec<BasisElement>> = (0..=top).map(|t| enumerate_basis(chart, ranks, t, truncation, m)).collect();
    let index: Vec<HashMap<BasisElement, usize>> =
        bases.iter().map(|b| b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()).collect();
    let pool = thread_pool();
    let matrices = pool.install(|| {
        (0..top)
            .into_par_iter()
            .map(|t| {
                let target = &index[t + 1];
                let cols =
                    bases[t].iter().map(|e| column(&bc, chart, e, target, truncation)).collect::<HpResult<Vec<_>>>()?;
                Ok(SparseMatrix::new(bases[t + 1].len(), cols))
            })
            .collect::<HpResult<Vec<_>>>()
    })?;
    Ok(TotalComplex { truncation, bases, matrices, exact: matches!(truncation, Truncation::Weight(_)) })
}

fn column(
    bc: &Bicomplex<'_>,
    chart: Chart,
    e: &BasisElement,
    target: &HashMap<BasisElement, usize>,
    truncation: Truncation,
) -> HpResult<Vec<(usize, GQ)>> {
    let g = PolyGQ::monomial(chart, e.mono.clone(), GQ::one());
    let k = mask::degree(e.s);
    let mut acc: HashMap<usize, GQ> = HashMap::new();
    let mut err = None;
    let emit = |sign_b: i64| {
        move |s2: u32, t2: u32, sign: i64, h: &PolyGQ, acc: &mut HashMap<usize, GQ>, err: &mut Option<HpError>| {
            for (mono, c) in h.terms() {
                let key = BasisElement { s: s2, t: t2, mono: mono.clone() };
                match target.get(&key) {
                    Some(&i) => {
                        let v = acc.entry(i).or_insert_with(GQ::zero);
                        if sign * sign_b >= 0 {
                            *v += c;
                        } else {
                            *v -= c;
                        }
                    }
                    None => {
                        if err.is_none() {
                            *err = Some(HpError::Truncation(format!(
                                "the differential leaves the {truncation:?} truncation (monomial of degree {})",
                                mono.degree()
                            )));
                        }
                    }
                }
            }
        }
    };
    let fa = emit(1);
    bc.partial_a_term(e.s, e.t, &g, &mut |s2, t2, sign, h| fa(s2, t2, sign, h, &mut acc, &mut err));
    let fb = emit(if k % 2 == 1 { -1 } else { 1 });
    bc.partial_b_term(e.s, e.t, &g, &mut |s2, t2, sign, h| fb(s2, t2, sign, h, &mut acc, &mut err));
    if let Some(e) = err {
        return Err(e);
    }
    let mut col: Vec<(usize, GQ)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    col.sort_by_key(|(i, _)| *i);
    Ok(col)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BidegreeEntry {
    pub k: usize,
    pub l: usize,
    pub dim: usize,
    /// Kernel of the total differential restricted to this bidegree.
    pub kernel: usize,
    /// Rank of the total differential restricted to this bidegree.
    pub image: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TotalEntry {
    pub degree: usize,
    pub dim: usize,
    pub kernel: usize,
    pub incoming_rank: usize,
    pub betti: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BettiReport {
    pub truncation: Truncation,
    pub method: Method,
    /// `exact` in weight mode, `filtered approximation` in total-degree mode.
    pub status: String,
    pub bidegrees: Vec<BidegreeEntry>,
    pub totals: Vec<TotalEntry>,
}

impl BettiReport {
    pub fn betti(&self) -> Vec<usize> {
        self.totals.iter().map(|t| t.betti).collect()
    }

    pub fn bidegree(&self, k: usize, l: usize) -> Option<&BidegreeEntry> {
        self.bidegrees.iter().find(|e| e.k == k && e.l == l)
    }
}

fn report(mp: &MatchedPairData, truncation: Truncation, method: Method) -> HpResult<BettiReport> {
    let cx = assemble_total(mp, truncation)?;
    let rank_fn: fn(&SparseMatrix) -> usize = match method {
        Method::Sparse => sparse_rank,
        Method::Oracle => dense_rank,
    };
    let top = cx.bases.len() - 1;
    let empty = |t: usize| SparseMatrix::new(0, vec![Vec::new(); cx.bases[t].len()]);
    let outgoing = |t: usize| if t < top { cx.matrices[t].clone() } else { empty(t) };
    // jobs: the full D_t, then each bidegree slice of it
    let mut jobs: Vec<(usize, Option<(usize, usize)>, Vec<usize>)> = Vec::new();
    for t in 0..=top {
        jobs.push((t, None, (0..cx.bases[t].len()).collect()));
        let mut by_bideg: Vec<((usize, usize), Vec<usize>)> = Vec::new();
        for (i, e) in cx.bases[t].iter().enumerate() {
            let key = (mask::degree(e.s), mask::degree(e.t));
            match by_bideg.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(i),
                None => by_bideg.push((key, vec![i])),
            }
        }
        for k in 0..=t {
            let l = t - k;
            if k > mp.a.rank() || l > mp.b.rank() {
                continue;
            }
            let cols = by_bideg.iter().find(|(key, _)| *key == (k, l)).map(|(_, v)| v.clone()).unwrap_or_default();
            jobs.push((t, Some((k, l)), cols));
        }
    }
    let pool = thread_pool();
    let ranks: Vec<usize> =
        pool.install(|| jobs.par_iter().map(|(t, _, cols)| rank_fn(&outgoing(*t).select_columns(cols))).collect());
    let mut bidegrees = Vec::new();
    let mut full = vec![0usize; top + 1];
    for ((t, bd, cols), r) in jobs.iter().zip(&ranks) {
        match bd {
            None => full[*t] = *r,
            Some((k, l)) => {
                bidegrees.push(BidegreeEntry { k: *k, l: *l, dim: cols.len(), kernel: cols.len() - r, image: *r })
            }
        }
    }
    let totals = (0..=top)
        .map(|t| {
            let dim = cx.bases[t].len();
            let kernel = dim - full[t];
            let incoming_rank = if t == 0 { 0 } else { full[t - 1] };
            TotalEntry { degree: t, dim, kernel, incoming_rank, betti: kernel - incoming_rank }
        })
        .collect();
    let status = if cx.exact { "exact" } else { "filtered approximation" }.to_string();
    Ok(BettiReport { truncation, method, status, bidegrees, totals })
}

/// Betti numbers by sparse fraction-free elimination.
pub fn betti(mp: &MatchedPairData, truncation: Truncation) -> HpResult<BettiReport> {
    report(mp, truncation, Method::Sparse)
}

/// Betti numbers by dense Gaussian elimination, for cross-checking.
pub fn betti_oracle(mp: &MatchedPairData, truncation: Truncation) -> HpResult<BettiReport> {
    report(mp, truncation, Method::Oracle)
}

/// Write `d{t}.txt` (prefixed `w{W}_` in weight mode) for each matrix.
pub fn dump_matrices(cx: &TotalComplex, dir: &Path) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let prefix = match cx.truncation {
        Truncation::Weight(w) => format!("w{w}_"),
        Truncation::TotalDegree(d) => format!("deg{d}_"),
    };
    let mut names = Vec::new();
    for (t, m) in cx.matrices.iter().enumerate() {
        let name = format!("{prefix}d{t}.txt");
        std::fs::write(dir.join(&name), m.dump())?;
        names.push(name);
    }
    Ok(names)
}
