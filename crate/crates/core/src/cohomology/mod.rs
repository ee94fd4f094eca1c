//! The double complex `Γ(ΛᵏA* ⊗ ΛˡB*)` of a matched pair, the operator `d_π`
//! on `Ω^{0,k}(T^{l,0})`, and exact Betti numbers of truncated total complexes.

mod complex;
mod rank;

use std::collections::BTreeMap;

use crate::algebroid::{matched_pair_tensors, AlgebroidChart, MatchedPairData, Section};
use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, PolyGQ, GQ};
use crate::multivec::{mask, schouten, sharp, Form, MixedForm, Multivector};
use crate::poisson::is_holomorphic_poisson;

pub use complex::{
    assemble_total, betti, betti_oracle, dump_matrices, BasisElement, BettiReport, BidegreeEntry, Method, SparseMatrix,
    TotalComplex, TotalEntry, Truncation,
};
pub use rank::{dense_rank, sparse_rank};

/// Element of `Γ(ΛᵏA* ⊗ ΛˡB*)`: `Σ g · e^S ⊗ f^T` over index sets with `|S| = k`, `|T| = l`.
///
/// The coefficient at `(S, T)` is the value on the increasing frames `(e_S; f_T)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiCochain {
    chart: Chart,
    ranks: (usize, usize),
    bidegree: (usize, usize),
    comps: BTreeMap<(u32, u32), PolyGQ>,
}

impl BiCochain {
    pub fn zero(mp: &MatchedPairData, k: usize, l: usize) -> HpResult<Self> {
        let ranks = (mp.a.rank(), mp.b.rank());
        if k > ranks.0 || l > ranks.1 {
            return Err(HpError::Shape(format!("bidegree ({k}, {l}) exceeds ranks {ranks:?}")));
        }
        Ok(BiCochain { chart: mp.a.chart(), ranks, bidegree: (k, l), comps: BTreeMap::new() })
    }

    /// From `(S, T, g)` with 0-based index lists in any order; repeated indices are rejected.
    pub fn from_terms(
        mp: &MatchedPairData,
        k: usize,
        l: usize,
        terms: &[(Vec<usize>, Vec<usize>, PolyGQ)],
    ) -> HpResult<Self> {
        let mut c = BiCochain::zero(mp, k, l)?;
        for (s, t, g) in terms {
            g.chart().ensure_same(&c.chart)?;
            if s.len() != k || t.len() != l {
                return Err(HpError::Shape(format!(
                    "term has bidegree ({}, {}), expected ({k}, {l})",
                    s.len(),
                    t.len()
                )));
            }
            let (sm, ss) = sorted_mask(s, c.ranks.0)?;
            let (tm, ts) = sorted_mask(t, c.ranks.1)?;
            c.add_term(sm, tm, ss * ts, g);
        }
        Ok(c)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.bidegree
    }

    pub fn ranks(&self) -> (usize, usize) {
        self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &PolyGQ)> {
        self.comps.iter().map(|(k, f)| (*k, f))
    }

    pub fn coeff(&self, s: u32, t: u32) -> PolyGQ {
        self.comps.get(&(s, t)).cloned().unwrap_or_else(|| PolyGQ::zero(self.chart))
    }

    fn add_term(&mut self, s: u32, t: u32, sign: i64, g: &PolyGQ) {
        if g.is_zero() {
            return;
        }
        debug_assert_eq!((mask::degree(s), mask::degree(t)), self.bidegree);
        let e = self.comps.entry((s, t)).or_insert_with(|| PolyGQ::zero(g.chart()));
        if sign >= 0 {
            e.add_assign_ref(g);
        } else {
            e.sub_assign_ref(g);
        }
        if e.is_zero() {
            self.comps.remove(&(s, t));
        }
    }

    fn empty_like(&self, k: usize, l: usize) -> BiCochain {
        BiCochain { chart: self.chart, ranks: self.ranks, bidegree: (k, l), comps: BTreeMap::new() }
    }

    pub fn add(&self, o: &BiCochain) -> HpResult<BiCochain> {
        if self.bidegree != o.bidegree || self.ranks != o.ranks {
            return Err(HpError::Shape("cochains of different bidegree".into()));
        }
        let mut r = self.clone();
        for ((s, t), g) in &o.comps {
            r.add_term(*s, *t, 1, g);
        }
        Ok(r)
    }

    pub fn scale(&self, c: &GQ) -> BiCochain {
        let mut r = self.empty_like(self.bidegree.0, self.bidegree.1);
        for ((s, t), g) in &self.comps {
            r.add_term(*s, *t, 1, &g.scale(c));
        }
        r
    }

    /// For the canonical pair: `g dzb_J ⊗ ∂z_I` is the cochain with `S = J`, `T = I`.
    pub fn from_mixed(mp: &MatchedPairData, m: &MixedForm) -> HpResult<BiCochain> {
        m.chart().ensure_same(&mp.a.chart())?;
        let (k, l) = m.degrees().unwrap_or((0, 0));
        let mut c = BiCochain::zero(mp, k, l)?;
        if m.degrees().is_none() && !m.is_zero() {
            return Err(HpError::Degree("mixed form is not of pure bidegree".into()));
        }
        for ((j, i), g) in m.terms() {
            c.add_term(j, i, 1, g);
        }
        Ok(c)
    }

    pub fn to_mixed(&self) -> HpResult<MixedForm> {
        self.chart.ensure_complex()?;
        let mut m = MixedForm::zero(self.chart);
        for ((s, t), g) in &self.comps {
            m.add_term(*s, *t, g);
        }
        Ok(m)
    }
}

fn sorted_mask(idx: &[usize], rank: usize) -> HpResult<(u32, i64)> {
    let mut m = 0u32;
    let mut sign = 1i64;
    for &i in idx {
        if i >= rank {
            return Err(HpError::Shape(format!("frame index {i} out of range")));
        }
        match mask::wedge_sign(m, 1 << i) {
            Some(s) => sign *= s,
            None => return Err(HpError::Shape(format!("repeated frame index {i}"))),
        }
        m |= 1 << i;
    }
    Ok((m, sign))
}

/// The differentials of a matched pair, validated once.
pub struct Bicomplex<'a> {
    mp: &'a MatchedPairData,
}

impl<'a> Bicomplex<'a> {
    /// Requires `F = S = T = 0` and both connections to be representations.
    pub fn new(mp: &'a MatchedPairData) -> HpResult<Self> {
        if !matched_pair_tensors(mp)?.is_zero() {
            return Err(HpError::Structure("not a matched pair: F, S, T do not vanish".into()));
        }
        Ok(Bicomplex { mp })
    }

    pub fn pair(&self) -> &MatchedPairData {
        self.mp
    }

    /// `∂_A`, raising the A-degree.
    pub fn partial_a(&self, c: &BiCochain) -> BiCochain {
        let mut out = c.empty_like(c.bidegree.0 + 1, c.bidegree.1);
        if c.bidegree.0 == c.ranks.0 {
            return out;
        }
        for ((s, t), g) in &c.comps {
            self.partial_a_term(*s, *t, g, &mut |s2, t2, sign, h| out.add_term(s2, t2, sign, h));
        }
        out
    }

    /// `∂_B`, raising the B-degree.
    pub fn partial_b(&self, c: &BiCochain) -> BiCochain {
        let mut out = c.empty_like(c.bidegree.0, c.bidegree.1 + 1);
        if c.bidegree.1 == c.ranks.1 {
            return out;
        }
        for ((s, t), g) in &c.comps {
            self.partial_b_term(*s, *t, g, &mut |s2, t2, sign, h| out.add_term(s2, t2, sign, h));
        }
        out
    }

    /// `(∂_A c, (−1)ᵏ ∂_B c)`, the two components of the total differential.
    pub fn total(&self, c: &BiCochain) -> (BiCochain, BiCochain) {
        let b = self.partial_b(c);
        let b = if c.bidegree.0 % 2 == 1 { b.scale(&GQ::int(-1)) } else { b };
        (self.partial_a(c), b)
    }

    pub(crate) fn partial_a_term(&self, s: u32, t: u32, g: &PolyGQ, emit: &mut dyn FnMut(u32, u32, i64, &PolyGQ)) {
        let mp = self.mp;
        derivative_part(&mp.a, s, g, &mut |s2, sign, h| emit(s2, t, sign, h));
        connection_part(&mp.a, &mp.nabla_ab.gamma, s, t, g, &mut |s2, t2, sign, h| emit(s2, t2, sign, h));
    }

    pub(crate) fn partial_b_term(&self, s: u32, t: u32, g: &PolyGQ, emit: &mut dyn FnMut(u32, u32, i64, &PolyGQ)) {
        let mp = self.mp;
        derivative_part(&mp.b, t, g, &mut |t2, sign, h| emit(s, t2, sign, h));
        connection_part(&mp.b, &mp.nabla_ba.gamma, t, s, g, &mut |t2, s2, sign, h| emit(s2, t2, sign, h));
    }
}

/// `d(g e^S) = Σ_a ρ(e_a)(g) e^a ∧ e^S + g Σ_{s∈S} ± de^s ∧ e^{S∖s}` with
/// `de^s = −Σ_{x<y} c_{xy}^s e^x ∧ e^y`.
fn derivative_part(alg: &AlgebroidChart, s: u32, g: &PolyGQ, emit: &mut dyn FnMut(u32, i64, &PolyGQ)) {
    let r = alg.rank();
    for a in 0..r {
        if let Some(sign) = mask::wedge_sign(1 << a, s) {
            let h = alg.anchor()[a].apply(g);
            if !h.is_zero() {
                emit(s | (1 << a), sign, &h);
            }
        }
    }
    for x in mask::bits(s) {
        let (rest, ls) = mask::left_remove(s, x).expect("member");
        for p in 0..r {
            for q in p + 1..r {
                let c = &alg.structure(p, q)[x];
                if c.is_zero() {
                    continue;
                }
                let pq = (1 << p) | (1 << q);
                if let Some(ws) = mask::wedge_sign(pq, rest) {
                    emit(pq | rest, -ls * ws, &(g * c));
                }
            }
        }
    }
}

/// `Σ_a e^a ∧ e^S ⊗ ∇_{e_a} f^T` with the dual connection
/// `∇_{e_a} f^t = −Σ_q Γ[a][q][t] f^q`, acting as a derivation on `f^T`.
/// Output masks are reported as `(acting, module)`.
fn connection_part(
    acting: &AlgebroidChart,
    gamma: &[Vec<Section>],
    s: u32,
    t: u32,
    g: &PolyGQ,
    emit: &mut dyn FnMut(u32, u32, i64, &PolyGQ),
) {
    if t == 0 {
        return;
    }
    for a in 0..acting.rank() {
        let Some(sa) = mask::wedge_sign(1 << a, s) else { continue };
        for x in mask::bits(t) {
            let (rest, ls) = mask::left_remove(t, x).expect("member");
            for (q, row) in gamma[a].iter().enumerate() {
                let coef = &row[x];
                if coef.is_zero() {
                    continue;
                }
                if let Some(ws) = mask::wedge_sign(1 << q, rest) {
                    emit(s | (1 << a), rest | (1 << q), -sa * ls * ws, &(g * coef));
                }
            }
        }
    }
}

/// `∂_A` after checking the matched-pair conditions.
pub fn partial_a(mp: &MatchedPairData, c: &BiCochain) -> HpResult<BiCochain> {
    Ok(Bicomplex::new(mp)?.partial_a(c))
}

/// `∂_B` after checking the matched-pair conditions.
pub fn partial_b(mp: &MatchedPairData, c: &BiCochain) -> HpResult<BiCochain> {
    Ok(Bicomplex::new(mp)?.partial_b(c))
}

/// `d_π(ω ⊗ P) = ω ⊗ [π, P] + Σᵢ (ι_{π♯dzᵢ} dω) ⊗ (∂zᵢ ∧ P)` on `Ω^{0,k}(T^{l,0})`.
pub fn d_pi(m: &MixedForm, pi: &Multivector) -> HpResult<MixedForm> {
    m.chart().ensure_same(&pi.chart())?;
    if !is_holomorphic_poisson(pi)?.is_poisson() {
        return Err(HpError::Structure("bivector is not holomorphic Poisson".into()));
    }
    let chart = pi.chart();
    let n = chart.n;
    let hams: Vec<Multivector> = (0..n).map(|i| sharp(pi, &Form::frame(chart, &[i]))).collect::<HpResult<_>>()?;
    let mut out = MixedForm::zero(chart);
    for ((j, i), g) in m.terms() {
        let omega = Form::single(chart, j << n, g.clone());
        let p = Multivector::single(chart, i, PolyGQ::one(chart));
        out = out.add(&MixedForm::tensor(&omega, &schouten(pi, &p)?)?);
        let domega = omega.d();
        for (k, x) in hams.iter().enumerate() {
            let ins = domega.interior(x);
            if ins.is_zero() {
                continue;
            }
            let wedge = Multivector::frame(chart, &[k]).wedge(&p);
            if !wedge.is_zero() {
                out = out.add(&MixedForm::tensor(&ins, &wedge)?);
            }
        }
    }
    Ok(out)
}
