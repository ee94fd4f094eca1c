//! Lie algebroids on a chart, presented as free modules with a frame.
//!
//! An algebroid of rank `r` is given by the anchors `ρ(e_i)` of its frame and
//! structure functions `[e_i, e_j] = Σ_k c[i][j][k] e_k`; brackets of general
//! sections follow from the Leibniz rule.

mod lie;
mod matched;
pub mod section;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, PolyGQ, GQ};
use crate::multivec::{schouten, Multivector};
pub use section::Section;

pub use lie::{
    cotangent_algebroid, cotangent_realparts_check, lie_poisson, realify_liealgebra, realparts_liealgebra_check,
    CotangentRealpartsReport, LieAlgebraData, RealpartsReport,
};
pub use matched::{
    bowtie, canonical_matched_pair, check_representation, compute_tensors, matched_pair_tensors, tensor_f, tensor_s,
    tensor_t, yao_isomorphism_check, MatchedPairData, MatchedPairTensors, RepData, RepReport, RepSide, YaoReport,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebroidChart {
    chart: Chart,
    rank: usize,
    anchor: Vec<Multivector>,
    structure: Vec<Vec<Section>>,
}

impl AlgebroidChart {
    pub fn new(chart: Chart, anchor: Vec<Multivector>, structure: Vec<Vec<Section>>) -> HpResult<Self> {
        let rank = anchor.len();
        for a in &anchor {
            a.chart().ensure_same(&chart)?;
            if !a.is_homogeneous_of(1) {
                return Err(HpError::Shape("anchor images must be vector fields".into()));
            }
        }
        if structure.len() != rank
            || structure.iter().any(|row| row.len() != rank || row.iter().any(|s| s.len() != rank))
        {
            return Err(HpError::Shape(format!("structure functions must be {r}x{r}x{r}", r = rank)));
        }
        for (i, row) in structure.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                for f in s {
                    f.chart().ensure_same(&chart)?;
                }
                if *s != section::neg(&structure[j][i]) {
                    return Err(HpError::Shape(format!(
                        "structure functions not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(AlgebroidChart { chart, rank, anchor, structure })
    }

    /// Build from an anchor and a closure giving `[e_i, e_j]` for `i < j`.
    pub fn from_fn<F: FnMut(usize, usize) -> Section>(
        chart: Chart,
        anchor: Vec<Multivector>,
        mut f: F,
    ) -> HpResult<Self> {
        let rank = anchor.len();
        let mut structure = vec![vec![section::zero(chart, rank); rank]; rank];
        for i in 0..rank {
            for j in i + 1..rank {
                let s = f(i, j);
                structure[j][i] = section::neg(&s);
                structure[i][j] = s;
            }
        }
        AlgebroidChart::new(chart, anchor, structure)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn anchor(&self) -> &[Multivector] {
        &self.anchor
    }

    /// `c[i][j]`.
    pub fn structure(&self, i: usize, j: usize) -> &Section {
        &self.structure[i][j]
    }

    /// Anchor as a `rank × 2n` matrix.
    pub fn anchor_matrix(&self) -> Vec<Vec<PolyGQ>> {
        self.anchor.iter().map(|a| (0..self.chart.nvars()).map(|s| a.coeff(1 << s)).collect()).collect()
    }

    pub fn zero_section(&self) -> Section {
        section::zero(self.chart, self.rank)
    }

    pub fn frame(&self, i: usize) -> Section {
        section::unit(self.chart, self.rank, i)
    }

    pub fn anchor_of(&self, v: &[PolyGQ]) -> Multivector {
        let mut out = Multivector::zero(self.chart);
        for (f, a) in v.iter().zip(&self.anchor) {
            if !f.is_zero() {
                out = out.add(&a.mul_poly(f));
            }
        }
        out
    }

    /// `[Σ f_i e_i, Σ g_j e_j]` by the Leibniz rule.
    pub fn bracket(&self, v: &[PolyGQ], w: &[PolyGQ]) -> Section {
        let mut out = self.zero_section();
        for (i, f) in v.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in w.iter().enumerate() {
                if g.is_zero() || i == j {
                    continue;
                }
                section::add_mul(&mut out, &(f * g), &self.structure[i][j]);
            }
        }
        let rv = self.anchor_of(v);
        let rw = self.anchor_of(w);
        for (j, g) in w.iter().enumerate() {
            out[j].add_assign_ref(&rv.apply(g));
        }
        for (i, f) in v.iter().enumerate() {
            out[i].sub_assign_ref(&rw.apply(f));
        }
        out
    }

    pub fn ensure_same_shape(&self, o: &AlgebroidChart) -> HpResult<()> {
        self.chart.ensure_same(&o.chart)?;
        if self.rank != o.rank {
            return Err(HpError::Shape(format!("rank mismatch: {} vs {}", self.rank, o.rank)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct AlgebroidReport {
    pub jacobi: bool,
    pub anchor_morphism: bool,
}

impl AlgebroidReport {
    pub fn ok(&self) -> bool {
        self.jacobi && self.anchor_morphism
    }
}

pub fn verify_algebroid(a: &AlgebroidChart) -> AlgebroidReport {
    let r = a.rank;
    let e: Vec<Section> = (0..r).map(|i| a.frame(i)).collect();
    let mut anchor_morphism = true;
    'anchor: for i in 0..r {
        for j in i + 1..r {
            let lhs = a.anchor_of(&a.structure[i][j]);
            let rhs = schouten(&a.anchor[i], &a.anchor[j]).expect("same chart");
            if lhs != rhs {
                anchor_morphism = false;
                break 'anchor;
            }
        }
    }
    let mut jacobi = true;
    'jac: for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let t1 = a.bracket(&a.structure[i][j], &e[k]);
                let t2 = a.bracket(&a.structure[j][k], &e[i]);
                let t3 = a.bracket(&a.structure[k][i], &e[j]);
                if !section::is_zero(&section::add(&section::add(&t1, &t2), &t3)) {
                    jacobi = false;
                    break 'jac;
                }
            }
        }
    }
    AlgebroidReport { jacobi, anchor_morphism }
}

/// Bundle endomorphism of an algebroid; column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoOnAlgebroid {
    chart: Chart,
    matrix: Vec<Vec<PolyGQ>>,
}

impl EndoOnAlgebroid {
    pub fn new(base: &AlgebroidChart, matrix: Vec<Vec<PolyGQ>>) -> HpResult<Self> {
        let r = base.rank;
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(HpError::Shape(format!("endomorphism must be {r}x{r}", r = r)));
        }
        for f in matrix.iter().flatten() {
            f.chart().ensure_same(&base.chart)?;
        }
        Ok(EndoOnAlgebroid { chart: base.chart, matrix })
    }

    pub fn constant(base: &AlgebroidChart, matrix: &[Vec<GQ>]) -> HpResult<Self> {
        let m =
            matrix.iter().map(|row| row.iter().map(|c| PolyGQ::constant(base.chart, c.clone())).collect()).collect();
        EndoOnAlgebroid::new(base, m)
    }

    pub fn identity(base: &AlgebroidChart) -> Self {
        let r = base.rank;
        let m = (0..r).map(|i| section::unit(base.chart, r, i)).collect();
        EndoOnAlgebroid { chart: base.chart, matrix: m }
    }

    /// `j e_k = e_{m+k}`, `j e_{m+k} = −e_k` on a rank `2m` algebroid.
    pub fn standard_j(base: &AlgebroidChart) -> HpResult<Self> {
        let r = base.rank;
        if !r.is_multiple_of(2) {
            return Err(HpError::Shape("standard j needs even rank".into()));
        }
        let m = r / 2;
        let mut mat = vec![section::zero(base.chart, r); r];
        for k in 0..m {
            mat[m + k][k] = PolyGQ::one(base.chart);
            mat[k][m + k] = PolyGQ::constant(base.chart, GQ::int(-1));
        }
        Ok(EndoOnAlgebroid { chart: base.chart, matrix: mat })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<PolyGQ>] {
        &self.matrix
    }

    pub fn apply(&self, v: &[PolyGQ]) -> Section {
        self.matrix
            .iter()
            .map(|row| {
                let mut acc = PolyGQ::zero(self.chart);
                for (m, f) in row.iter().zip(v) {
                    if !m.is_zero() && !f.is_zero() {
                        acc.add_assign_ref(&(m * f));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        let r = self.rank();
        (0..r).all(|j| {
            let col: Section = (0..r).map(|i| self.matrix[i][j].clone()).collect();
            self.apply(&col) == section::neg(&section::unit(self.chart, r, j))
        })
    }

    fn ensure_over(&self, a: &AlgebroidChart) -> HpResult<()> {
        if self.chart != a.chart || self.rank() != a.rank {
            return Err(HpError::Shape("endomorphism is not over this algebroid".into()));
        }
        Ok(())
    }

    /// Is this standard `j` in the sense of [`EndoOnAlgebroid::standard_j`]?
    fn is_standard_j(&self) -> bool {
        let r = self.rank();
        r.is_multiple_of(2) && {
            let m = r / 2;
            (0..r).all(|i| {
                (0..r).all(|j| {
                    let want = if i == m + j && j < m {
                        GQ::one()
                    } else if j == m + i && i < m {
                        GQ::int(-1)
                    } else {
                        GQ::zero()
                    };
                    self.matrix[i][j] == PolyGQ::constant(self.chart, want)
                })
            })
        }
    }
}

/// Nijenhuis torsion on frame pairs `a < b`, nonzero entries only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebroidTorsion {
    pub values: BTreeMap<(usize, usize), Section>,
}

impl AlgebroidTorsion {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// `[NV,NW] − N([NV,W] + [V,NW] − N[V,W])`.
pub fn torsion_on(a: &AlgebroidChart, n: &EndoOnAlgebroid, v: &[PolyGQ], w: &[PolyGQ]) -> Section {
    let nv = n.apply(v);
    let nw = n.apply(w);
    let inner = section::sub(&section::add(&a.bracket(&nv, w), &a.bracket(v, &nw)), &n.apply(&a.bracket(v, w)));
    section::sub(&a.bracket(&nv, &nw), &n.apply(&inner))
}

pub fn nijenhuis_torsion_algebroid(a: &AlgebroidChart, n: &EndoOnAlgebroid) -> HpResult<AlgebroidTorsion> {
    n.ensure_over(a)?;
    let mut values = BTreeMap::new();
    for i in 0..a.rank {
        for j in i + 1..a.rank {
            let t = torsion_on(a, n, &a.frame(i), &a.frame(j));
            if !section::is_zero(&t) {
                values.insert((i, j), t);
            }
        }
    }
    Ok(AlgebroidTorsion { values })
}

/// `[V,W]_N = [NV,W] + [V,NW] − N[V,W]`.
pub fn deformed_bracket(a: &AlgebroidChart, n: &EndoOnAlgebroid, v: &[PolyGQ], w: &[PolyGQ]) -> Section {
    section::sub(&section::add(&a.bracket(&n.apply(v), w), &a.bracket(v, &n.apply(w))), &n.apply(&a.bracket(v, w)))
}

/// The algebroid `(A, ρ∘N, [·,·]_N)`.
pub fn deform_by(a: &AlgebroidChart, n: &EndoOnAlgebroid) -> HpResult<AlgebroidChart> {
    if !nijenhuis_torsion_algebroid(a, n)?.is_zero() {
        return Err(HpError::Structure("Nijenhuis torsion does not vanish".into()));
    }
    let anchor = (0..a.rank).map(|i| a.anchor_of(&n.apply(&a.frame(i)))).collect();
    AlgebroidChart::from_fn(a.chart, anchor, |i, j| deformed_bracket(a, n, &a.frame(i), &a.frame(j)))
}

/// The `±i` eigenbundles of a standard `j`, with frames `½(e_k ∓ i e_{m+k})`.
pub fn split_complexified(a: &AlgebroidChart, j: &EndoOnAlgebroid) -> HpResult<(AlgebroidChart, AlgebroidChart)> {
    j.ensure_over(a)?;
    if !j.is_standard_j() {
        return Err(HpError::Structure("j must be the standard complex structure on the frame".into()));
    }
    if !nijenhuis_torsion_algebroid(a, j)?.is_zero() {
        return Err(HpError::Structure("Nijenhuis torsion of j does not vanish".into()));
    }
    let m = a.rank / 2;
    let half = GQ::frac(1, 2);
    let build = |sign: i64| -> HpResult<AlgebroidChart> {
        // v_k = ½ e_k − sign·(i/2) e_{m+k}
        let frame = |k: usize| {
            let mut s = a.zero_section();
            s[k] = PolyGQ::constant(a.chart, half.clone());
            s[m + k] = PolyGQ::constant(a.chart, GQ::complex((0, 1), (-sign, 2)));
            s
        };
        let frames: Vec<Section> = (0..m).map(frame).collect();
        let anchor = frames.iter().map(|v| a.anchor_of(v)).collect();
        let mut err = None;
        let out = AlgebroidChart::from_fn(a.chart, anchor, |p, q| {
            let w = a.bracket(&frames[p], &frames[q]);
            // w = Σ c_k v_k + Σ d_k v̄_k with c_k = w_k + sign·i w_{m+k}, d_k = w_k − sign·i w_{m+k}
            let isign = GQ::complex((0, 1), (sign, 1));
            let mut coeffs = Vec::with_capacity(m);
            for k in 0..m {
                let iw = w[m + k].scale(&isign);
                let d = &w[k] - &iw;
                if !d.is_zero() && err.is_none() {
                    err = Some(HpError::Structure("eigenbundle is not closed under the bracket".into()));
                }
                coeffs.push(&w[k] + &iw);
            }
            coeffs
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    };
    Ok((build(1)?, build(-1)?))
}

/// Underlying real algebroid of a holomorphic one, frame `(e_1..e_r, je_1..je_r)`.
///
/// The frame of the input must consist of holomorphic sections: holomorphic
/// structure functions and anchors of type `(1,0)` with holomorphic coefficients.
pub fn realify_algebroid(a: &AlgebroidChart) -> HpResult<AlgebroidChart> {
    a.chart.ensure_complex()?;
    let holo = |f: &PolyGQ| f.is_holomorphic();
    for x in &a.anchor {
        if !(x.is_zero() || x.is_type(1, 0)) || !x.terms().all(|(_, f)| holo(f)) {
            return Err(HpError::Structure("anchor is not holomorphic".into()));
        }
    }
    if !a.structure.iter().flatten().flatten().all(holo) {
        return Err(HpError::Structure("structure functions are not holomorphic".into()));
    }
    let real = a.chart.partner();
    let r = a.rank;
    let i = GQ::i();
    let mut anchor = Vec::with_capacity(2 * r);
    for twist in [GQ::one(), i.clone()] {
        for x in &a.anchor {
            let y = x.scale(&twist);
            anchor.push(y.add(&y.conj()).convert_chart(real)?);
        }
    }
    let zero = section::zero(real, 2 * r);
    let pieces = |s: &Section| -> HpResult<(Section, Section)> {
        // holomorphic section Σ c_k e_k as real (e-part, je-part)
        let mut re = Vec::with_capacity(r);
        let mut im = Vec::with_capacity(r);
        for c in s {
            let (a0, b0) = c.convert_chart(real)?.re_im();
            re.push(a0);
            im.push(b0);
        }
        Ok((re, im))
    };
    let mut table = vec![vec![zero.clone(); 2 * r]; 2 * r];
    for p in 0..r {
        for q in 0..r {
            if p == q {
                continue;
            }
            let (re, im) = pieces(&a.structure[p][q])?;
            let plain: Section = re.iter().chain(&im).cloned().collect();
            let jd: Section = section::neg(&im).into_iter().chain(re.iter().cloned()).collect();
            table[p][q] = plain.clone();
            table[r + p][r + q] = section::neg(&plain);
            table[r + p][q] = jd.clone();
            table[p][r + q] = jd;
        }
    }
    AlgebroidChart::new(real, anchor, table)
}

#[cfg(test)]
mod tests;
