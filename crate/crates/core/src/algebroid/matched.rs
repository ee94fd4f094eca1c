//! Representations, matched pairs, the ⋈ algebroid, and the comparison of the
//! canonical matched pair of a Poisson structure with the Dirac structure `L_{4π}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::lie::cotangent_algebroid;
use super::section::{self, Section};
use super::AlgebroidChart;
use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, PolyGQ};
use crate::multivec::{lie_derivative, schouten, sharp, Form, Multivector};
use crate::poisson::{courant_bracket, is_holomorphic_poisson, GCSection};

/// Connection of `acting` on the module of `module`: `∇_{e_i} f_j = Σ_k gamma[i][j][k] f_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepData {
    pub acting: AlgebroidChart,
    pub module: AlgebroidChart,
    pub gamma: Vec<Vec<Section>>,
}

impl RepData {
    pub fn new(acting: AlgebroidChart, module: AlgebroidChart, gamma: Vec<Vec<Section>>) -> HpResult<Self> {
        acting.chart().ensure_same(&module.chart())?;
        let (ra, rb) = (acting.rank(), module.rank());
        if gamma.len() != ra || gamma.iter().any(|row| row.len() != rb || row.iter().any(|s| s.len() != rb)) {
            return Err(HpError::Shape(format!("connection coefficients must be {ra}x{rb}x{rb}")));
        }
        for f in gamma.iter().flatten().flatten() {
            f.chart().ensure_same(&acting.chart())?;
        }
        Ok(RepData { acting, module, gamma })
    }

    /// Zero connection coefficients.
    pub fn trivial(acting: AlgebroidChart, module: AlgebroidChart) -> HpResult<Self> {
        let gamma = vec![vec![module.zero_section(); module.rank()]; acting.rank()];
        RepData::new(acting, module, gamma)
    }

    fn chart(&self) -> Chart {
        self.acting.chart()
    }

    /// `∇_X Y`, extended by `C^∞`-linearity in `X` and the Leibniz rule in `Y`.
    pub fn nabla(&self, x: &[PolyGQ], y: &[PolyGQ]) -> Section {
        let rx = self.acting.anchor_of(x);
        let mut out: Section = y.iter().map(|f| rx.apply(f)).collect();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    section::add_mul(&mut out, &(a * b), &self.gamma[i][j]);
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RepReport {
    pub leibniz: bool,
    pub flat: bool,
}

impl RepReport {
    pub fn ok(&self) -> bool {
        self.leibniz && self.flat
    }
}

/// Leibniz rule against every coordinate function, and vanishing curvature on frames.
pub fn check_representation(rep: &RepData) -> RepReport {
    let chart = rep.chart();
    let (ra, rb) = (rep.acting.rank(), rep.module.rank());
    let mut leibniz = true;
    for v in 0..chart.nvars() {
        let f = PolyGQ::var(chart, v);
        for i in 0..ra {
            let ei = rep.acting.frame(i);
            for j in 0..rb {
                let fj = rep.module.frame(j);
                let lhs = rep.nabla(&ei, &section::mul_poly(&fj, &f));
                let mut rhs = section::mul_poly(&rep.nabla(&ei, &fj), &f);
                section::add_mul(&mut rhs, &rep.acting.anchor_of(&ei).apply(&f), &fj);
                leibniz &= lhs == rhs;
                leibniz &= rep.nabla(&section::mul_poly(&ei, &f), &fj) == section::mul_poly(&rep.nabla(&ei, &fj), &f);
            }
        }
    }
    let mut flat = true;
    'outer: for i in 0..ra {
        for j in i + 1..ra {
            let (ei, ej) = (rep.acting.frame(i), rep.acting.frame(j));
            let eij = rep.acting.structure(i, j);
            for k in 0..rb {
                let fk = rep.module.frame(k);
                let c = section::sub(
                    &section::sub(&rep.nabla(&ei, &rep.nabla(&ej, &fk)), &rep.nabla(&ej, &rep.nabla(&ei, &fk))),
                    &rep.nabla(eij, &fk),
                );
                if !section::is_zero(&c) {
                    flat = false;
                    break 'outer;
                }
            }
        }
    }
    RepReport { leibniz, flat }
}

/// Which connection of a matched pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum RepSide {
    /// `A` acting on `B`.
    AonB,
    /// `B` acting on `A`.
    BonA,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchedPairData {
    pub a: AlgebroidChart,
    pub b: AlgebroidChart,
    pub nabla_ab: RepData,
    pub nabla_ba: RepData,
    /// The Poisson bivector for a canonical pair.
    pub pi: Option<Multivector>,
}

impl MatchedPairData {
    pub fn new(nabla_ab: RepData, nabla_ba: RepData) -> HpResult<Self> {
        if nabla_ab.acting != nabla_ba.module || nabla_ab.module != nabla_ba.acting {
            return Err(HpError::Shape("connections do not act between the same two algebroids".into()));
        }
        Ok(MatchedPairData { a: nabla_ab.acting.clone(), b: nabla_ab.module.clone(), nabla_ab, nabla_ba, pi: None })
    }

    /// Add `delta` to one connection coefficient `Γ[i][j][k]`.
    pub fn perturbed(&self, side: RepSide, i: usize, j: usize, k: usize, delta: &PolyGQ) -> HpResult<Self> {
        let mut out = self.clone();
        let rep = match side {
            RepSide::AonB => &mut out.nabla_ab,
            RepSide::BonA => &mut out.nabla_ba,
        };
        let slot = rep
            .gamma
            .get_mut(i)
            .and_then(|row| row.get_mut(j))
            .and_then(|s| s.get_mut(k))
            .ok_or_else(|| HpError::Shape(format!("no connection coefficient ({i}, {j}, {k})")))?;
        slot.add_assign_ref(delta);
        Ok(out)
    }

    /// Number of connection coefficients on each side.
    pub fn coefficient_shape(&self, side: RepSide) -> (usize, usize) {
        match side {
            RepSide::AonB => (self.a.rank(), self.b.rank()),
            RepSide::BonA => (self.b.rank(), self.a.rank()),
        }
    }
}

/// `F(X;Y) = [aX, bY] + a(∇_Y X) − b(∇_X Y)`.
pub fn tensor_f(mp: &MatchedPairData, x: &[PolyGQ], y: &[PolyGQ]) -> Multivector {
    let ax = mp.a.anchor_of(x);
    let by = mp.b.anchor_of(y);
    schouten(&ax, &by)
        .expect("same chart")
        .add(&mp.a.anchor_of(&mp.nabla_ba.nabla(y, x)))
        .sub(&mp.b.anchor_of(&mp.nabla_ab.nabla(x, y)))
}

/// Failure of `∇_X` to be a derivation of the other bracket, corrected by the
/// cross terms: `[∇_X Y₁, Y₂] + [Y₁, ∇_X Y₂] − ∇_X[Y₁,Y₂] + ∇_{∇_{Y₂}X}Y₁ − ∇_{∇_{Y₁}X}Y₂`.
fn derivation_defect(
    module: &AlgebroidChart,
    on_module: &RepData,
    on_acting: &RepData,
    x: &[PolyGQ],
    y1: &[PolyGQ],
    y2: &[PolyGQ],
) -> Section {
    let t1 = module.bracket(&on_module.nabla(x, y1), y2);
    let t2 = module.bracket(y1, &on_module.nabla(x, y2));
    let t3 = on_module.nabla(x, &module.bracket(y1, y2));
    let t4 = on_module.nabla(&on_acting.nabla(y2, x), y1);
    let t5 = on_module.nabla(&on_acting.nabla(y1, x), y2);
    section::sub(&section::add(&section::sub(&section::add(&t1, &t2), &t3), &t4), &t5)
}

/// `S(X; Y₁, Y₂)`, a section of `B`.
pub fn tensor_s(mp: &MatchedPairData, x: &[PolyGQ], y1: &[PolyGQ], y2: &[PolyGQ]) -> Section {
    derivation_defect(&mp.b, &mp.nabla_ab, &mp.nabla_ba, x, y1, y2)
}

/// `T(Y; X₁, X₂)`, a section of `A`.
pub fn tensor_t(mp: &MatchedPairData, y: &[PolyGQ], x1: &[PolyGQ], x2: &[PolyGQ]) -> Section {
    derivation_defect(&mp.a, &mp.nabla_ba, &mp.nabla_ab, y, x1, x2)
}

/// Nonzero frame values of `F`, `S`, `T`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MatchedPairTensors {
    pub f: BTreeMap<(usize, usize), Multivector>,
    pub s: BTreeMap<(usize, usize, usize), Section>,
    pub t: BTreeMap<(usize, usize, usize), Section>,
}

impl MatchedPairTensors {
    pub fn is_zero(&self) -> bool {
        self.f.is_empty() && self.s.is_empty() && self.t.is_empty()
    }
}

/// `F`, `S`, `T` on frames, with no precondition on the connections.
pub fn compute_tensors(mp: &MatchedPairData) -> MatchedPairTensors {
    let (ra, rb) = (mp.a.rank(), mp.b.rank());
    let ea: Vec<Section> = (0..ra).map(|i| mp.a.frame(i)).collect();
    let eb: Vec<Section> = (0..rb).map(|j| mp.b.frame(j)).collect();
    let mut out = MatchedPairTensors::default();
    for i in 0..ra {
        for j in 0..rb {
            let f = tensor_f(mp, &ea[i], &eb[j]);
            if !f.is_zero() {
                out.f.insert((i, j), f);
            }
        }
    }
    for i in 0..ra {
        for j1 in 0..rb {
            for j2 in j1 + 1..rb {
                let s = tensor_s(mp, &ea[i], &eb[j1], &eb[j2]);
                if !section::is_zero(&s) {
                    out.s.insert((i, j1, j2), s);
                }
            }
        }
    }
    for j in 0..rb {
        for i1 in 0..ra {
            for i2 in i1 + 1..ra {
                let t = tensor_t(mp, &eb[j], &ea[i1], &ea[i2]);
                if !section::is_zero(&t) {
                    out.t.insert((j, i1, i2), t);
                }
            }
        }
    }
    out
}

/// `F`, `S`, `T` on frames once both connections are representations.
pub fn matched_pair_tensors(mp: &MatchedPairData) -> HpResult<MatchedPairTensors> {
    if !check_representation(&mp.nabla_ab).ok() {
        return Err(HpError::Structure("A does not act on B by a representation".into()));
    }
    if !check_representation(&mp.nabla_ba).ok() {
        return Err(HpError::Structure("B does not act on A by a representation".into()));
    }
    Ok(compute_tensors(mp))
}

/// `A ⋈ B` on the frame `(e^A_1.., e^B_1..)`: anchor `a + b`, mixed brackets
/// `[X ⊕ 0, 0 ⊕ Y] = −∇_Y X ⊕ ∇_X Y`.
pub fn bowtie(mp: &MatchedPairData) -> HpResult<AlgebroidChart> {
    if !matched_pair_tensors(mp)?.is_zero() {
        return Err(HpError::Structure("F, S, T do not vanish".into()));
    }
    let ra = mp.a.rank();
    let anchor = mp.a.anchor().iter().chain(mp.b.anchor()).cloned().collect();
    AlgebroidChart::from_fn(mp.a.chart(), anchor, |p, q| {
        if q < ra {
            mp.a.structure(p, q).iter().cloned().chain(mp.b.zero_section()).collect()
        } else if p >= ra {
            mp.a.zero_section().into_iter().chain(mp.b.structure(p - ra, q - ra).iter().cloned()).collect()
        } else {
            let x = mp.a.frame(p);
            let y = mp.b.frame(q - ra);
            section::neg(&mp.nabla_ba.nabla(&y, &x)).into_iter().chain(mp.nabla_ab.nabla(&x, &y)).collect()
        }
    })
}

/// `(T^{0,1}X, (T^{1,0}X)*_π)` with `∇_{X^{0,1}}ξ = ℒ_{X^{0,1}}ξ` and
/// `∇_ξ X^{0,1} = pr^{0,1}[π♯ξ, X^{0,1}]`.
pub fn canonical_matched_pair(pi: &Multivector) -> HpResult<MatchedPairData> {
    if !is_holomorphic_poisson(pi)?.is_poisson() {
        return Err(HpError::Structure("bivector is not holomorphic Poisson".into()));
    }
    let chart = pi.chart();
    let n = chart.n;
    let dbar: Vec<Multivector> = (0..n).map(|k| Multivector::frame(chart, &[n + k])).collect();
    let dz: Vec<Form> = (0..n).map(|k| Form::frame(chart, &[k])).collect();
    let a = AlgebroidChart::from_fn(chart, dbar.clone(), |_, _| section::zero(chart, n))?;
    let b = cotangent_algebroid(pi)?;
    let mut gamma_ab = vec![vec![section::zero(chart, n); n]; n];
    let mut gamma_ba = vec![vec![section::zero(chart, n); n]; n];
    for k in 0..n {
        for j in 0..n {
            let l = lie_derivative(&dbar[k], &dz[j])?;
            gamma_ab[k][j] = (0..n).map(|s| l.coeff(1 << s)).collect();
            let br = schouten(&sharp(pi, &dz[j])?, &dbar[k])?;
            gamma_ba[j][k] = (0..n).map(|s| br.coeff(1 << (n + s))).collect();
        }
    }
    let mut mp = MatchedPairData::new(RepData::new(a.clone(), b.clone(), gamma_ab)?, RepData::new(b, a, gamma_ba)?)?;
    mp.pi = Some(pi.clone());
    Ok(mp)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct YaoReport {
    pub vector_vector: bool,
    pub form_form: bool,
    pub mixed: bool,
    pub anchor: bool,
}

impl YaoReport {
    pub fn all(&self) -> bool {
        self.vector_vector && self.form_form && self.mixed && self.anchor
    }
}

/// `φ(X^{0,1}, ξ^{1,0}) = (X^{0,1} + π♯ξ^{1,0}, ξ^{1,0})` against the Courant
/// bracket, on every pair of frame generators of `T^{0,1}X ⋈ (T^{1,0}X)*_π`.
pub fn yao_isomorphism_check(pi: &Multivector) -> HpResult<YaoReport> {
    let mp = canonical_matched_pair(pi)?;
    let bow = bowtie(&mp)?;
    let chart = pi.chart();
    let n = chart.n;
    let phi = |s: &[PolyGQ]| -> HpResult<GCSection> {
        let mut x = Multivector::zero(chart);
        let mut xi = Form::zero(chart);
        for k in 0..n {
            x.add_term(1 << (n + k), &s[k]);
            xi.add_term(1 << k, &s[n + k]);
        }
        let v = if xi.is_zero() { x } else { x.add(&sharp(pi, &xi)?) };
        GCSection::new(v, xi)
    };
    let frames: Vec<Section> = (0..2 * n).map(|p| bow.frame(p)).collect();
    let mut report = YaoReport { vector_vector: true, form_form: true, mixed: true, anchor: true };
    for p in 0..2 * n {
        report.anchor &= bow.anchor_of(&frames[p]) == phi(&frames[p])?.vec;
        for q in p + 1..2 * n {
            let lhs = courant_bracket(&phi(&frames[p])?, &phi(&frames[q])?)?;
            let ok = lhs == phi(&bow.bracket(&frames[p], &frames[q]))?;
            let slot = match (p < n, q < n) {
                (true, true) => &mut report.vector_vector,
                (false, false) => &mut report.form_form,
                _ => &mut report.mixed,
            };
            *slot &= ok;
        }
    }
    Ok(report)
}
