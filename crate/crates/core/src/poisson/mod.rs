//! Holomorphic Poisson structures and their real and imaginary parts.

pub mod endo;
mod gc;

use serde::Serialize;

use crate::error::{HpError, HpResult};
use crate::exactalg::{matrix, Chart, PolyGQ, GQ};
use crate::multivec::{bivector_eval, mask, schouten, Form, Multivector};

pub use endo::{koszul_with, nijenhuis_torsion, EndoField, PolyMatrix, SharpMap, TorsionTensor};
pub use gc::{courant_bracket, dirac_section, gc_endomorphism, in_dirac, GCSection, GcEndomorphism, GcFactor};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HolomorphicPoissonReport {
    pub dbar_zero: bool,
    pub schouten_zero: bool,
}

impl HolomorphicPoissonReport {
    pub fn is_poisson(&self) -> bool {
        self.dbar_zero && self.schouten_zero
    }
}

fn require_20(pi: &Multivector) -> HpResult<()> {
    pi.chart().ensure_complex()?;
    if !pi.is_type(2, 0) {
        return Err(HpError::Degree("expected a bivector of bidegree (2,0)".into()));
    }
    Ok(())
}

pub fn is_holomorphic_poisson(pi: &Multivector) -> HpResult<HolomorphicPoissonReport> {
    require_20(pi)?;
    Ok(HolomorphicPoissonReport {
        dbar_zero: pi.terms().all(|(_, f)| f.is_holomorphic()),
        schouten_zero: schouten(pi, pi)?.is_zero(),
    })
}

/// Real and imaginary parts of a `(2,0)` bivector, on the real chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonPair {
    pub pi_r: Multivector,
    pub pi_i: Multivector,
}

impl PoissonPair {
    /// `π_R + iπ_I` back on the complex chart.
    pub fn recompose(&self, chart: Chart) -> HpResult<Multivector> {
        self.pi_r.add(&self.pi_i.scale(&GQ::i())).convert_chart(chart)
    }
}

/// `π_R = (π + π̄)/2`, `π_I = (π − π̄)/2i`.
pub fn decompose(pi: &Multivector) -> HpResult<PoissonPair> {
    require_20(pi)?;
    let real = Chart::real(pi.chart().n);
    let bar = pi.conj();
    let pi_r = pi.add(&bar).scale(&GQ::frac(1, 2)).convert_chart(real)?;
    let pi_i = pi.sub(&bar).scale(&GQ::complex((0, 1), (-1, 2))).convert_chart(real)?;
    Ok(PoissonPair { pi_r, pi_i })
}

fn require_bivector(pi: &Multivector) -> HpResult<()> {
    if !pi.is_homogeneous_of(2) {
        return Err(HpError::Degree("expected a bivector".into()));
    }
    Ok(())
}

/// `{f, g} = π(df, dg)`.
pub fn poisson_bracket(pi: &Multivector, f: &PolyGQ, g: &PolyGQ) -> HpResult<PolyGQ> {
    pi.chart().ensure_same(&f.chart())?;
    pi.chart().ensure_same(&g.chart())?;
    require_bivector(pi)?;
    Ok(bivector_eval(pi, &Form::d_function(f), &Form::d_function(g)))
}

/// `[α,β]_π = ℒ_{π♯α}β − ℒ_{π♯β}α − d(π(α,β))`.
pub fn koszul_bracket(pi: &Multivector, alpha: &Form, beta: &Form) -> HpResult<Form> {
    pi.chart().ensure_same(&alpha.chart())?;
    require_bivector(pi)?;
    koszul_with(&SharpMap::of_bivector(pi)?, alpha, beta)
}

/// `π_R♯ = π_I♯ ∘ J*` as an identity of polynomial matrices.
pub fn sharp_relation(pi_r: &Multivector, pi_i: &Multivector) -> HpResult<bool> {
    pi_r.chart().ensure_same(&pi_i.chart())?;
    pi_r.chart().ensure_real()?;
    let j = EndoField::standard_j(pi_r.chart())?;
    Ok(SharpMap::of_bivector(pi_r)? == SharpMap::of_bivector(pi_i)?.after_dual(&j))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PnReport {
    pub pi_poisson: bool,
    pub sharp_intertwine: bool,
    pub koszul_compat: bool,
    pub torsion_zero: bool,
}

impl PnReport {
    pub fn all(&self) -> bool {
        self.pi_poisson && self.sharp_intertwine && self.koszul_compat && self.torsion_zero
    }
}

/// Poisson–Nijenhuis conditions for `(π, N)` on a real chart. The compatibility
/// condition is checked on pairs of coordinate coframe elements.
pub fn pn_check(pi: &Multivector, n: &EndoField) -> HpResult<PnReport> {
    pi.chart().ensure_real()?;
    pi.chart().ensure_same(&n.chart())?;
    require_bivector(pi)?;
    let chart = pi.chart();
    let s = SharpMap::of_bivector(pi)?;
    let s_n = s.after_dual(n);
    let sharp_intertwine = s.before(n) == s_n;
    let coframe: Vec<Form> = (0..chart.nvars()).map(|a| Form::frame(chart, &[a])).collect();
    let mut koszul_compat = true;
    'outer: for a in &coframe {
        for b in &coframe {
            let lhs = koszul_with(&s_n, a, b)?;
            let rhs = koszul_with(&s, &n.dual_apply(a), b)?
                .add(&koszul_with(&s, a, &n.dual_apply(b))?)
                .sub(&n.dual_apply(&koszul_with(&s, a, b)?));
            if lhs != rhs {
                koszul_compat = false;
                break 'outer;
            }
        }
    }
    Ok(PnReport {
        pi_poisson: schouten(pi, pi)?.is_zero(),
        sharp_intertwine,
        koszul_compat,
        torsion_zero: nijenhuis_torsion(n).is_zero(),
    })
}

/// Bivector of a constant-coefficient nondegenerate 2-form, `π♯ = (ω♭)^{-1}`.
///
/// A `(2,0)`-form on a complex chart is inverted on the holomorphic frame.
pub fn symplectic_inverse(omega: &Form) -> HpResult<Multivector> {
    if !omega.is_homogeneous_of(2) {
        return Err(HpError::Degree("expected a 2-form".into()));
    }
    let chart = omega.chart();
    let slots: Vec<usize> =
        if chart.is_complex() && omega.is_type(2, 0) { (0..chart.n).collect() } else { (0..chart.nvars()).collect() };
    let pos = |s: usize| slots.iter().position(|&t| t == s).expect("slot in block");
    let mut w = matrix::zeros(slots.len(), slots.len());
    for (key, f) in omega.terms() {
        if f.total_degree().is_some_and(|d| d > 0) {
            return Err(HpError::Degree("symplectic_inverse needs constant coefficients".into()));
        }
        let v: Vec<usize> = mask::bits(key).map(pos).collect();
        let c = f.constant_term();
        w[v[1]][v[0]] = -&c;
        w[v[0]][v[1]] = c;
    }
    let p = matrix::inverse(&w)?;
    let mut out = Multivector::zero(chart);
    for a in 0..slots.len() {
        for b in a + 1..slots.len() {
            out.add_term((1 << slots[a]) | (1 << slots[b]), &PolyGQ::constant(chart, p[a][b].clone()));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FoliationReport {
    pub rank_r: usize,
    pub rank_i: usize,
    pub images_equal: bool,
}

/// Ranks and images of `π_R♯` and `π_I♯` at a point `(x_1..x_n, y_1..y_n)`.
pub fn foliation_rank(pi: &Multivector, point: &[GQ]) -> HpResult<FoliationReport> {
    let pair = decompose(pi)?;
    let side = pair.pi_r.chart().nvars();
    if point.len() != side {
        return Err(HpError::Chart(format!("point needs {} real coordinates, got {}", side, point.len())));
    }
    let r = endo::poly_eval(SharpMap::of_bivector(&pair.pi_r)?.matrix(), point)?;
    let i = endo::poly_eval(SharpMap::of_bivector(&pair.pi_i)?.matrix(), point)?;
    let rank_r = matrix::rank(&r);
    let rank_i = matrix::rank(&i);
    let joint = matrix::rank(&matrix::hcat(&r, &i));
    Ok(FoliationReport { rank_r, rank_i, images_equal: rank_r == joint && rank_i == joint })
}
