//! Multivector fields and differential forms on a chart.
//!
//! Both are stored as maps from a frame index set (bitmask over the `2n`
//! tangent slots) to a polynomial coefficient. Slot `s < n` is `∂z_{s+1}`
//! (resp. `dz_{s+1}`), slot `n + k` is `∂zb_{k+1}` (resp. `dzb_{k+1}`); on
//! real charts the slots are `x` then `y`.
//!
//! Sign conventions: `[X, f] = X(f)`, `[X, Y]` is the Lie bracket, and the
//! Schouten bracket satisfies
//! `[P, Q∧R] = [P,Q]∧R + (-1)^{(p-1)q} Q∧[P,R]`. Interior products act on
//! the first slot, so `ι_{dzb1}(∂z1∧∂zb1) = -∂z1`, and `π♯ξ = ι_ξ π`.

pub mod mask;
mod mixed;

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, ChartKind, PolyGQ, GQ};

pub use mixed::MixedForm;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Vectorial;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Covectorial;

pub trait Kind: Clone + Copy + PartialEq + Eq + fmt::Debug + Default {
    fn symbol(chart: &Chart, slot: usize) -> String;
    /// Image of slot `s` in the partner chart's frame.
    fn convert_slot(source: &Chart, s: usize) -> Vec<(usize, GQ)>;
}

impl Kind for Vectorial {
    fn symbol(chart: &Chart, slot: usize) -> String {
        format!("d/d{}", chart.var_name(slot))
    }

    fn convert_slot(source: &Chart, s: usize) -> Vec<(usize, GQ)> {
        let n = source.n;
        let k = s % n;
        let holo = s < n;
        match source.kind {
            // ∂z = (∂x - i∂y)/2, ∂zb = (∂x + i∂y)/2
            ChartKind::Complex => {
                let sign = if holo { -1 } else { 1 };
                vec![(k, GQ::frac(1, 2)), (n + k, GQ::complex((0, 1), (sign, 2)))]
            }
            // ∂x = ∂z + ∂zb, ∂y = i(∂z - ∂zb)
            ChartKind::Real => {
                if holo {
                    vec![(k, GQ::one()), (n + k, GQ::one())]
                } else {
                    vec![(k, GQ::i()), (n + k, -GQ::i())]
                }
            }
        }
    }
}

impl Kind for Covectorial {
    fn symbol(chart: &Chart, slot: usize) -> String {
        format!("d{}", chart.var_name(slot))
    }

    fn convert_slot(source: &Chart, s: usize) -> Vec<(usize, GQ)> {
        let n = source.n;
        let k = s % n;
        let holo = s < n;
        match source.kind {
            // dz = dx + i dy, dzb = dx - i dy
            ChartKind::Complex => {
                let sign = if holo { 1 } else { -1 };
                vec![(k, GQ::one()), (n + k, GQ::complex((0, 1), (sign, 1)))]
            }
            // dx = (dz + dzb)/2, dy = (dz - dzb)/(2i)
            ChartKind::Real => {
                if holo {
                    vec![(k, GQ::frac(1, 2)), (n + k, GQ::frac(1, 2))]
                } else {
                    vec![(k, GQ::complex((0, 1), (-1, 2))), (n + k, GQ::complex((0, 1), (1, 2)))]
                }
            }
        }
    }
}

/// Element of the exterior algebra on the frame of a chart.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graded<K: Kind> {
    chart: Chart,
    terms: BTreeMap<u32, PolyGQ>,
    _kind: PhantomData<K>,
}

pub type Multivector = Graded<Vectorial>;
pub type Form = Graded<Covectorial>;

impl<K: Kind> Graded<K> {
    pub fn zero(chart: Chart) -> Self {
        Graded { chart, terms: BTreeMap::new(), _kind: PhantomData }
    }

    pub fn single(chart: Chart, m: u32, f: PolyGQ) -> Self {
        let mut g = Self::zero(chart);
        g.add_term(m, &f);
        g
    }

    pub fn scalar(f: PolyGQ) -> Self {
        Self::single(f.chart(), 0, f)
    }

    /// Frame element `e_{s1} ∧ ... ∧ e_{sk}` for slots given in any order.
    pub fn frame(chart: Chart, slots: &[usize]) -> Self {
        let mut out = Self::scalar(PolyGQ::one(chart));
        for &s in slots {
            out = out.wedge(&Self::single(chart, 1 << s, PolyGQ::one(chart)));
        }
        out
    }

    /// Degree-one element `f · e_s`.
    pub fn slot(chart: Chart, s: usize, f: PolyGQ) -> Self {
        assert!(s < chart.nvars());
        Self::single(chart, 1 << s, f)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, PolyGQ)>>(chart: Chart, it: I) -> Self {
        let mut g = Self::zero(chart);
        for (m, f) in it {
            g.add_term(m, &f);
        }
        g
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &PolyGQ)> {
        self.terms.iter().map(|(m, f)| (*m, f))
    }

    pub fn coeff(&self, m: u32) -> PolyGQ {
        self.terms.get(&m).cloned().unwrap_or_else(|| PolyGQ::zero(self.chart))
    }

    pub fn add_term(&mut self, m: u32, f: &PolyGQ) {
        assert_eq!(f.chart(), self.chart, "coefficient chart mismatch");
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                e.add_assign_ref(f);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, f.clone());
            }
        }
    }

    pub fn add_signed(&mut self, m: u32, sign: i64, f: &PolyGQ) {
        if sign >= 0 {
            self.add_term(m, f);
        } else {
            self.add_term(m, &-f);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.chart, o.chart, "chart mismatch");
        let mut r = self.clone();
        for (m, f) in &o.terms {
            r.add_term(*m, f);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|f| -f)
    }

    pub fn scale(&self, c: &GQ) -> Self {
        self.map_coeffs(|f| f.scale(c))
    }

    pub fn mul_poly(&self, g: &PolyGQ) -> Self {
        self.map_coeffs(|f| f * g)
    }

    pub fn map_coeffs<F: Fn(&PolyGQ) -> PolyGQ>(&self, f: F) -> Self {
        Self::from_terms(self.chart, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Keep the components whose index set satisfies `keep`.
    pub fn filter<F: Fn(u32) -> bool>(&self, keep: F) -> Self {
        Self::from_terms(self.chart, self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())))
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.chart, o.chart, "chart mismatch in wedge");
        let mut out = Self::zero(self.chart);
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                if let Some(sign) = mask::wedge_sign(*a, *b) {
                    out.add_signed(a | b, sign, &(f * g));
                }
            }
        }
        out
    }

    pub fn try_wedge(&self, o: &Self) -> HpResult<Self> {
        self.chart.ensure_same(&o.chart)?;
        Ok(self.wedge(o))
    }

    /// True when every component has total degree `d` (the zero element qualifies).
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| mask::degree(*m) == d)
    }

    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| mask::degree(*m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn split_mask(&self, m: u32) -> (usize, usize) {
        let n = self.chart.n;
        let low = if n == 0 { 0 } else { m & ((1u32 << n) - 1) };
        (mask::degree(low), mask::degree(m) - mask::degree(low))
    }

    /// `(k, l)`: number of holomorphic (or `x`) and antiholomorphic (or `y`) slots.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|m| self.split_mask(*m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Every component is of bidegree `(k, l)` (the zero element qualifies).
    pub fn is_type(&self, k: usize, l: usize) -> bool {
        self.terms.keys().all(|m| self.split_mask(*m) == (k, l))
    }

    /// Substitute each frame slot by a linear combination in the frame of `target`.
    pub fn frame_substitute<F: Fn(&PolyGQ) -> PolyGQ>(
        &self,
        images: &[Vec<(usize, GQ)>],
        target: Chart,
        coeff: F,
    ) -> Self {
        let mut out = Self::zero(target);
        for (m, f) in &self.terms {
            let mut acc = Self::scalar(coeff(f));
            for s in mask::bits(*m) {
                let img = Self::from_terms(
                    target,
                    images[s].iter().map(|(t, c)| (1u32 << t, PolyGQ::constant(target, c.clone()))),
                );
                acc = acc.wedge(&img);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Rewrite both coefficients and frame in the partner chart.
    pub fn convert_chart(&self, target: Chart) -> HpResult<Self> {
        if target.n != self.chart.n {
            return Err(HpError::Chart(format!("dimension mismatch: {} vs {}", self.chart, target)));
        }
        if target == self.chart {
            return Ok(self.clone());
        }
        let images: Vec<_> = (0..self.chart.nvars()).map(|s| K::convert_slot(&self.chart, s)).collect();
        Ok(self.frame_substitute(&images, target, |f| f.convert_chart(target).expect("same dimension")))
    }

    /// Complex conjugate (swaps holomorphic and antiholomorphic slots on complex charts).
    pub fn conj(&self) -> Self {
        let n = self.chart.n;
        match self.chart.kind {
            ChartKind::Complex => {
                let images: Vec<_> = (0..2 * n).map(|s| vec![((s + n) % (2 * n), GQ::one())]).collect();
                self.frame_substitute(&images, self.chart, |f| f.conj_function())
            }
            ChartKind::Real => self.map_coeffs(|f| f.conj_function()),
        }
    }

    /// Fixed by complex conjugation.
    pub fn is_real_object(&self) -> bool {
        self.conj() == *self
    }

    /// Components as `(I, J, coeff)` with 1-based indices, in canonical order.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>, &PolyGQ)> {
        let n = self.chart.n;
        let mut keys: Vec<u32> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&m| mask::canonical_key(m));
        keys.into_iter()
            .map(|m| {
                let (i, j): (Vec<usize>, Vec<usize>) = mask::bits(m).partition(|&s| s < n);
                (i.iter().map(|s| s + 1).collect(), j.iter().map(|s| s - n + 1).collect(), &self.terms[&m])
            })
            .collect()
    }

    /// Build from `(I, J, coeff)` components with 1-based indices.
    pub fn from_components(chart: Chart, comps: &[(Vec<usize>, Vec<usize>, PolyGQ)]) -> HpResult<Self> {
        let n = chart.n;
        let mut out = Self::zero(chart);
        for (i, j, f) in comps {
            f.chart().ensure_same(&chart)?;
            let mut slots = Vec::new();
            for &a in i {
                if a == 0 || a > n {
                    return Err(HpError::Shape(format!("index {} outside 1..{}", a, n)));
                }
                slots.push(a - 1);
            }
            for &b in j {
                if b == 0 || b > n {
                    return Err(HpError::Shape(format!("index {} outside 1..{}", b, n)));
                }
                slots.push(n + b - 1);
            }
            out = out.add(&Self::frame(chart, &slots).mul_poly(f));
        }
        Ok(out)
    }

    /// Apply `∂/∂v` to every coefficient.
    pub fn coeff_diff(&self, v: usize) -> Self {
        self.map_coeffs(|f| f.diff(v))
    }
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<u32> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&m| mask::canonical_key(m));
        let parts: Vec<String> = keys
            .iter()
            .map(|&m| {
                let frame: Vec<String> = mask::bits(m).map(|s| K::symbol(&self.chart, s)).collect();
                if frame.is_empty() {
                    format!("({})", self.terms[&m])
                } else {
                    format!("({}) {}", self.terms[&m], frame.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn require_degree<K: Kind>(x: &Graded<K>, d: usize, what: &str) -> HpResult<()> {
    if !x.is_homogeneous_of(d) {
        return Err(HpError::Degree(format!("{} must have total degree {}", what, d)));
    }
    Ok(())
}

impl Multivector {
    /// `X(f)` for a vector field `X`.
    pub fn apply(&self, f: &PolyGQ) -> PolyGQ {
        let mut out = PolyGQ::zero(self.chart);
        for (m, c) in &self.terms {
            if mask::degree(*m) != 1 {
                continue;
            }
            let s = m.trailing_zeros() as usize;
            out.add_assign_ref(&(c * &f.diff(s)));
        }
        out
    }

    /// Component of the degree-one part along slot `s`.
    pub fn vector_component(&self, s: usize) -> PolyGQ {
        self.coeff(1 << s)
    }
}

/// Schouten–Nijenhuis bracket.
pub fn schouten(p: &Multivector, q: &Multivector) -> HpResult<Multivector> {
    p.chart.ensure_same(&q.chart)?;
    Ok(schouten_unchecked(p, q))
}

pub(crate) fn schouten_unchecked(p: &Multivector, q: &Multivector) -> Multivector {
    let chart = p.chart;
    let nv = chart.nvars();
    let mut out = Multivector::zero(chart);
    for (a, f) in &p.terms {
        for (b, g) in &q.terms {
            // right derivative of P in θ_s times ∂_s Q
            for s in mask::bits(*a) {
                let dg = g.diff(s);
                if dg.is_zero() {
                    continue;
                }
                let (rest, s1) = mask::right_remove(*a, s).unwrap();
                if let Some(s2) = mask::wedge_sign(rest, *b) {
                    out.add_signed(rest | b, s1 * s2, &(f * &dg));
                }
            }
            // minus ∂_s P times left derivative of Q in θ_s
            for s in mask::bits(*b) {
                if s >= nv {
                    continue;
                }
                let df = f.diff(s);
                if df.is_zero() {
                    continue;
                }
                let (rest, s1) = mask::left_remove(*b, s).unwrap();
                if let Some(s2) = mask::wedge_sign(*a, rest) {
                    out.add_signed(a | rest, -s1 * s2, &(&df * g));
                }
            }
        }
    }
    out
}

/// Interior product `ι_ξ P` of a 1-form into a multivector (first slot).
pub fn contract(xi: &Form, p: &Multivector) -> HpResult<Multivector> {
    xi.chart.ensure_same(&p.chart)?;
    require_degree(xi, 1, "contracting form")?;
    if !p.is_zero() && p.terms.keys().all(|m| *m == 0) {
        return Err(HpError::Degree("cannot contract a function".into()));
    }
    Ok(contract_unchecked(xi, p))
}

pub(crate) fn contract_unchecked(xi: &Form, p: &Multivector) -> Multivector {
    let mut out = Multivector::zero(p.chart);
    for (sm, c) in &xi.terms {
        let s = sm.trailing_zeros() as usize;
        for (m, f) in &p.terms {
            if let Some((rest, sign)) = mask::left_remove(*m, s) {
                out.add_signed(rest, sign, &(c * f));
            }
        }
    }
    out
}

/// `π♯ξ = ι_ξ π`.
pub fn sharp(pi: &Multivector, xi: &Form) -> HpResult<Multivector> {
    pi.chart.ensure_same(&xi.chart)?;
    require_degree(pi, 2, "bivector")?;
    require_degree(xi, 1, "form")?;
    Ok(contract_unchecked(xi, pi))
}

/// `⟨ξ, X⟩` for a 1-form and a vector field.
pub fn pairing(xi: &Form, x: &Multivector) -> PolyGQ {
    assert_eq!(xi.chart, x.chart, "chart mismatch in pairing");
    let mut out = PolyGQ::zero(x.chart);
    for (m, c) in &xi.terms {
        if mask::degree(*m) != 1 {
            continue;
        }
        if let Some(f) = x.terms.get(m) {
            out.add_assign_ref(&(c * f));
        }
    }
    out
}

/// `π(α, β) = ⟨β, π♯α⟩`.
pub fn bivector_eval(pi: &Multivector, alpha: &Form, beta: &Form) -> PolyGQ {
    pairing(beta, &contract_unchecked(alpha, pi))
}

impl Form {
    /// Differential of a function.
    pub fn d_function(f: &PolyGQ) -> Form {
        Form::scalar(f.clone()).d()
    }

    fn d_range(&self, lo: usize, hi: usize) -> Form {
        let mut out = Form::zero(self.chart);
        for (m, f) in &self.terms {
            for s in lo..hi {
                let df = f.diff(s);
                if df.is_zero() {
                    continue;
                }
                if let Some(sign) = mask::wedge_sign(1 << s, *m) {
                    out.add_signed(m | (1 << s), sign, &df);
                }
            }
        }
        out
    }

    pub fn d(&self) -> Form {
        self.d_range(0, self.chart.nvars())
    }

    /// Holomorphic part `∂` of `d` (complex charts).
    pub fn del(&self) -> HpResult<Form> {
        self.chart.ensure_complex()?;
        Ok(self.d_range(0, self.chart.n))
    }

    /// Antiholomorphic part `∂̄` of `d` (complex charts).
    pub fn delbar(&self) -> HpResult<Form> {
        self.chart.ensure_complex()?;
        Ok(self.d_range(self.chart.n, self.chart.nvars()))
    }

    /// Interior product `ι_X ω` of a vector field (first slot).
    pub fn interior(&self, x: &Multivector) -> Form {
        assert_eq!(self.chart, x.chart, "chart mismatch in interior product");
        let mut out = Form::zero(self.chart);
        for (xm, c) in &x.terms {
            if mask::degree(*xm) != 1 {
                continue;
            }
            let s = xm.trailing_zeros() as usize;
            for (m, f) in &self.terms {
                if let Some((rest, sign)) = mask::left_remove(*m, s) {
                    out.add_signed(rest, sign, &(c * f));
                }
            }
        }
        out
    }
}

/// `(∂ω, ∂̄ω)` on a complex chart.
pub fn derham_split(omega: &Form) -> HpResult<(Form, Form)> {
    Ok((omega.del()?, omega.delbar()?))
}

/// Objects a vector field can act on by Lie derivative.
pub trait LieDerivative: Sized {
    fn lie_derivative_by(&self, x: &Multivector) -> HpResult<Self>;
}

impl LieDerivative for Form {
    /// Cartan formula `ℒ_X = ι_X d + d ι_X`.
    fn lie_derivative_by(&self, x: &Multivector) -> HpResult<Form> {
        self.chart.ensure_same(&x.chart)?;
        require_degree(x, 1, "vector field")?;
        Ok(self.d().interior(x).add(&self.interior(x).d()))
    }
}

impl LieDerivative for Multivector {
    fn lie_derivative_by(&self, x: &Multivector) -> HpResult<Multivector> {
        require_degree(x, 1, "vector field")?;
        schouten(x, self)
    }
}

pub fn lie_derivative<T: LieDerivative>(x: &Multivector, t: &T) -> HpResult<T> {
    t.lie_derivative_by(x)
}

/// `∂̄` of a `(k, 0)` multivector, acting coefficient-wise in the holomorphic frame.
pub fn dbar_multivector(p: &Multivector) -> HpResult<MixedForm> {
    p.chart.ensure_complex()?;
    let k = p.bidegree().map_or(0, |b| b.0);
    if !p.is_type(k, 0) {
        return Err(HpError::Degree("dbar of a multivector needs bidegree (k, 0)".into()));
    }
    Ok(MixedForm::from_multivector(p)?.dbar())
}

#[cfg(test)]
mod tests;
