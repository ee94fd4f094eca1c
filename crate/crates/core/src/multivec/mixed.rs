use std::collections::BTreeMap;
use std::fmt;

use super::{mask, Form, Multivector};
use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, PolyGQ, GQ};

/// Element of `Ω^{0,q}(T^{p,0})`: sums of `g dzb_J ⊗ ∂z_I`.
///
/// Keys are `(J, I)` bitmasks over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MixedForm {
    chart: Chart,
    terms: BTreeMap<(u32, u32), PolyGQ>,
}

impl MixedForm {
    pub fn zero(chart: Chart) -> Self {
        assert!(chart.is_complex(), "mixed forms live on complex charts");
        MixedForm { chart, terms: BTreeMap::new() }
    }

    pub fn single(chart: Chart, j: u32, i: u32, f: PolyGQ) -> Self {
        let mut m = MixedForm::zero(chart);
        m.add_term(j, i, &f);
        m
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &PolyGQ)> {
        self.terms.iter().map(|(k, f)| (*k, f))
    }

    pub fn coeff(&self, j: u32, i: u32) -> PolyGQ {
        self.terms.get(&(j, i)).cloned().unwrap_or_else(|| PolyGQ::zero(self.chart))
    }

    pub fn add_term(&mut self, j: u32, i: u32, f: &PolyGQ) {
        assert_eq!(f.chart(), self.chart, "coefficient chart mismatch");
        if f.is_zero() {
            return;
        }
        let key = (j, i);
        match self.terms.get_mut(&key) {
            Some(e) => {
                e.add_assign_ref(f);
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, f.clone());
            }
        }
    }

    pub fn add_signed(&mut self, j: u32, i: u32, sign: i64, f: &PolyGQ) {
        if sign >= 0 {
            self.add_term(j, i, f);
        } else {
            self.add_term(j, i, &-f);
        }
    }

    pub fn add(&self, o: &MixedForm) -> MixedForm {
        assert_eq!(self.chart, o.chart, "chart mismatch");
        let mut r = self.clone();
        for ((j, i), f) in &o.terms {
            r.add_term(*j, *i, f);
        }
        r
    }

    pub fn sub(&self, o: &MixedForm) -> MixedForm {
        self.add(&o.scale(&GQ::int(-1)))
    }

    pub fn scale(&self, c: &GQ) -> MixedForm {
        let mut r = MixedForm::zero(self.chart);
        for ((j, i), f) in &self.terms {
            r.add_term(*j, *i, &f.scale(c));
        }
        r
    }

    /// `(q, p)` when homogeneous.
    pub fn degrees(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|(j, i)| (mask::degree(*j), mask::degree(*i)));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `∂̄`, acting on coefficients since the frame `∂z_I` is holomorphic.
    pub fn dbar(&self) -> MixedForm {
        let n = self.chart.n;
        let mut out = MixedForm::zero(self.chart);
        for ((j, i), f) in &self.terms {
            for k in 0..n {
                let df = f.diff(n + k);
                if df.is_zero() {
                    continue;
                }
                if let Some(sign) = mask::wedge_sign(1 << k, *j) {
                    out.add_signed(j | (1 << k), *i, sign, &df);
                }
            }
        }
        out
    }

    /// A `(p, 0)` multivector viewed in `Ω^{0,0}(T^{p,0})`.
    pub fn from_multivector(p: &Multivector) -> HpResult<MixedForm> {
        p.chart().ensure_complex()?;
        let n = p.chart().n;
        let low = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let mut out = MixedForm::zero(p.chart());
        for (m, f) in p.terms() {
            if m & !low != 0 {
                return Err(HpError::Degree("multivector has antiholomorphic slots".into()));
            }
            out.add_term(0, m, f);
        }
        Ok(out)
    }

    /// `ω ⊗ P` for a `(0, q)`-form and a `(p, 0)` multivector.
    pub fn tensor(omega: &Form, p: &Multivector) -> HpResult<MixedForm> {
        omega.chart().ensure_same(&p.chart())?;
        omega.chart().ensure_complex()?;
        let n = omega.chart().n;
        let low = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let mut out = MixedForm::zero(p.chart());
        for (a, f) in omega.terms() {
            if a & low != 0 {
                return Err(HpError::Degree("form has holomorphic slots".into()));
            }
            for (b, g) in p.terms() {
                if b & !low != 0 {
                    return Err(HpError::Degree("multivector has antiholomorphic slots".into()));
                }
                out.add_term(a >> n, b, &(f * g));
            }
        }
        Ok(out)
    }

    /// The `(0, q)`-form part attached to the frame element `∂z_I`.
    pub fn form_part(&self, i: u32) -> Form {
        let n = self.chart.n;
        Form::from_terms(
            self.chart,
            self.terms.iter().filter(|((_, ii), _)| *ii == i).map(|((j, _), f)| (j << n, f.clone())),
        )
    }

    /// Components as `(J, I, coeff)` with 1-based indices, in canonical order.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>, &PolyGQ)> {
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|(j, i)| {
            (mask::degree(*j) + mask::degree(*i), mask::canonical_key(*j), mask::canonical_key(*i))
        });
        keys.into_iter()
            .map(|(j, i)| {
                (mask::bits(j).map(|s| s + 1).collect(), mask::bits(i).map(|s| s + 1).collect(), &self.terms[&(j, i)])
            })
            .collect()
    }

    pub fn from_components(chart: Chart, comps: &[(Vec<usize>, Vec<usize>, PolyGQ)]) -> HpResult<MixedForm> {
        chart.ensure_complex()?;
        let n = chart.n;
        let mut out = MixedForm::zero(chart);
        for (j, i, f) in comps {
            f.chart().ensure_same(&chart)?;
            if j.iter().chain(i).any(|&x| x == 0 || x > n) {
                return Err(HpError::Shape(format!("index outside 1..{}", n)));
            }
            let omega = Form::frame(chart, &j.iter().map(|b| n + b - 1).collect::<Vec<_>>());
            let p = Multivector::frame(chart, &i.iter().map(|a| a - 1).collect::<Vec<_>>());
            out = out.add(&MixedForm::tensor(&omega.mul_poly(f), &p)?);
        }
        Ok(out)
    }
}

impl fmt::Display for MixedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components()
            .into_iter()
            .map(|(j, i, c)| {
                let js: Vec<String> = j.iter().map(|b| format!("dzb{}", b)).collect();
                let is: Vec<String> = i.iter().map(|a| format!("d/dz{}", a)).collect();
                let left = if js.is_empty() { "1".to_string() } else { js.join("^") };
                let right = if is.is_empty() { "1".to_string() } else { is.join("^") };
                format!("({}) {} (x) {}", c, left, right)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
