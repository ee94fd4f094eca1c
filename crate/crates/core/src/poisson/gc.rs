use serde::Serialize;

use super::endo::{poly_identity, poly_matmul, poly_transpose, poly_zeros, EndoField, PolyMatrix, SharpMap};
use super::{decompose, is_holomorphic_poisson};
use crate::error::{HpError, HpResult};
use crate::exactalg::{matrix, Chart, PolyGQ, GQ};
use crate::multivec::{lie_derivative, pairing, schouten, sharp, Form, Multivector};

/// Section `X + ξ` of `T ⊕ T*`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GCSection {
    pub vec: Multivector,
    pub form: Form,
}

impl GCSection {
    pub fn new(vec: Multivector, form: Form) -> HpResult<Self> {
        vec.chart().ensure_same(&form.chart())?;
        if !vec.is_homogeneous_of(1) || !form.is_homogeneous_of(1) {
            return Err(HpError::Degree("sections of T + T* have degree 1 parts".into()));
        }
        Ok(GCSection { vec, form })
    }

    pub fn chart(&self) -> Chart {
        self.vec.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, o: &GCSection) -> GCSection {
        GCSection { vec: self.vec.add(&o.vec), form: self.form.add(&o.form) }
    }

    pub fn scale(&self, c: &GQ) -> GCSection {
        GCSection { vec: self.vec.scale(c), form: self.form.scale(c) }
    }

    pub fn convert_chart(&self, target: Chart) -> HpResult<GCSection> {
        Ok(GCSection { vec: self.vec.convert_chart(target)?, form: self.form.convert_chart(target)? })
    }
}

/// `⟦X+ξ, Y+η⟧ = [X,Y] + ℒ_Xη − ℒ_Yξ + ½ d(ξ(Y) − η(X))`.
pub fn courant_bracket(e1: &GCSection, e2: &GCSection) -> HpResult<GCSection> {
    e1.chart().ensure_same(&e2.chart())?;
    let vec = schouten(&e1.vec, &e2.vec)?;
    let mut form = lie_derivative(&e1.vec, &e2.form)?.sub(&lie_derivative(&e2.vec, &e1.form)?);
    let f = &pairing(&e1.form, &e2.vec) - &pairing(&e2.form, &e1.vec);
    form = form.add(&Form::d_function(&f).scale(&GQ::frac(1, 2)));
    Ok(GCSection { vec, form })
}

/// Which multiple of `π_I` sits in the off-diagonal block.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GcFactor {
    /// `𝒥_π` with `π_I♯`.
    Pngc,
    /// `𝒥_{4π}` with `4π_I♯`, whose `−i` eigenbundle is `L_{4π}`.
    Dirac,
}

impl GcFactor {
    pub fn value(self) -> i64 {
        match self {
            GcFactor::Pngc => 1,
            GcFactor::Dirac => crate::factors::DIRAC,
        }
    }
}

/// `[[J, c·π_I♯], [0, −J*]]` on `T ⊕ T*` of the real chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GcEndomorphism {
    chart: Chart,
    factor: GcFactor,
    matrix: PolyMatrix,
}

pub fn gc_endomorphism(pi: &Multivector, factor: GcFactor) -> HpResult<GcEndomorphism> {
    if !is_holomorphic_poisson(pi)?.is_poisson() {
        return Err(HpError::Structure("bivector is not holomorphic Poisson".into()));
    }
    let pair = decompose(pi)?;
    let real = pair.pi_i.chart();
    let side = real.nvars();
    let j = EndoField::standard_j(real)?;
    let s = SharpMap::of_bivector(&pair.pi_i)?;
    let c = GQ::int(factor.value());
    let jt = poly_transpose(j.matrix());
    let mut m = poly_zeros(real, 2 * side, 2 * side);
    for r in 0..side {
        for col in 0..side {
            m[r][col] = j.matrix()[r][col].clone();
            m[r][side + col] = s.matrix()[r][col].scale(&c);
            m[side + r][side + col] = -&jt[r][col];
        }
    }
    Ok(GcEndomorphism { chart: real, factor, matrix: m })
}

impl GcEndomorphism {
    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn factor(&self) -> GcFactor {
        self.factor
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        let sq = poly_matmul(&self.matrix, &self.matrix);
        let id = poly_identity(self.chart, self.matrix.len());
        sq.iter().flatten().zip(id.iter().flatten()).all(|(a, b)| *a == -b)
    }

    /// Apply to a section given on either chart of the same dimension; the result is on the real chart.
    pub fn apply(&self, e: &GCSection) -> HpResult<GCSection> {
        let e = e.convert_chart(self.chart)?;
        let side = self.chart.nvars();
        let mut input = Vec::with_capacity(2 * side);
        input.extend((0..side).map(|s| e.vec.coeff(1 << s)));
        input.extend((0..side).map(|s| e.form.coeff(1 << s)));
        let out: Vec<PolyGQ> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = PolyGQ::zero(self.chart);
                for (m, f) in row.iter().zip(&input) {
                    if !m.is_zero() && !f.is_zero() {
                        acc.add_assign_ref(&(m * f));
                    }
                }
                acc
            })
            .collect();
        Ok(GCSection {
            vec: super::endo::vector_from(self.chart, &out[..side]),
            form: super::endo::form_from(self.chart, &out[side..]),
        })
    }

    /// `𝒥 e = λ e`.
    pub fn is_eigen(&self, e: &GCSection, lambda: &GQ) -> HpResult<bool> {
        let real = e.convert_chart(self.chart)?;
        Ok(self.apply(e)? == real.scale(lambda))
    }

    /// Dimension of the `−i` eigenspace at a real point.
    pub fn minus_i_eigenspace_dim(&self, point: &[GQ]) -> HpResult<usize> {
        if point.len() != self.chart.nvars() {
            return Err(HpError::Chart(format!("point needs {} coordinates", self.chart.nvars())));
        }
        let mut m = super::endo::poly_eval(&self.matrix, point)?;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &GQ::i();
        }
        Ok(m.len() - matrix::rank(&m))
    }
}

/// `(X^{0,1} + π♯ξ^{1,0}, ξ^{1,0})` on the complex chart.
pub fn dirac_section(pi: &Multivector, x01: &Multivector, xi10: &Form) -> HpResult<GCSection> {
    pi.chart().ensure_complex()?;
    if !x01.is_zero() && !x01.is_type(0, 1) {
        return Err(HpError::Degree("vector part must be of type (0,1)".into()));
    }
    if !xi10.is_zero() && !xi10.is_type(1, 0) {
        return Err(HpError::Degree("form part must be of type (1,0)".into()));
    }
    let v = if xi10.is_zero() { x01.clone() } else { x01.add(&sharp(pi, xi10)?) };
    GCSection::new(v, xi10.clone())
}

/// Membership in `L_{4π}` for a section on the complex chart.
pub fn in_dirac(pi: &Multivector, e: &GCSection) -> HpResult<bool> {
    pi.chart().ensure_same(&e.chart())?;
    pi.chart().ensure_complex()?;
    if !e.form.is_zero() && !e.form.is_type(1, 0) {
        return Ok(false);
    }
    let rest = if e.form.is_zero() { e.vec.clone() } else { e.vec.sub(&sharp(pi, &e.form)?) };
    Ok(rest.is_zero() || rest.is_type(0, 1))
}
