use std::collections::BTreeMap;

use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, PolyGQ, GQ};
use crate::multivec::{mask, schouten, Form, Multivector};

/// Square matrix of polynomials.
pub type PolyMatrix = Vec<Vec<PolyGQ>>;

pub fn poly_zeros(chart: Chart, rows: usize, cols: usize) -> PolyMatrix {
    vec![vec![PolyGQ::zero(chart); cols]; rows]
}

pub fn poly_identity(chart: Chart, n: usize) -> PolyMatrix {
    let mut m = poly_zeros(chart, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = PolyGQ::one(chart);
    }
    m
}

pub fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let chart = a[0][0].chart();
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    let mut out = poly_zeros(chart, r, c);
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[l][j].is_zero() {
                    out[i][j].add_assign_ref(&(&a[i][l] * &b[l][j]));
                }
            }
        }
    }
    out
}

pub fn poly_transpose(a: &PolyMatrix) -> PolyMatrix {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Evaluate every entry at a point.
pub fn poly_eval(a: &PolyMatrix, point: &[GQ]) -> HpResult<Vec<Vec<GQ>>> {
    a.iter().map(|row| row.iter().map(|f| f.eval(point)).collect()).collect()
}

/// Vector field with the given frame components.
pub fn vector_from(chart: Chart, comps: &[PolyGQ]) -> Multivector {
    Multivector::from_terms(chart, comps.iter().enumerate().map(|(s, f)| (1u32 << s, f.clone())))
}

/// 1-form with the given coframe components.
pub fn form_from(chart: Chart, comps: &[PolyGQ]) -> Form {
    Form::from_terms(chart, comps.iter().enumerate().map(|(s, f)| (1u32 << s, f.clone())))
}

fn vector_comps(x: &Multivector) -> Vec<PolyGQ> {
    (0..x.chart().nvars()).map(|s| x.coeff(1 << s)).collect()
}

fn form_comps(a: &Form) -> Vec<PolyGQ> {
    (0..a.chart().nvars()).map(|s| a.coeff(1 << s)).collect()
}

/// Bundle endomorphism of the tangent bundle; column `j` is the image of `∂_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoField {
    chart: Chart,
    matrix: PolyMatrix,
}

impl EndoField {
    pub fn new(chart: Chart, matrix: PolyMatrix) -> HpResult<Self> {
        let side = chart.nvars();
        if matrix.len() != side || matrix.iter().any(|r| r.len() != side) {
            return Err(HpError::Shape(format!("endomorphism must be {}x{}", side, side)));
        }
        for f in matrix.iter().flatten() {
            f.chart().ensure_same(&chart)?;
        }
        Ok(EndoField { chart, matrix })
    }

    pub fn identity(chart: Chart) -> Self {
        EndoField { chart, matrix: poly_identity(chart, chart.nvars()) }
    }

    /// `J∂x_k = ∂y_k`, `J∂y_k = -∂x_k` on a real chart.
    pub fn standard_j(chart: Chart) -> HpResult<Self> {
        chart.ensure_real()?;
        let n = chart.n;
        let mut m = poly_zeros(chart, 2 * n, 2 * n);
        for k in 0..n {
            m[n + k][k] = PolyGQ::one(chart);
            m[k][n + k] = PolyGQ::constant(chart, GQ::int(-1));
        }
        Ok(EndoField { chart, matrix: m })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `N X` for a vector field.
    pub fn apply(&self, x: &Multivector) -> Multivector {
        let c = vector_comps(x);
        let out: Vec<PolyGQ> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = PolyGQ::zero(self.chart);
                for (m, f) in row.iter().zip(&c) {
                    if !m.is_zero() && !f.is_zero() {
                        acc.add_assign_ref(&(m * f));
                    }
                }
                acc
            })
            .collect();
        vector_from(self.chart, &out)
    }

    /// `N* α` for a 1-form, `(N*α)(V) = α(NV)`.
    pub fn dual_apply(&self, alpha: &Form) -> Form {
        let a = form_comps(alpha);
        let side = self.chart.nvars();
        let out: Vec<PolyGQ> = (0..side)
            .map(|j| {
                let mut acc = PolyGQ::zero(self.chart);
                for (i, ai) in a.iter().enumerate() {
                    if !ai.is_zero() && !self.matrix[i][j].is_zero() {
                        acc.add_assign_ref(&(ai * &self.matrix[i][j]));
                    }
                }
                acc
            })
            .collect();
        form_from(self.chart, &out)
    }

    pub fn compose(&self, o: &EndoField) -> EndoField {
        EndoField { chart: self.chart, matrix: poly_matmul(&self.matrix, &o.matrix) }
    }

    /// `N² = -1`.
    pub fn is_almost_complex(&self) -> bool {
        let sq = poly_matmul(&self.matrix, &self.matrix);
        let minus = poly_identity(self.chart, self.chart.nvars());
        sq.iter().flatten().zip(minus.iter().flatten()).all(|(a, b)| *a == -b)
    }
}

/// A bundle map `T* → T` given by its matrix; column `j` is the image of `e^j`.
///
/// Bivectors give skew maps, but compositions like `π♯∘N*` need not be.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SharpMap {
    chart: Chart,
    matrix: PolyMatrix,
}

impl SharpMap {
    pub fn of_bivector(pi: &Multivector) -> HpResult<Self> {
        if !pi.is_homogeneous_of(2) {
            return Err(HpError::Degree("sharp map needs a bivector".into()));
        }
        let chart = pi.chart();
        let side = chart.nvars();
        let mut m = poly_zeros(chart, side, side);
        for (key, f) in pi.terms() {
            let v: Vec<usize> = mask::bits(key).collect();
            let (a, b) = (v[0], v[1]);
            // ι_{e^a}(f ∂_a∧∂_b) = f ∂_b
            m[b][a] = f.clone();
            m[a][b] = -f;
        }
        Ok(SharpMap { chart, matrix: m })
    }

    pub fn from_matrix(chart: Chart, matrix: PolyMatrix) -> Self {
        SharpMap { chart, matrix }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn apply(&self, alpha: &Form) -> Multivector {
        let a = form_comps(alpha);
        let out: Vec<PolyGQ> = self
            .matrix
            .iter()
            .map(|row| {
                let mut acc = PolyGQ::zero(self.chart);
                for (m, f) in row.iter().zip(&a) {
                    if !m.is_zero() && !f.is_zero() {
                        acc.add_assign_ref(&(m * f));
                    }
                }
                acc
            })
            .collect();
        vector_from(self.chart, &out)
    }

    /// `⟨β, ♯α⟩`.
    pub fn eval(&self, alpha: &Form, beta: &Form) -> PolyGQ {
        crate::multivec::pairing(beta, &self.apply(alpha))
    }

    /// `♯ ∘ N*`.
    pub fn after_dual(&self, n: &EndoField) -> SharpMap {
        SharpMap { chart: self.chart, matrix: poly_matmul(&self.matrix, &poly_transpose(&n.matrix)) }
    }

    /// `N ∘ ♯`.
    pub fn before(&self, n: &EndoField) -> SharpMap {
        SharpMap { chart: self.chart, matrix: poly_matmul(&n.matrix, &self.matrix) }
    }

    /// The bivector with this sharp map, when the matrix is skew.
    pub fn to_bivector(&self) -> HpResult<Multivector> {
        let side = self.chart.nvars();
        let mut out = Multivector::zero(self.chart);
        for a in 0..side {
            if !self.matrix[a][a].is_zero() {
                return Err(HpError::Structure("sharp matrix is not skew".into()));
            }
            for b in a + 1..side {
                if self.matrix[a][b] != -&self.matrix[b][a] {
                    return Err(HpError::Structure("sharp matrix is not skew".into()));
                }
                out.add_term((1 << a) | (1 << b), &self.matrix[b][a]);
            }
        }
        Ok(out)
    }
}

/// Koszul bracket of 1-forms for an arbitrary sharp map:
/// `ℒ_{♯α}β − ℒ_{♯β}α − d(⟨β, ♯α⟩)`.
pub fn koszul_with(sharp: &SharpMap, alpha: &Form, beta: &Form) -> HpResult<Form> {
    alpha.chart().ensure_same(&sharp.chart)?;
    beta.chart().ensure_same(&sharp.chart)?;
    for f in [alpha, beta] {
        if !f.is_homogeneous_of(1) {
            return Err(HpError::Degree("Koszul bracket takes 1-forms".into()));
        }
    }
    let la = crate::multivec::lie_derivative(&sharp.apply(alpha), beta)?;
    let lb = crate::multivec::lie_derivative(&sharp.apply(beta), alpha)?;
    Ok(la.sub(&lb).sub(&Form::d_function(&sharp.eval(alpha, beta))))
}

/// Nijenhuis torsion `𝒩_N` stored on frame pairs `a < b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionTensor {
    chart: Chart,
    values: BTreeMap<(usize, usize), Multivector>,
}

impl TorsionTensor {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// `𝒩(∂_a, ∂_b)`.
    pub fn value(&self, a: usize, b: usize) -> Multivector {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => {
                self.values.get(&(a, b)).cloned().unwrap_or_else(|| Multivector::zero(self.chart))
            }
            std::cmp::Ordering::Greater => self.value(b, a).neg(),
            std::cmp::Ordering::Equal => Multivector::zero(self.chart),
        }
    }

    /// Nonzero entries `(a, b, c, value)` for `𝒩(∂_a, ∂_b) = Σ_c value ∂_c`, 0-based.
    pub fn entries(&self) -> Vec<(usize, usize, usize, &PolyGQ)> {
        let mut out = Vec::new();
        for ((a, b), v) in &self.values {
            for (m, f) in v.terms() {
                out.push((*a, *b, m.trailing_zeros() as usize, f));
            }
        }
        out
    }
}

/// `𝒩_N(V,W) = [NV,NW] − N([NV,W] + [V,NW] − N[V,W])` on the coordinate frame.
pub fn nijenhuis_torsion(n: &EndoField) -> TorsionTensor {
    let chart = n.chart;
    let side = chart.nvars();
    let frame: Vec<Multivector> = (0..side).map(|s| Multivector::frame(chart, &[s])).collect();
    let images: Vec<Multivector> = frame.iter().map(|x| n.apply(x)).collect();
    let br = |x: &Multivector, y: &Multivector| schouten(x, y).expect("same chart");
    let mut values = BTreeMap::new();
    for a in 0..side {
        for b in a + 1..side {
            let inner =
                br(&images[a], &frame[b]).add(&br(&frame[a], &images[b])).sub(&n.apply(&br(&frame[a], &frame[b])));
            let t = br(&images[a], &images[b]).sub(&n.apply(&inner));
            if !t.is_zero() {
                values.insert((a, b), t);
            }
        }
    }
    TorsionTensor { chart, values }
}
