//! Finite-dimensional Lie algebras, their Lie–Poisson structures, and the
//! cotangent algebroid of a holomorphic Poisson structure.

use serde::Serialize;

use super::section::Section;
use super::{deform_by, realify_algebroid, AlgebroidChart, EndoOnAlgebroid};
use crate::error::{HpError, HpResult};
use crate::exactalg::{Chart, PolyGQ, GQ};
use crate::factors;
use crate::multivec::{sharp, Form, Multivector};
use crate::poisson::{decompose, is_holomorphic_poisson, koszul_bracket, poisson_bracket};

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`, with an optional
/// complex structure `j` (column `k` is `j e_k`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebraData {
    rank: usize,
    structure: Vec<Vec<Vec<GQ>>>,
    j: Option<Vec<Vec<GQ>>>,
}

impl LieAlgebraData {
    /// From triples `(i, j, k, c)` meaning `[e_i, e_j] ∋ c e_k`; antisymmetry is implied.
    pub fn from_triples(rank: usize, triples: &[(usize, usize, usize, GQ)]) -> HpResult<Self> {
        let mut structure = vec![vec![vec![GQ::zero(); rank]; rank]; rank];
        for (i, j, k, c) in triples {
            let (i, j, k) = (*i, *j, *k);
            if i >= rank || j >= rank || k >= rank {
                return Err(HpError::Shape(format!("index out of range in triple ({i}, {j}, {k})")));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(HpError::Shape(format!("[e_{i}, e_{i}] must vanish")));
                }
                continue;
            }
            structure[i][j][k] += c;
            structure[j][i][k] -= c;
        }
        Ok(LieAlgebraData { rank, structure, j: None })
    }

    pub fn from_constants(structure: Vec<Vec<Vec<GQ>>>) -> HpResult<Self> {
        let rank = structure.len();
        if structure.iter().any(|row| row.len() != rank || row.iter().any(|v| v.len() != rank)) {
            return Err(HpError::Shape("structure constants must be r x r x r".into()));
        }
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    if structure[i][j][k] != -structure[j][i][k].clone() {
                        return Err(HpError::Shape(format!("constants not antisymmetric at ({i}, {j})")));
                    }
                }
            }
        }
        Ok(LieAlgebraData { rank, structure, j: None })
    }

    pub fn with_j(mut self, j: Vec<Vec<GQ>>) -> HpResult<Self> {
        if j.len() != self.rank || j.iter().any(|row| row.len() != self.rank) {
            return Err(HpError::Shape("j must be r x r".into()));
        }
        self.j = Some(j);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn constant(&self, i: usize, j: usize) -> &[GQ] {
        &self.structure[i][j]
    }

    pub fn j(&self) -> Option<&[Vec<GQ>]> {
        self.j.as_deref()
    }

    pub fn bracket(&self, v: &[GQ], w: &[GQ]) -> Vec<GQ> {
        let mut out = vec![GQ::zero(); self.rank];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !c.is_zero() {
                        *o += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<GQ> {
        let mut v = vec![GQ::zero(); self.rank];
        v[i] = GQ::one();
        v
    }

    pub fn jacobi_holds(&self) -> bool {
        let r = self.rank;
        (0..r).all(|i| {
            (i + 1..r).all(|j| {
                (j + 1..r).all(|k| {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let b = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    a.iter().zip(&b).zip(&c).all(|((x, y), z)| (&(x + y) + z).is_zero())
                })
            })
        })
    }

    fn apply_j(&self, j: &[Vec<GQ>], v: &[GQ]) -> Vec<GQ> {
        j.iter()
            .map(|row| {
                let mut acc = GQ::zero();
                for (m, x) in row.iter().zip(v) {
                    acc += &(m * x);
                }
                acc
            })
            .collect()
    }

    /// `j[V,W] = [jV,W]` on all frame pairs; `false` without a `j`.
    pub fn is_complex_linear(&self) -> bool {
        let Some(j) = &self.j else { return false };
        (0..self.rank).all(|a| {
            (0..self.rank).all(|b| {
                let (ea, eb) = (self.unit(a), self.unit(b));
                self.apply_j(j, &self.bracket(&ea, &eb)) == self.bracket(&self.apply_j(j, &ea), &eb)
            })
        })
    }

    /// Underlying real Lie algebra on the frame `(e_1..e_r, je_1..je_r)` with the standard `j`.
    pub fn realified(&self) -> LieAlgebraData {
        let r = self.rank;
        let mut s = vec![vec![vec![GQ::zero(); 2 * r]; 2 * r]; 2 * r];
        for p in 0..r {
            for q in 0..r {
                for (k, c) in self.structure[p][q].iter().enumerate() {
                    let re = GQ::new(c.re.clone(), Default::default());
                    let im = GQ::new(c.im.clone(), Default::default());
                    // [e_p,e_q] = Σ re e_k + im je_k, j-twisted: Σ −im e_k + re je_k
                    s[p][q][k] = re.clone();
                    s[p][q][r + k] = im.clone();
                    s[r + p][r + q][k] = -re.clone();
                    s[r + p][r + q][r + k] = -im.clone();
                    for (a, b) in [(r + p, q), (p, r + q)] {
                        s[a][b][k] = -im.clone();
                        s[a][b][r + k] = re.clone();
                    }
                }
            }
        }
        let mut j = vec![vec![GQ::zero(); 2 * r]; 2 * r];
        for k in 0..r {
            j[r + k][k] = GQ::one();
            j[k][r + k] = GQ::int(-1);
        }
        LieAlgebraData { rank: 2 * r, structure: s, j: Some(j) }
    }

    /// Constant algebroid with zero anchor over the point chart of the given kind.
    pub fn to_algebroid(&self, chart: Chart) -> HpResult<AlgebroidChart> {
        if chart.n != 0 {
            return Err(HpError::Chart("a Lie algebra lives over the point chart".into()));
        }
        let anchor = vec![Multivector::zero(chart); self.rank];
        let structure = self
            .structure
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|c| PolyGQ::constant(chart, c.clone())).collect()).collect())
            .collect();
        AlgebroidChart::new(chart, anchor, structure)
    }

    fn is_standard_j(&self) -> bool {
        let Some(j) = &self.j else { return false };
        self.rank.is_multiple_of(2) && *j == self.realified_j()
    }

    fn realified_j(&self) -> Vec<Vec<GQ>> {
        let m = self.rank / 2;
        let mut j = vec![vec![GQ::zero(); self.rank]; self.rank];
        for k in 0..m {
            j[m + k][k] = GQ::one();
            j[k][m + k] = GQ::int(-1);
        }
        j
    }

    /// The complex Lie algebra `(g, j)` on the frame `e_1..e_m`.
    fn complex_form(&self) -> LieAlgebraData {
        let m = self.rank / 2;
        let mut s = vec![vec![vec![GQ::zero(); m]; m]; m];
        for a in 0..m {
            for b in 0..m {
                for k in 0..m {
                    s[a][b][k] = &self.structure[a][b][k] + &(&GQ::i() * &self.structure[a][b][m + k]);
                }
            }
        }
        LieAlgebraData { rank: m, structure: s, j: None }
    }
}

/// `π = Σ_{i<j} (Σ_k c_ij^k z_k) ∂_{z_i}∧∂_{z_j}` on `complex(r)`.
pub fn lie_poisson(g: &LieAlgebraData) -> HpResult<Multivector> {
    if !g.jacobi_holds() {
        return Err(HpError::Structure("structure constants fail the Jacobi identity".into()));
    }
    let chart = Chart::complex(g.rank);
    let mut pi = Multivector::zero(chart);
    for i in 0..g.rank {
        for j in i + 1..g.rank {
            let mut f = PolyGQ::zero(chart);
            for (k, c) in g.structure[i][j].iter().enumerate() {
                if !c.is_zero() {
                    f.add_assign_ref(&PolyGQ::var(chart, k).scale(c));
                }
            }
            pi.add_term((1 << i) | (1 << j), &f);
        }
    }
    Ok(pi)
}

/// Underlying real algebroid of a complex Lie algebra, rank `2r` over the point.
pub fn realify_liealgebra(g: &LieAlgebraData) -> HpResult<AlgebroidChart> {
    if g.j.is_some() {
        return Err(HpError::Structure("expected complex structure constants without a j".into()));
    }
    if !g.jacobi_holds() {
        return Err(HpError::Structure("structure constants fail the Jacobi identity".into()));
    }
    g.realified().to_algebroid(Chart::real(0))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RealpartsReport {
    /// `{l′_V, l′_W}_{π_R} = ¼ l′_{[V,W]}` on all frame pairs.
    pub real_identity: bool,
    /// `{l′_V, l′_W}_{π_I} = −¼ l′_{[V,W]_j}` on all frame pairs.
    pub imag_identity: bool,
}

impl RealpartsReport {
    pub fn ok(&self) -> bool {
        self.real_identity && self.imag_identity
    }
}

/// Factor identities between a real Lie algebra with complex structure and the
/// real and imaginary parts of the Lie–Poisson structure of its complex form.
///
/// Without a `j` the constants are read as a complex Lie algebra and realified
/// first. The linear coordinates on the real dual are `l′_{e_k} = x_k` and
/// `l′_{je_k} = −y_k`, the transport of `z_k` under `Ψ = 1 − ij*`.
pub fn realparts_liealgebra_check(g: &LieAlgebraData) -> HpResult<RealpartsReport> {
    let h = match g.j {
        None => {
            if !g.jacobi_holds() {
                return Err(HpError::Structure("structure constants fail the Jacobi identity".into()));
            }
            g.realified()
        }
        Some(_) => {
            if !g.is_standard_j() {
                return Err(HpError::Structure("j must be the standard complex structure on the frame".into()));
            }
            if !g.structure.iter().flatten().flatten().all(GQ::is_real) {
                return Err(HpError::Structure("a Lie algebra with j needs real constants".into()));
            }
            g.clone()
        }
    };
    if !h.is_complex_linear() {
        return Err(HpError::Structure("bracket is not complex linear for j".into()));
    }
    let m = h.rank / 2;
    let pair = decompose(&lie_poisson(&h.complex_form())?)?;
    let real = pair.pi_r.chart();
    let coord = |k: usize| {
        if k < m {
            PolyGQ::var(real, k)
        } else {
            -&PolyGQ::var(real, k)
        }
    };
    let l = |v: &[GQ]| {
        let mut f = PolyGQ::zero(real);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                f.add_assign_ref(&coord(k).scale(c));
            }
        }
        f
    };
    let j = h.j.as_ref().expect("realified");
    let re_factor = GQ::frac(factors::LINEAR_REAL.0, factors::LINEAR_REAL.1);
    let im_factor = GQ::frac(factors::LINEAR_IMAG.0, factors::LINEAR_IMAG.1);
    let mut real_identity = true;
    let mut imag_identity = true;
    for a in 0..h.rank {
        for b in a + 1..h.rank {
            let (va, vb) = (h.unit(a), h.unit(b));
            let br = h.bracket(&va, &vb);
            let jva = h.apply_j(j, &va);
            let jvb = h.apply_j(j, &vb);
            let br_j: Vec<GQ> = h
                .bracket(&jva, &vb)
                .iter()
                .zip(h.bracket(&va, &jvb))
                .zip(h.apply_j(j, &br))
                .map(|((x, y), z)| &(x + &y) - &z)
                .collect();
            let (la, lb) = (coord(a), coord(b));
            real_identity &= poisson_bracket(&pair.pi_r, &la, &lb)? == l(&br).scale(&re_factor);
            imag_identity &= poisson_bracket(&pair.pi_i, &la, &lb)? == l(&br_j).scale(&im_factor);
        }
    }
    Ok(RealpartsReport { real_identity, imag_identity })
}

/// Cotangent algebroid of a bivector: frame `dz_1..dz_n` on a complex chart
/// (holomorphic Poisson required) or `dx_1..dy_n` on a real chart (Poisson required).
pub fn cotangent_algebroid(pi: &Multivector) -> HpResult<AlgebroidChart> {
    let chart = pi.chart();
    let slots: Vec<usize> = if chart.is_complex() {
        if !is_holomorphic_poisson(pi)?.is_poisson() {
            return Err(HpError::Structure("bivector is not holomorphic Poisson".into()));
        }
        (0..chart.n).collect()
    } else {
        if !pi.is_homogeneous_of(2) && !pi.is_zero() {
            return Err(HpError::Degree("expected a bivector".into()));
        }
        if !crate::multivec::schouten(pi, pi)?.is_zero() {
            return Err(HpError::Structure("bivector is not Poisson".into()));
        }
        (0..chart.nvars()).collect()
    };
    let frame: Vec<Form> = slots.iter().map(|&s| Form::frame(chart, &[s])).collect();
    let anchor = frame.iter().map(|f| sharp(pi, f)).collect::<HpResult<Vec<_>>>()?;
    let mut err = None;
    let out = AlgebroidChart::from_fn(chart, anchor, |i, j| {
        let k = koszul_bracket(pi, &frame[i], &frame[j]).expect("checked bivector");
        let comps: Section = slots.iter().map(|&s| k.coeff(1 << s)).collect();
        if k.terms().any(|(m, _)| !slots.iter().any(|&s| m == 1 << s)) && err.is_none() {
            err = Some(HpError::Structure("Koszul bracket leaves the holomorphic coframe".into()));
        }
        comps
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CotangentRealpartsReport {
    pub real_anchor: bool,
    pub real_bracket: bool,
    pub imag_anchor: bool,
    pub imag_bracket: bool,
}

impl CotangentRealpartsReport {
    pub fn ok(&self) -> bool {
        self.real_anchor && self.real_bracket && self.imag_anchor && self.imag_bracket
    }
}

/// Rescale the frame, `f_i = s_i e_i`.
fn reframe(a: &AlgebroidChart, signs: &[i64]) -> HpResult<AlgebroidChart> {
    let anchor = a.anchor().iter().zip(signs).map(|(x, &s)| x.scale(&GQ::int(s))).collect();
    AlgebroidChart::from_fn(a.chart(), anchor, |i, j| {
        a.structure(i, j).iter().zip(signs).map(|(f, &s)| f.scale(&GQ::int(signs[i] * signs[j] * s))).collect()
    })
}

fn compare(a: &AlgebroidChart, b: &AlgebroidChart) -> (bool, bool) {
    let anchor = a.anchor() == b.anchor();
    let r = a.rank();
    let bracket = (0..r).all(|i| (i + 1..r).all(|j| a.structure(i, j) == b.structure(i, j)));
    (anchor, bracket)
}

/// The realified cotangent algebroid of `π` against `(T*X)_{4π_R}`, and its
/// `j`-deformation against `(T*X)_{4π_I}`.
///
/// The real algebroid has frame `(dz_k, i dz_k)`. Through `Ψ(dx_k) = dz_k`,
/// `Ψ(dy_k) = −i dz_k` the first comparison uses `dz_k ↔ dx_k`, `i dz_k ↔ −dy_k`;
/// the second uses the negated identification `dz_k ↔ −dx_k`, `i dz_k ↔ dy_k`.
pub fn cotangent_realparts_check(pi: &Multivector) -> HpResult<CotangentRealpartsReport> {
    let a = cotangent_algebroid(pi)?;
    let a_r = realify_algebroid(&a)?;
    let n = pi.chart().n;
    let pair = decompose(pi)?;
    let t_r = cotangent_algebroid(&pair.pi_r.scale(&GQ::int(factors::COTANGENT_REAL)))?;
    let t_i = cotangent_algebroid(&pair.pi_i.scale(&GQ::int(factors::COTANGENT_IMAG)))?;
    let real_signs: Vec<i64> = (0..2 * n).map(|k| if k < n { 1 } else { -1 }).collect();
    let imag_signs: Vec<i64> = real_signs.iter().map(|s| -s).collect();
    let (real_anchor, real_bracket) = compare(&reframe(&a_r, &real_signs)?, &t_r);
    let j = EndoOnAlgebroid::standard_j(&a_r)?;
    let a_i = deform_by(&a_r, &j)?;
    let (imag_anchor, imag_bracket) = compare(&reframe(&a_i, &imag_signs)?, &t_i);
    Ok(CotangentRealpartsReport { real_anchor, real_bracket, imag_anchor, imag_bracket })
}
