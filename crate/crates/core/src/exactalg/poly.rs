use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::chart::{Chart, ChartKind};
use super::gq::GQ;
use crate::error::{HpError, HpResult};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    deg: u32,
    exps: Vec<u16>,
}

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono { deg: 0, exps: vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { deg, exps }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        Mono { deg: 1, exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        Mono { deg: self.deg + o.deg, exps }
    }

    /// Degree in the variable block `[lo, hi)`.
    pub fn block_degree(&self, lo: usize, hi: usize) -> u32 {
        self.exps[lo..hi].iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| self.exps.cmp(&o.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All monomials in `nvars` variables of exact total degree `d`, ascending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if i + 1 == nvars {
            cur.push(left as u16);
            out.push(Mono::from_exps(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Mono::one(0));
        }
        return out;
    }
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Polynomial over the Gaussian rationals in the variables of a chart.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyGQ {
    chart: Chart,
    terms: BTreeMap<Mono, GQ>,
}

impl PolyGQ {
    pub fn zero(chart: Chart) -> Self {
        PolyGQ { chart, terms: BTreeMap::new() }
    }

    pub fn constant(chart: Chart, c: GQ) -> Self {
        let mut p = PolyGQ::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Mono::one(chart.nvars()), c);
        }
        p
    }

    pub fn one(chart: Chart) -> Self {
        PolyGQ::constant(chart, GQ::one())
    }

    pub fn var(chart: Chart, v: usize) -> Self {
        assert!(v < chart.nvars());
        let mut p = PolyGQ::zero(chart);
        p.terms.insert(Mono::var(chart.nvars(), v), GQ::one());
        p
    }

    pub fn monomial(chart: Chart, m: Mono, c: GQ) -> Self {
        assert_eq!(m.exps.len(), chart.nvars());
        let mut p = PolyGQ::zero(chart);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, GQ)>>(chart: Chart, it: I) -> Self {
        let mut p = PolyGQ::zero(chart);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> GQ {
        self.terms.get(m).cloned().unwrap_or_else(GQ::zero)
    }

    pub fn constant_term(&self) -> GQ {
        self.coeff(&Mono::one(self.chart.nvars()))
    }

    pub fn add_term(&mut self, m: Mono, c: &GQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &PolyGQ) {
        assert_eq!(self.chart, o.chart, "chart mismatch in polynomial addition");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, o: &PolyGQ) {
        assert_eq!(self.chart, o.chart, "chart mismatch in polynomial subtraction");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += c * o`
    pub fn add_scaled(&mut self, c: &GQ, o: &PolyGQ) {
        assert_eq!(self.chart, o.chart, "chart mismatch in polynomial addition");
        if c.is_zero() {
            return;
        }
        for (m, d) in &o.terms {
            self.add_term(m.clone(), &(c * d));
        }
    }

    pub fn scale(&self, c: &GQ) -> PolyGQ {
        if c.is_zero() {
            return PolyGQ::zero(self.chart);
        }
        PolyGQ { chart: self.chart, terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect() }
    }

    pub fn pow(&self, e: u32) -> PolyGQ {
        let mut acc = PolyGQ::one(self.chart);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable index `v`.
    pub fn diff(&self, v: usize) -> PolyGQ {
        assert!(v < self.chart.nvars(), "variable out of range");
        let mut out = PolyGQ::zero(self.chart);
        for (m, c) in &self.terms {
            let e = m.exps[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[v] -= 1;
            out.terms.insert(Mono { deg: m.deg - 1, exps }, c * &GQ::int(e as i64));
        }
        out
    }

    /// Checked partial derivative by variable name.
    pub fn diff_named(&self, var: &str) -> HpResult<PolyGQ> {
        let v = self.chart.var_index(var)?;
        Ok(self.diff(v))
    }

    /// Complex conjugation on a complex chart: swaps `z_k` and `zb_k`, conjugates coefficients.
    pub fn conj(&self) -> HpResult<PolyGQ> {
        if !self.chart.is_complex() {
            return Err(HpError::Chart("conjugation requires a complex chart".into()));
        }
        let n = self.chart.n;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps[n..].to_vec();
                exps.extend_from_slice(&m.exps[..n]);
                (Mono { deg: m.deg, exps }, c.conj())
            })
            .collect();
        Ok(PolyGQ { chart: self.chart, terms })
    }

    /// Complex conjugation of the function: `conj` on complex charts, coefficient-wise on real charts.
    pub fn conj_function(&self) -> PolyGQ {
        match self.chart.kind {
            ChartKind::Complex => self.conj().expect("complex chart"),
            ChartKind::Real => {
                PolyGQ { chart: self.chart, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
            }
        }
    }

    /// Real-valued as a function of the underlying real coordinates.
    pub fn is_real_function(&self) -> bool {
        self.conj_function() == *self
    }

    /// Real and imaginary parts as functions.
    pub fn re_im(&self) -> (PolyGQ, PolyGQ) {
        let c = self.conj_function();
        let half = GQ::frac(1, 2);
        let re = (self + &c).scale(&half);
        let im = (self - &c).scale(&GQ::complex((0, 1), (-1, 2)));
        (re, im)
    }

    /// No antiholomorphic variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        let n = self.chart.n;
        self.terms.keys().all(|m| m.exps[n..].iter().all(|&e| e == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.deg == d)
    }

    /// Substitute `images[v]` for each variable `v`; the images live on `target`.
    pub fn substitute(&self, images: &[PolyGQ], target: Chart) -> PolyGQ {
        assert_eq!(images.len(), self.chart.nvars());
        let mut powers: Vec<Vec<PolyGQ>> = images.iter().map(|p| vec![PolyGQ::one(target), p.clone()]).collect();
        let mut out = PolyGQ::zero(target);
        for (m, c) in &self.terms {
            let mut t = PolyGQ::constant(target, c.clone());
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e as usize];
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Rewrite in the partner chart: `z = x + iy`, `zb = x - iy`, or the inverse.
    pub fn convert_chart(&self, target: Chart) -> HpResult<PolyGQ> {
        if target.n != self.chart.n {
            return Err(HpError::Chart(format!("dimension mismatch: {} vs {}", self.chart, target)));
        }
        if target == self.chart {
            return Ok(self.clone());
        }
        Ok(self.substitute(&chart_images(self.chart), target))
    }

    /// Evaluate at a point given by values of all chart variables.
    pub fn eval(&self, point: &[GQ]) -> HpResult<GQ> {
        if point.len() != self.chart.nvars() {
            return Err(HpError::Chart(format!(
                "point has {} coordinates, chart {} needs {}",
                point.len(),
                self.chart,
                self.chart.nvars()
            )));
        }
        let mut acc = GQ::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[v];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Keep only terms whose monomial satisfies `keep`.
    pub fn filter_terms<F: Fn(&Mono) -> bool>(&self, keep: F) -> PolyGQ {
        PolyGQ {
            chart: self.chart,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

/// Images of the source-chart variables in the partner chart.
fn chart_images(source: Chart) -> Vec<PolyGQ> {
    let n = source.n;
    let target = source.partner();
    let mut out = Vec::with_capacity(2 * n);
    match source.kind {
        ChartKind::Complex => {
            // z_k = x_k + i y_k, zb_k = x_k - i y_k
            for sign in [1i64, -1] {
                for k in 0..n {
                    let mut p = PolyGQ::var(target, k);
                    p.add_term(Mono::var(2 * n, n + k), &GQ::complex((0, 1), (sign, 1)));
                    out.push(p);
                }
            }
        }
        ChartKind::Real => {
            // x_k = (z_k + zb_k)/2, y_k = (z_k - zb_k)/(2i)
            for k in 0..n {
                let mut p = PolyGQ::zero(target);
                p.add_term(Mono::var(2 * n, k), &GQ::frac(1, 2));
                p.add_term(Mono::var(2 * n, n + k), &GQ::frac(1, 2));
                out.push(p);
            }
            for k in 0..n {
                let mut p = PolyGQ::zero(target);
                p.add_term(Mono::var(2 * n, k), &GQ::complex((0, 1), (-1, 2)));
                p.add_term(Mono::var(2 * n, n + k), &GQ::complex((0, 1), (1, 2)));
                out.push(p);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

/// Checked ring operation on two polynomials of the same chart.
pub fn poly_arith(op: ArithOp, a: &PolyGQ, b: &PolyGQ) -> HpResult<PolyGQ> {
    a.chart.ensure_same(&b.chart)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Mul => a * b,
    })
}

impl<'a> Add<&'a PolyGQ> for &'a PolyGQ {
    type Output = PolyGQ;
    fn add(self, o: &PolyGQ) -> PolyGQ {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl<'a> Sub<&'a PolyGQ> for &'a PolyGQ {
    type Output = PolyGQ;
    fn sub(self, o: &PolyGQ) -> PolyGQ {
        let mut r = self.clone();
        r.sub_assign_ref(o);
        r
    }
}

impl Neg for &PolyGQ {
    type Output = PolyGQ;
    fn neg(self) -> PolyGQ {
        PolyGQ { chart: self.chart, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a PolyGQ> for &'a PolyGQ {
    type Output = PolyGQ;
    fn mul(self, o: &PolyGQ) -> PolyGQ {
        assert_eq!(self.chart, o.chart, "chart mismatch in polynomial product");
        let mut out = PolyGQ::zero(self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Add for PolyGQ {
    type Output = PolyGQ;
    fn add(self, o: PolyGQ) -> PolyGQ {
        &self + &o
    }
}

impl Sub for PolyGQ {
    type Output = PolyGQ;
    fn sub(self, o: PolyGQ) -> PolyGQ {
        &self - &o
    }
}

impl Mul for PolyGQ {
    type Output = PolyGQ;
    fn mul(self, o: PolyGQ) -> PolyGQ {
        &self * &o
    }
}

impl Neg for PolyGQ {
    type Output = PolyGQ;
    fn neg(self) -> PolyGQ {
        -&self
    }
}

pub(crate) fn fmt_mono(chart: &Chart, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.var_name(v)),
            _ => parts.push(format!("{}^{}", chart.var_name(v), e)),
        }
    }
    parts.join(" ")
}

/// Canonical print, terms in descending graded-lex order.
impl fmt::Display for PolyGQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = fmt_mono(&self.chart, m);
            // pull the sign out of negative reals and negative imaginaries
            let negative = (c.is_real() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative());
            let mag = if negative { -c } else { c.clone() };
            let coeff = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                String::new()
            } else {
                format!("{} ", mag)
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}{}", coeff, mono)?;
            first = false;
        }
        Ok(())
    }
}
