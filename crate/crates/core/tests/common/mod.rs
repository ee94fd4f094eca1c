//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use holopoisson::algebroid::{
    canonical_matched_pair, lie_poisson, AlgebroidChart, LieAlgebraData, MatchedPairData, Section,
};
use holopoisson::cohomology::BiCochain;
use holopoisson::exactalg::{monomials_of_degree, parse_poly, Chart, PolyGQ, GQ};
use holopoisson::multivec::{mask, Multivector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(c: Chart, s: &str) -> PolyGQ {
    parse_poly(c, s).unwrap()
}

pub fn mv(c: Chart, slots: &[usize], f: &str) -> Multivector {
    Multivector::frame(c, slots).mul_poly(&p(c, f))
}

pub fn sl2() -> LieAlgebraData {
    LieAlgebraData::from_triples(3, &[(0, 1, 1, GQ::int(2)), (0, 2, 2, GQ::int(-2)), (1, 2, 0, GQ::int(1))]).unwrap()
}

pub fn heisenberg() -> LieAlgebraData {
    LieAlgebraData::from_triples(3, &[(0, 1, 2, GQ::int(1))]).unwrap()
}

/// Holomorphic Poisson structures of the corpus, by name.
pub fn corpus_bivectors() -> Vec<(&'static str, Multivector)> {
    let c = Chart::complex(2);
    vec![
        ("zero", Multivector::zero(c)),
        ("constant_symplectic", mv(c, &[0, 1], "1")),
        ("darboux_n1", mv(c, &[0, 1], "-1")),
        ("quadratic", mv(c, &[0, 1], "z1 z2")),
        ("sl2", lie_poisson(&sl2()).unwrap()),
        ("heisenberg", lie_poisson(&heisenberg()).unwrap()),
    ]
}

pub fn corpus_pairs() -> Vec<(&'static str, MatchedPairData)> {
    corpus_bivectors().into_iter().map(|(n, pi)| (n, canonical_matched_pair(&pi).unwrap())).collect()
}

pub fn random_gq(r: &mut ChaCha8Rng) -> GQ {
    GQ::complex((r.gen_range(-4..=4), r.gen_range(1..=3)), (r.gen_range(-2..=2), r.gen_range(1..=2)))
}

/// Up to `terms` random monomials of degree at most `maxdeg` in the first `nv` variables.
pub fn random_poly_in(r: &mut ChaCha8Rng, c: Chart, nv: usize, maxdeg: u32, terms: usize) -> PolyGQ {
    let mut f = PolyGQ::zero(c);
    for _ in 0..terms {
        let d = r.gen_range(0..=maxdeg);
        let monos = monomials_of_degree(nv, d);
        let small = &monos[r.gen_range(0..monos.len())];
        let mut exps = small.exps().to_vec();
        exps.resize(c.nvars(), 0);
        f.add_term(holopoisson::exactalg::Mono::from_exps(exps), &random_gq(r));
    }
    f
}

pub fn random_poly(r: &mut ChaCha8Rng, c: Chart, maxdeg: u32) -> PolyGQ {
    random_poly_in(r, c, c.nvars(), maxdeg, 3)
}

pub fn random_holomorphic(r: &mut ChaCha8Rng, c: Chart, maxdeg: u32) -> PolyGQ {
    random_poly_in(r, c, c.n, maxdeg, 4)
}

pub fn random_cochain(r: &mut ChaCha8Rng, mp: &MatchedPairData, k: usize, l: usize) -> BiCochain {
    let c = mp.a.chart();
    let mut terms = Vec::new();
    for s in mask::subsets_of_size(mp.a.rank(), k) {
        for t in mask::subsets_of_size(mp.b.rank(), l) {
            if r.gen_bool(0.6) {
                terms.push((mask::bits(s).collect(), mask::bits(t).collect(), random_poly(r, c, 2)));
            }
        }
    }
    BiCochain::from_terms(mp, k, l, &terms).unwrap()
}

/// `Σ_{a<b} π^{ab}(∂_a f ∂_b g − ∂_b f ∂_a g)`, straight from the coefficients.
pub fn naive_poisson_bracket(pi: &Multivector, f: &PolyGQ, g: &PolyGQ) -> PolyGQ {
    let mut out = PolyGQ::zero(pi.chart());
    for (m, c) in pi.terms() {
        let s: Vec<usize> = mask::bits(m).collect();
        assert_eq!(s.len(), 2);
        let t = &(&f.diff(s[0]) * &g.diff(s[1])) - &(&f.diff(s[1]) * &g.diff(s[0]));
        out.add_assign_ref(&(c * &t));
    }
    out
}

fn det(rows: &[Vec<PolyGQ>], chart: Chart) -> PolyGQ {
    let k = rows.len();
    if k == 0 {
        return PolyGQ::one(chart);
    }
    let mut out = PolyGQ::zero(chart);
    for (j, a) in rows[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<PolyGQ>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = a * &det(&minor, chart);
        if j % 2 == 0 {
            out.add_assign_ref(&t);
        } else {
            out.sub_assign_ref(&t);
        }
    }
    out
}

/// Value of a cochain on arbitrary sections, by expanding each basis
/// coefficient against the minors of the argument components.
pub fn eval_cochain(alpha: &BiCochain, a_args: &[Section], b_args: &[Section]) -> PolyGQ {
    let chart = alpha.chart();
    let mut out = PolyGQ::zero(chart);
    for ((s, t), g) in alpha.terms() {
        let sa: Vec<usize> = mask::bits(s).collect();
        let tb: Vec<usize> = mask::bits(t).collect();
        let ma: Vec<Vec<PolyGQ>> = a_args.iter().map(|x| sa.iter().map(|&i| x[i].clone()).collect()).collect();
        let mb: Vec<Vec<PolyGQ>> = b_args.iter().map(|y| tb.iter().map(|&i| y[i].clone()).collect()).collect();
        let v = &det(&ma, chart) * &det(&mb, chart);
        out.add_assign_ref(&(g * &v));
    }
    out
}

fn unit(chart: Chart, rank: usize, i: usize) -> Section {
    (0..rank).map(|k| if k == i { PolyGQ::one(chart) } else { PolyGQ::zero(chart) }).collect()
}

fn skip<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x.clone()).collect()
}

/// Term-by-term evaluation of the coboundary of a module-valued cochain of
/// `acting`, the module being the exterior algebra of the dual of `other`.
fn naive_partial(
    acting: &AlgebroidChart,
    nabla: &dyn Fn(&Section, &Section) -> Section,
    other_rank: usize,
    alpha: &BiCochain,
    eval: &dyn Fn(&[Section], &[Section]) -> PolyGQ,
    k: usize,
    l: usize,
) -> BTreeMap<(u32, u32), PolyGQ> {
    let chart = alpha.chart();
    let mut out = BTreeMap::new();
    for s in mask::subsets_of_size(acting.rank(), k + 1) {
        for t in mask::subsets_of_size(other_rank, l) {
            let a: Vec<Section> = mask::bits(s).map(|i| unit(chart, acting.rank(), i)).collect();
            let b: Vec<Section> = mask::bits(t).map(|i| unit(chart, other_rank, i)).collect();
            let mut v = PolyGQ::zero(chart);
            for i in 0..=k {
                let rest = skip(&a, i);
                let mut term = acting.anchor_of(&a[i]).apply(&eval(&rest, &b));
                for j in 0..l {
                    let mut bj = b.clone();
                    bj[j] = nabla(&a[i], &b[j]);
                    term.sub_assign_ref(&eval(&rest, &bj));
                }
                if i % 2 == 0 {
                    v.add_assign_ref(&term);
                } else {
                    v.sub_assign_ref(&term);
                }
            }
            for i in 0..=k {
                for j in i + 1..=k {
                    let mut args = vec![acting.bracket(&a[i], &a[j])];
                    args.extend(a.iter().enumerate().filter(|(q, _)| *q != i && *q != j).map(|(_, x)| x.clone()));
                    let term = eval(&args, &b);
                    if (i + j) % 2 == 0 {
                        v.add_assign_ref(&term);
                    } else {
                        v.sub_assign_ref(&term);
                    }
                }
            }
            if !v.is_zero() {
                out.insert((s, t), v);
            }
        }
    }
    out
}

/// `∂_A α` by the displayed sum over frame arguments.
pub fn naive_partial_a(mp: &MatchedPairData, alpha: &BiCochain) -> BTreeMap<(u32, u32), PolyGQ> {
    let (k, l) = alpha.bidegree();
    let nabla = |x: &Section, y: &Section| mp.nabla_ab.nabla(x, y);
    let eval = |a: &[Section], b: &[Section]| eval_cochain(alpha, a, b);
    naive_partial(&mp.a, &nabla, mp.b.rank(), alpha, &eval, k, l)
}

/// `∂_B α` by the displayed sum, arguments ordered `(A_1..A_k, B_0..B_l)`.
pub fn naive_partial_b(mp: &MatchedPairData, alpha: &BiCochain) -> BTreeMap<(u32, u32), PolyGQ> {
    let (k, l) = alpha.bidegree();
    let nabla = |y: &Section, x: &Section| mp.nabla_ba.nabla(y, x);
    let eval = |b: &[Section], a: &[Section]| eval_cochain(alpha, a, b);
    let swapped = naive_partial(&mp.b, &nabla, mp.a.rank(), alpha, &eval, l, k);
    swapped.into_iter().map(|((t, s), v)| ((s, t), v)).collect()
}

pub fn cochain_map(c: &BiCochain) -> BTreeMap<(u32, u32), PolyGQ> {
    c.terms().map(|(k, v)| (k, v.clone())).collect()
}
