use super::*;
use crate::exactalg::parse_poly;
use crate::poisson::{nijenhuis_torsion, EndoField};

fn p(c: Chart, s: &str) -> PolyGQ {
    parse_poly(c, s).unwrap()
}

fn mv(c: Chart, slots: &[usize], f: &str) -> Multivector {
    Multivector::frame(c, slots).mul_poly(&p(c, f))
}

fn q(n: i64) -> GQ {
    GQ::int(n)
}

fn sl2() -> LieAlgebraData {
    // h, e, f
    LieAlgebraData::from_triples(3, &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))]).unwrap()
}

fn heisenberg() -> LieAlgebraData {
    // e, f, h
    LieAlgebraData::from_triples(3, &[(0, 1, 2, q(1))]).unwrap()
}

fn tangent(c: Chart) -> AlgebroidChart {
    let anchor = (0..c.nvars()).map(|s| Multivector::frame(c, &[s])).collect();
    AlgebroidChart::from_fn(c, anchor, |_, _| section::zero(c, c.nvars())).unwrap()
}

#[test]
fn verify_examples() {
    assert!(verify_algebroid(&tangent(Chart::real(2))).ok());
    let g = sl2().to_algebroid(Chart::real(0)).unwrap();
    assert!(verify_algebroid(&g).ok());
    let bad = LieAlgebraData::from_triples(3, &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1)), (0, 1, 0, q(1))])
        .unwrap()
        .to_algebroid(Chart::real(0))
        .unwrap();
    assert!(!verify_algebroid(&bad).jacobi);
    // ρ(e_1) = x1 ∂x1, ρ(e_2) = ∂x1 with [e_1, e_2] = 0 is not a morphism
    let r = Chart::real(1);
    let a = AlgebroidChart::from_fn(r, vec![mv(r, &[0], "x1"), mv(r, &[0], "1")], |_, _| section::zero(r, 2)).unwrap();
    let rep = verify_algebroid(&a);
    assert!(rep.jacobi && !rep.anchor_morphism);
}

#[test]
fn shape_errors() {
    let r = Chart::real(1);
    let e = section::unit(r, 2, 0);
    let bad = vec![vec![section::zero(r, 2), e.clone()], vec![e, section::zero(r, 2)]];
    assert!(matches!(AlgebroidChart::new(r, vec![Multivector::zero(r); 2], bad), Err(HpError::Shape(_))));
    let a = tangent(r);
    let n = EndoOnAlgebroid::identity(&tangent(Chart::real(2)));
    assert!(matches!(nijenhuis_torsion_algebroid(&a, &n), Err(HpError::Shape(_))));
}

#[test]
fn bracket_is_leibniz_extended() {
    let r = Chart::real(1);
    let a = tangent(r);
    // [x1 ∂x1, x1 y1 ∂y1] = x1 y1 ∂y1
    let v = vec![p(r, "x1"), p(r, "0")];
    let w = vec![p(r, "0"), p(r, "x1 y1")];
    assert_eq!(a.bracket(&v, &w), vec![p(r, "0"), p(r, "x1 y1")]);
    assert_eq!(a.bracket(&w, &v), vec![p(r, "0"), p(r, "-x1 y1")]);
}

#[test]
fn torsion_examples() {
    let g = sl2().realified().to_algebroid(Chart::real(0)).unwrap();
    assert!(nijenhuis_torsion_algebroid(&g, &EndoOnAlgebroid::identity(&g)).unwrap().is_zero());
    let j = EndoOnAlgebroid::standard_j(&g).unwrap();
    assert!(j.squares_to_minus_identity());
    assert!(nijenhuis_torsion_algebroid(&g, &j).unwrap().is_zero());
    // on the tangent algebroid the torsion is the torsion of the endomorphism field
    let r = Chart::real(1);
    let a = tangent(r);
    let m = vec![vec![p(r, "y1"), p(r, "x1^2")], vec![p(r, "1"), p(r, "x1 y1")]];
    let n = EndoOnAlgebroid::new(&a, m.clone()).unwrap();
    let t = nijenhuis_torsion_algebroid(&a, &n).unwrap();
    let field = nijenhuis_torsion(&EndoField::new(r, m).unwrap());
    let v = field.value(0, 1);
    assert_eq!(t.values[&(0, 1)], vec![v.coeff(1), v.coeff(2)]);
}

#[test]
fn deform_examples() {
    let g = sl2().realified().to_algebroid(Chart::real(0)).unwrap();
    assert_eq!(deform_by(&g, &EndoOnAlgebroid::identity(&g)).unwrap(), g);
    let j = EndoOnAlgebroid::standard_j(&g).unwrap();
    let gj = deform_by(&g, &j).unwrap();
    assert!(verify_algebroid(&gj).ok());
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(gj.structure(a, b), &j.apply(g.structure(a, b)));
        }
    }
    // deforming twice by a complex-linear j negates the bracket and the anchor
    let jj = EndoOnAlgebroid::standard_j(&gj).unwrap();
    let gjj = deform_by(&gj, &jj).unwrap();
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(gjj.structure(a, b), &section::neg(g.structure(a, b)));
        }
    }
    // tangent algebroid of real(1) deformed by J: anchor J, constant frame brackets vanish
    let r = Chart::real(1);
    let t = tangent(r);
    let jt = EndoOnAlgebroid::standard_j(&t).unwrap();
    let d = deform_by(&t, &jt).unwrap();
    assert_eq!(d.anchor(), &[mv(r, &[1], "1"), mv(r, &[0], "-1")]);
    assert!(section::is_zero(d.structure(0, 1)));
    let bad = vec![vec![p(r, "0"), p(r, "x1")], vec![p(r, "1"), p(r, "0")]];
    let n = EndoOnAlgebroid::new(&t, bad).unwrap();
    assert!(matches!(deform_by(&t, &n), Err(HpError::Structure(_))));
}

#[test]
fn split_tangent() {
    let r = Chart::real(1);
    let t = tangent(r);
    let j = EndoOnAlgebroid::standard_j(&t).unwrap();
    let (a10, a01) = split_complexified(&t, &j).unwrap();
    let c = Chart::complex(1);
    assert_eq!(a10.anchor()[0].convert_chart(c).unwrap(), mv(c, &[0], "1"));
    assert_eq!(a01.anchor()[0].convert_chart(c).unwrap(), mv(c, &[1], "1"));
    assert!(verify_algebroid(&a10).ok() && verify_algebroid(&a01).ok());
}

#[test]
fn split_recovers_complex_algebra() {
    // [e1, e2] = i e2
    let g = LieAlgebraData::from_triples(2, &[(0, 1, 1, GQ::i())]).unwrap();
    let real = g.realified().to_algebroid(Chart::real(0)).unwrap();
    let j = EndoOnAlgebroid::standard_j(&real).unwrap();
    let (a10, a01) = split_complexified(&real, &j).unwrap();
    let pt = Chart::real(0);
    assert_eq!(a10.structure(0, 1), &vec![PolyGQ::zero(pt), PolyGQ::constant(pt, GQ::i())]);
    assert_eq!(a01.structure(0, 1), &vec![PolyGQ::zero(pt), PolyGQ::constant(pt, -GQ::i())]);
    // abelian halves of an abelian algebroid
    let ab = LieAlgebraData::from_triples(2, &[]).unwrap().to_algebroid(pt).unwrap();
    let (h1, h2) = split_complexified(&ab, &EndoOnAlgebroid::standard_j(&ab).unwrap()).unwrap();
    assert!(section::is_zero(h1.structure(0, 0)) && section::is_zero(h2.structure(0, 0)));
    // a j that is not the standard one
    assert!(split_complexified(&ab, &EndoOnAlgebroid::identity(&ab)).is_err());
}

#[test]
fn realify_examples() {
    let g = sl2();
    let real = realify_liealgebra(&g).unwrap();
    assert_eq!(real.rank(), 6);
    assert!(verify_algebroid(&real).ok());
    let via_point = realify_algebroid(&g.to_algebroid(Chart::complex(0)).unwrap()).unwrap();
    assert_eq!(via_point, real);
    let gl1 = realify_liealgebra(&LieAlgebraData::from_triples(1, &[]).unwrap()).unwrap();
    assert_eq!(gl1.rank(), 2);
    assert!(section::is_zero(gl1.structure(0, 1)));
    assert!(realify_liealgebra(&g.realified()).is_err());
}

#[test]
fn lie_poisson_examples() {
    let ab = LieAlgebraData::from_triples(2, &[]).unwrap();
    assert!(lie_poisson(&ab).unwrap().is_zero());
    let c = Chart::complex(3);
    let pi = lie_poisson(&sl2()).unwrap();
    assert!(crate::poisson::is_holomorphic_poisson(&pi).unwrap().is_poisson());
    let br = |i, j| crate::poisson::poisson_bracket(&pi, &PolyGQ::var(c, i), &PolyGQ::var(c, j)).unwrap();
    assert_eq!(br(0, 1), p(c, "2 z2"));
    assert_eq!(br(0, 2), p(c, "-2 z3"));
    assert_eq!(br(1, 2), p(c, "z1"));
    assert_eq!(lie_poisson(&heisenberg()).unwrap(), mv(c, &[0, 1], "z3"));
    let bad = LieAlgebraData::from_triples(3, &[(0, 1, 1, q(1)), (1, 2, 2, q(1)), (0, 2, 0, q(1))]).unwrap();
    assert!(!bad.jacobi_holds());
    assert!(matches!(lie_poisson(&bad), Err(HpError::Structure(_))));
}

#[test]
fn realparts_examples() {
    assert!(realparts_liealgebra_check(&LieAlgebraData::from_triples(2, &[]).unwrap()).unwrap().ok());
    assert!(realparts_liealgebra_check(&sl2()).unwrap().ok());
    assert!(realparts_liealgebra_check(&heisenberg()).unwrap().ok());
    assert!(realparts_liealgebra_check(&sl2().realified()).unwrap().ok());
    // [e1, e2] = e1 with the standard j is only real-linear
    let g = LieAlgebraData::from_triples(2, &[(0, 1, 0, q(1))]).unwrap();
    let j = vec![vec![q(0), q(-1)], vec![q(1), q(0)]];
    assert!(matches!(realparts_liealgebra_check(&g.with_j(j).unwrap()), Err(HpError::Structure(_))));
}

#[test]
fn cotangent_examples() {
    let c = Chart::complex(2);
    let zero = cotangent_algebroid(&Multivector::zero(c)).unwrap();
    assert!(zero.anchor().iter().all(|a| a.is_zero()));
    assert!(section::is_zero(zero.structure(0, 1)));
    let pi = mv(c, &[0, 1], "1");
    let a = cotangent_algebroid(&pi).unwrap();
    assert!(section::is_zero(a.structure(0, 1)));
    assert_eq!(a.anchor(), &[mv(c, &[1], "1"), mv(c, &[0], "-1")]);
    // sl2 Lie–Poisson: structure functions reproduce the constants
    let c3 = Chart::complex(3);
    let b = cotangent_algebroid(&lie_poisson(&sl2()).unwrap()).unwrap();
    assert!(verify_algebroid(&b).ok());
    for i in 0..3 {
        for j in 0..3 {
            let want: Section = sl2().constant(i, j).iter().map(|x| PolyGQ::constant(c3, x.clone())).collect();
            assert_eq!(b.structure(i, j), &want);
        }
    }
    assert!(matches!(cotangent_algebroid(&mv(c, &[0, 1], "zb1")), Err(HpError::Structure(_))));
}

#[test]
fn cotangent_realparts() {
    let c = Chart::complex(2);
    assert!(cotangent_realparts_check(&Multivector::zero(c)).unwrap().ok());
    assert!(cotangent_realparts_check(&mv(c, &[0, 1], "1")).unwrap().ok());
    assert!(cotangent_realparts_check(&mv(c, &[0, 1], "i z1")).unwrap().ok());
    assert!(cotangent_realparts_check(&lie_poisson(&sl2()).unwrap()).unwrap().ok());
}

#[test]
fn representation_examples() {
    let c = Chart::complex(2);
    let zero = canonical_matched_pair(&Multivector::zero(c)).unwrap();
    assert!(check_representation(&zero.nabla_ab).ok() && check_representation(&zero.nabla_ba).ok());
    let mp = canonical_matched_pair(&mv(c, &[0, 1], "1")).unwrap();
    assert!(check_representation(&mp.nabla_ab).ok() && check_representation(&mp.nabla_ba).ok());
    // ∇_{∂zb1} dz1 = zb2 dz1 is not flat
    let bent = mp.perturbed(RepSide::AonB, 0, 0, 0, &p(c, "zb2")).unwrap();
    let rep = check_representation(&bent.nabla_ab);
    assert!(rep.leibniz && !rep.flat);
    assert!(matches!(matched_pair_tensors(&bent), Err(HpError::Structure(_))));
}

#[test]
fn canonical_tensors_vanish() {
    let c = Chart::complex(2);
    for pi in [Multivector::zero(c), mv(c, &[0, 1], "1"), mv(c, &[0, 1], "z1 z2")] {
        let mp = canonical_matched_pair(&pi).unwrap();
        assert!(matched_pair_tensors(&mp).unwrap().is_zero());
        assert_eq!(mp.b, cotangent_algebroid(&pi).unwrap());
    }
    let mp = canonical_matched_pair(&lie_poisson(&sl2()).unwrap()).unwrap();
    assert!(matched_pair_tensors(&mp).unwrap().is_zero());
    // ∇_{∂zb1} dz_h = dz_h is flat but breaks the derivation rule
    let bad = mp.perturbed(RepSide::AonB, 0, 0, 0, &PolyGQ::one(mp.a.chart())).unwrap();
    let t = matched_pair_tensors(&bad).unwrap();
    assert!(!t.s.is_empty());
    assert!(matches!(bowtie(&bad), Err(HpError::Structure(_))));
}

#[test]
fn bowtie_examples() {
    let c = Chart::complex(2);
    let mp = canonical_matched_pair(&Multivector::zero(c)).unwrap();
    let bow = bowtie(&mp).unwrap();
    assert_eq!(bow.rank(), 4);
    assert!((0..4).all(|a| (0..4).all(|b| section::is_zero(bow.structure(a, b)))));
    let mp = canonical_matched_pair(&mv(c, &[0, 1], "z1")).unwrap();
    assert!(verify_algebroid(&bowtie(&mp).unwrap()).ok());

    // T^{0,1} ⋈ T^{1,0} with trivial connections is the complexified tangent algebroid
    let a = AlgebroidChart::from_fn(c, vec![mv(c, &[2], "1"), mv(c, &[3], "1")], |_, _| section::zero(c, 2)).unwrap();
    let b = AlgebroidChart::from_fn(c, vec![mv(c, &[0], "1"), mv(c, &[1], "1")], |_, _| section::zero(c, 2)).unwrap();
    let pair = MatchedPairData::new(
        RepData::trivial(a.clone(), b.clone()).unwrap(),
        RepData::trivial(b.clone(), a.clone()).unwrap(),
    )
    .unwrap();
    let bow = bowtie(&pair).unwrap();
    let v = vec![p(c, "z1"), p(c, "0"), p(c, "zb1"), p(c, "z2")];
    let w = vec![p(c, "0"), p(c, "z1 zb2"), p(c, "1"), p(c, "0")];
    let (xv, xw) = (bow.anchor_of(&v), bow.anchor_of(&w));
    assert_eq!(bow.anchor_of(&bow.bracket(&v, &w)), schouten(&xv, &xw).unwrap());
}

#[test]
fn yao_examples() {
    let c = Chart::complex(2);
    assert!(yao_isomorphism_check(&Multivector::zero(c)).unwrap().all());
    assert!(yao_isomorphism_check(&mv(c, &[0, 1], "1")).unwrap().all());
    let c3 = Chart::complex(3);
    assert!(yao_isomorphism_check(&mv(c3, &[0, 1], "z3")).unwrap().all());
    assert!(yao_isomorphism_check(&lie_poisson(&sl2()).unwrap()).unwrap().all());
    assert!(yao_isomorphism_check(&mv(c, &[0, 1], "zb1")).is_err());
}
