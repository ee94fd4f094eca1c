use super::*;
use crate::exactalg::parse_poly;

fn c2() -> Chart {
    Chart::complex(2)
}

fn p(c: Chart, s: &str) -> PolyGQ {
    parse_poly(c, s).unwrap()
}

fn mv(c: Chart, slots: &[usize], f: &str) -> Multivector {
    Multivector::frame(c, slots).mul_poly(&p(c, f))
}

fn fm(c: Chart, slots: &[usize], f: &str) -> Form {
    Form::frame(c, slots).mul_poly(&p(c, f))
}

#[test]
fn wedge_examples() {
    let c = c2();
    assert!(mv(c, &[0], "1").wedge(&mv(c, &[0], "1")).is_zero());
    assert_eq!(mv(c, &[0], "1").wedge(&mv(c, &[1], "1")), mv(c, &[1], "1").wedge(&mv(c, &[0], "1")).neg());
    assert_eq!(mv(c, &[0], "z1").wedge(&mv(c, &[1], "z2")), mv(c, &[0, 1], "z1 z2"));
    assert!(mv(c, &[0], "1").try_wedge(&Multivector::zero(Chart::complex(1))).is_err());
}

#[test]
fn contract_examples() {
    let c3 = Chart::complex(3);
    let pi = mv(c3, &[0, 1], "1");
    assert_eq!(contract(&fm(c3, &[0], "1"), &pi).unwrap(), mv(c3, &[1], "1"));
    assert!(contract(&fm(c3, &[2], "1"), &pi).unwrap().is_zero());
    // ι_{dzb1}(∂z1 ∧ ∂zb1) = -∂z1, the sign comes from the slot position
    let c = c2();
    assert_eq!(contract(&fm(c, &[2], "1"), &mv(c, &[0, 2], "1")).unwrap(), mv(c, &[0], "-1"));
    assert!(contract(&fm(c, &[0], "1"), &Multivector::scalar(p(c, "z1"))).is_err());
}

#[test]
fn schouten_examples() {
    let c = c2();
    let pi = mv(c, &[0, 1], "1");
    // Graded Leibniz and antisymmetry force [X∧Y, f] = -X(f) Y + Y(f) X.
    assert_eq!(schouten(&pi, &Multivector::scalar(p(c, "z1"))).unwrap(), mv(c, &[1], "-1"));
    assert!(schouten(&pi, &pi).unwrap().is_zero());
    let q = mv(c, &[0, 1], "z1");
    assert!(schouten(&q, &q).unwrap().is_zero());
    // [X, f] = X(f) and the Lie bracket on vector fields
    assert_eq!(
        schouten(&mv(c, &[0], "z2"), &Multivector::scalar(p(c, "z1^2"))).unwrap(),
        Multivector::scalar(p(c, "2 z1 z2"))
    );
    assert_eq!(schouten(&mv(c, &[0], "z2"), &mv(c, &[1], "z1")).unwrap(), mv(c, &[1], "z2").sub(&mv(c, &[0], "z1")));
}

#[test]
fn lie_derivative_examples() {
    let c = c2();
    let d1 = mv(c, &[0], "1");
    assert_eq!(lie_derivative(&d1, &fm(c, &[1], "z1")).unwrap(), fm(c, &[1], "1"));
    assert!(lie_derivative(&d1, &fm(c, &[0], "1")).unwrap().is_zero());
    assert_eq!(lie_derivative(&mv(c, &[0], "z1"), &d1).unwrap(), mv(c, &[0], "-1"));
    assert!(lie_derivative(&mv(c, &[0, 1], "1"), &d1).is_err());
}

#[test]
fn derham_split_examples() {
    let c = c2();
    let (del, delbar) = derham_split(&Form::scalar(p(c, "zb1"))).unwrap();
    assert!(del.is_zero());
    assert_eq!(delbar, fm(c, &[2], "1"));
    assert!(dbar_multivector(&mv(c, &[0, 1], "z1^2")).unwrap().is_zero());
    // ∂̄(z̄1 z1 dz̄2 ⊗ ∂z1) = z1 dz̄1∧dz̄2 ⊗ ∂z1
    let m = MixedForm::single(c, 0b10, 0b01, p(c, "zb1 z1"));
    assert_eq!(m.dbar(), MixedForm::single(c, 0b11, 0b01, p(c, "z1")));
    assert!(derham_split(&Form::scalar(p(Chart::real(1), "x1"))).is_err());
}

#[test]
fn sharp_examples() {
    let c3 = Chart::complex(3);
    let pi = mv(c3, &[0, 1], "1");
    assert_eq!(sharp(&pi, &fm(c3, &[0], "1")).unwrap(), mv(c3, &[1], "1"));
    assert!(sharp(&pi, &fm(c3, &[3], "1")).unwrap().is_zero());
    let pi3 = mv(c3, &[0, 1], "z3");
    assert_eq!(sharp(&pi3, &fm(c3, &[1], "1")).unwrap(), mv(c3, &[0], "-z3"));
    assert!(sharp(&pi3, &fm(c3, &[0, 1], "1")).is_err());
}

#[test]
fn frame_conversion_round_trip() {
    let c = c2();
    let r = Chart::real(2);
    let x = mv(c, &[0, 3], "z1 + zb2").add(&mv(c, &[1], "i"));
    assert_eq!(x.convert_chart(r).unwrap().convert_chart(c).unwrap(), x);
    let w = fm(c, &[0, 2], "z1 zb1");
    assert_eq!(w.convert_chart(r).unwrap().convert_chart(c).unwrap(), w);
    // ∂z1 = (∂x1 - i ∂y1)/2
    let dz = mv(Chart::complex(1), &[0], "1").convert_chart(Chart::real(1)).unwrap();
    assert_eq!(dz, mv(Chart::real(1), &[0], "1/2").add(&mv(Chart::real(1), &[1], "-1/2i")));
}

#[test]
fn conjugation_swaps_types() {
    let c = c2();
    let x = mv(c, &[0, 1], "i z1");
    assert_eq!(x.conj(), mv(c, &[2, 3], "-i zb1"));
    assert!(mv(c, &[0], "1").add(&mv(c, &[2], "1")).is_real_object());
}

#[test]
fn cartan_and_d_squared() {
    let c = c2();
    let w = fm(c, &[1], "z1^2 zb2 + zb1");
    assert!(w.d().d().is_zero());
    let x = mv(c, &[0], "z2").add(&mv(c, &[3], "z1"));
    let lhs = lie_derivative(&x, &Form::scalar(p(c, "z1 zb2"))).unwrap();
    assert_eq!(lhs, Form::scalar(x.apply(&p(c, "z1 zb2"))));
}

#[test]
fn components_round_trip() {
    let c = c2();
    let x = mv(c, &[0, 3], "z1").add(&mv(c, &[1], "2"));
    let comps: Vec<_> = x.components().into_iter().map(|(i, j, f)| (i, j, f.clone())).collect();
    assert_eq!(Multivector::from_components(c, &comps).unwrap(), x);
    assert_eq!(x.to_string(), "(2) d/dz2 + (z1) d/dz1^d/dzb2");
}
