//! The det₃ table: limits along λ₁, λ₂, λ₄.

use std::collections::BTreeMap;

use orbitlimits::exact::{q, Rational};
use orbitlimits::lie::{stabilizer_algebra, Form};
use orbitlimits::limits::{self, examples, CaseWitness, HofmannCase, OnePS, Subject};

fn subject(f: &Form) -> Subject {
    Subject::form(f).unwrap()
}

fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
    pairs.iter().copied().collect()
}

fn h_graded(s: &Subject, lam: &OnePS) -> BTreeMap<i64, usize> {
    let e = limits::expand_orbit_curve(s, lam).unwrap();
    let h = stabilizer_algebra(&s.rep, &e.g);
    limits::graded_dims(&s.rep, &h, &lam.weights).unwrap()
}

#[test]
fn stabilizer_of_det3_is_16_dimensional() {
    let s = subject(&examples::det3());
    assert_eq!(stabilizer_algebra(&s.rep, &s.v).len(), 16);
}

#[test]
fn lambda1_expansion_and_limit() {
    let (f, lam, _) = examples::det3_lambda1();
    let s = subject(&f);
    let e = limits::expand_orbit_curve(&s, &lam).unwrap();
    assert_eq!((e.a, e.b), (0, Some(1)));
    assert_eq!(e.g_form().unwrap(), examples::q1());
    assert_eq!(e.f_b_form().unwrap(), examples::q1_prime());
    assert!(e.transverse);

    let d = limits::limit_algebra(&s, &lam).unwrap();
    assert_eq!((d.k0.len(), d.h_dim), (16, 17));
    assert_eq!(d.graded_dims, dims(&[(-1, 8), (0, 8)]));
    let c = limits::limit_algebra_by_conjugation(&s, &lam).unwrap();
    assert!(limits::same_subspace(&d.k0, &c.k0));
    assert_eq!(h_graded(&s, &lam), dims(&[(-1, 8), (0, 9)]));
}

#[test]
fn lambda1_mn_rank_is_one() {
    let (f, lam, _) = examples::det3_lambda1();
    let s = subject(&f);
    let e = limits::expand_orbit_curve(&s, &lam).unwrap();
    let model = limits::limit_model(&e, &lam).unwrap();
    let mm = limits::build_mn_ms(&e, &model).unwrap();
    assert_eq!(orbitlimits::exact::rank(&mm.mn()), 1);
    assert_eq!(mm.delta.coeff(0), q(1));
    assert_eq!(mm.delta.coeff(1), q(0));
}

#[test]
fn lambda2_expansion_and_limit() {
    let (f, lam, _) = examples::det3_lambda2();
    let s = subject(&f);
    let e = limits::expand_orbit_curve(&s, &lam).unwrap();
    assert_eq!((e.a, e.b), (1, Some(3)));
    // With Z carrying 2x4, 2x5, 2x6 on its diagonal the t-coefficient is 2Q₂.
    assert_eq!(e.g_form().unwrap(), examples::q2().scale(&q(2)));
    assert_eq!(e.f_b_form().unwrap(), examples::q3());
    let d = limits::limit_algebra(&s, &lam).unwrap();
    assert_eq!((d.k0.len(), d.h_dim), (16, 17));
    assert_eq!(d.graded_dims, dims(&[(-1, 8), (0, 8)]));
    assert_eq!(h_graded(&s, &lam), dims(&[(-1, 8), (0, 9)]));
}

#[test]
fn lambda4_expansion_and_limit() {
    let (f, lam, _) = examples::det3_lambda4();
    let s = subject(&f);
    let e = limits::expand_orbit_curve(&s, &lam).unwrap();
    assert_eq!((e.a, e.b), (1, Some(2)));
    assert_eq!(e.g_form().unwrap(), examples::q4());
    assert_eq!(e.f_b_form().unwrap(), examples::q4_prime());
    let d = limits::limit_algebra(&s, &lam).unwrap();
    assert_eq!((d.k0.len(), d.h_dim), (16, 21));
    assert_eq!(d.graded_dims, dims(&[(-1, 5), (0, 10), (1, 1)]));
    let c = limits::limit_algebra_by_conjugation(&s, &lam).unwrap();
    assert!(limits::same_subspace(&d.k0, &c.k0));
    assert_eq!(h_graded(&s, &lam), dims(&[(-1, 7), (0, 13), (1, 1)]));
}

#[test]
fn triple_stabilizer_dimensions() {
    for (ex, want) in [
        (examples::det3_lambda1(), dims(&[(0, 4)])),
        (examples::det3_lambda2(), dims(&[(0, 8)])),
        (examples::det3_lambda4(), dims(&[(-1, 1), (0, 6), (1, 1)])),
    ] {
        let (f, lam, _) = ex;
        let ts = limits::triple_stabilizers(&subject(&f), &lam).unwrap();
        assert_eq!(ts.pure_dims(), want);
        let total: usize = want.values().sum();
        assert_eq!(ts.klf.len(), total);
        assert_eq!(ts.klf_direct_dim, total);
    }
}

#[test]
fn tangents_of_exit() {
    let (f, lam, _) = examples::det3_lambda1();
    let s = subject(&f);
    let (lf, lpf) = limits::tangent_of_exit(&s, &lam).unwrap();
    let q1p = s.rep.form_to_vec(&examples::q1_prime()).unwrap();
    assert_eq!(lf, q1p);
    assert_eq!(lpf, q1p);

    let (f, lam, _) = examples::det3_lambda2();
    let s = subject(&f);
    let (_, lpf) = limits::tangent_of_exit(&s, &lam).unwrap();
    assert_eq!(s.rep.vec_to_form(&lpf), examples::q3().scale(&q(2)));

    let (f, lam, _) = examples::det3_lambda4();
    let s = subject(&f);
    let (_, lpf) = limits::tangent_of_exit(&s, &lam).unwrap();
    assert_eq!(s.rep.vec_to_form(&lpf), examples::q4_prime());
}

#[test]
fn lambda1_is_case_b_with_pure_witness() {
    let (f, lam, _) = examples::det3_lambda1();
    match limits::classify_case(&subject(&f), &lam).unwrap() {
        CaseWitness::B { pure, u, .. } => {
            assert!(pure);
            assert_eq!(u, orbitlimits::exact::Matrix::<Rational>::identity(9));
        }
        other => panic!("expected case B, got {other:?}"),
    }
}

#[test]
fn e23_operator_as_listed() {
    let (f, lam, _) = examples::det3_lambda1();
    let s = subject(&f);
    let fo = limits::first_order(&s, &lam).unwrap();
    let (r, sx) = examples::r_and_s_e23();
    // r·Q₁ = (x8 − x6)(x1x5 − x2x4) and r·f_b = −s·Q₁.
    let want = limits::Subject::form(&Form::parse("(x8-x6)*(x1*x5-x2*x4)", &examples::det3_lambda1().2, None).unwrap())
        .unwrap()
        .v;
    assert_eq!(s.rep.act(&r, &fo.g), want);
    let rf = s.rep.act(&r, &fo.f_b);
    let sg = s.rep.act(&sx, &fo.g);
    assert!(rf.iter().zip(&sg).all(|(a, b)| a == &-b.clone()));
}

#[test]
fn e23_conjugation_derivation() {
    let (f, lam, _) = examples::det3_lambda1();
    let s = subject(&f);
    let fo = limits::first_order(&s, &lam).unwrap();
    let r = examples::conj_e23();
    assert!(orbitlimits::exact::vec_is_zero(&s.rep.act(&r, &fo.g)));
    let db = limits::derivation_db(&fo.model, &fo.f_b, std::slice::from_ref(&r)).unwrap();
    let d = &db.values[0];
    let (hc, _) = fo.model.split(d).unwrap();
    assert!(hc.iter().all(|c| c == &q(0)));
    assert_eq!(s.rep.act(d, &fo.g), s.rep.act(&r, &fo.f_b));
}

#[test]
fn codim_one_extensions_and_hofmann() {
    for ex in [examples::det3_lambda1(), examples::det3_lambda2()] {
        let (f, lam, _) = ex;
        let s = subject(&f);
        let fo = limits::first_order(&s, &lam).unwrap();
        let ext = limits::extension_feasible(&fo.model, &fo.k0, &fo.db).unwrap();
        assert!(ext.feasible);
        let (case, _) = limits::hofmann_case(&fo.model.h, &fo.k0).unwrap();
        assert_eq!(case, HofmannCase::Ideal);
    }
}

#[test]
fn graded_conditions_hold() {
    for (ex, label) in [(examples::det3_lambda1(), "b-a=1"), (examples::det3_lambda2(), "b-a=2")] {
        let (f, lam, _) = ex;
        let s = subject(&f);
        let fo = limits::first_order(&s, &lam).unwrap();
        let gc = limits::check_graded_conditions(&s.rep, &lam, &fo.g, &fo.f_b, fo.gap, &fo.k0).unwrap();
        assert_eq!(gc.case_label(), label);
        assert_eq!(gc.checks.len(), 16);
        assert!(gc.all_ok());
    }
}

#[test]
fn filtered_dims_match_grading() {
    let (f, lam, _) = examples::det3_lambda1();
    let s = subject(&f);
    let q = limits::filtered_quotient_dims(&s, &lam).unwrap();
    assert_eq!(q, dims(&[(-1, 8), (0, 8)]));
}
