mod common;

use common::{v, Dense};
use skewalg_core::catalog;
use skewalg_core::groupoid::{connected_components, ObjectId};
use skewalg_core::linalg::{vec_add, vec_scale, AffineSolutionSet, Field, Scalar, Vector};
use skewalg_core::paction::PartialAction;
use skewalg_core::separability::{
    build_certificate, decide_global, decide_separability, isotropy_transport_psi, isotropy_witness_transport,
    oracle_separability, trace_j,
};
use skewalg_core::skewring::SkewRing;
use skewalg_core::tensor::{Factor, Mid, TensorOverA};

fn q() -> Field {
    Field::Rational
}

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn whole(sr: &SkewRing) -> TensorOverA {
    TensorOverA::new(sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap()
}

fn mono(sr: &SkewRing, pa: &PartialAction, g: &str, a: Vector) -> Vector {
    let g = pa.groupoid().find_morphism(g).unwrap();
    sr.coords(&sr.monomial(g, a).unwrap())
}

#[test]
fn edge_traces_follow_the_closed_form() {
    let f = q();
    let pa = catalog::edge_action(f);
    for l in [[2, 3, 5, 7], [1, 0, 0, 0], [0, -4, 9, 1], [3, 3, -3, 0]] {
        let a = v(f, &l);
        let t1 = trace_j(&pa, ObjectId(0)).unwrap().apply(&a);
        let t2 = trace_j(&pa, ObjectId(1)).unwrap().apply(&a);
        assert_eq!(t1, v(f, &[l[0], l[1] + l[2], 0, 0]));
        assert_eq!(t2, v(f, &[0, 0, l[1] + l[2], l[3]]));
    }
}

#[test]
fn edge_witness_family_is_the_affine_line() {
    let f = q();
    let pa = catalog::edge_action(f);
    let verdict = decide_separability(&pa).unwrap();
    assert!(verdict.separable);
    let expected = AffineSolutionSet { particular: Some(v(f, &[1, 0, 1, 1])), kernel_basis: vec![v(f, &[0, 1, -1, 0])] };
    assert!(verdict.family.same_set(&expected));
    for lam in [0, 1, 2, -5] {
        assert!(verdict.family.contains(&v(f, &[1, lam, 1 - lam, 1])));
    }
}

/// `a_λ = v1 + λ v2 + (1-λ) v3 + v4`.
fn a_lambda(f: Field, lam: &Scalar) -> Vector {
    let one = f.one();
    let base = v(f, &[1, 0, 1, 1]);
    let dir = vec![f.zero(), one.clone(), -&one, f.zero()];
    vec_add(&base, &vec_scale(lam, &dir))
}

/// The four-term element `x_λ`, assembled from pure tensors.
fn x_lambda(f: Field, sr: &SkewRing, pa: &PartialAction, lam: &Scalar) -> (Vec<(Vector, Vector)>, Vector) {
    let one = f.one();
    let a1 = vec![one.clone(), lam.clone(), f.zero(), f.zero()];
    let a2 = vec![f.zero(), f.zero(), &one - lam, one.clone()];
    let v2 = v(f, &[0, 1, 0, 0]);
    let v3 = v(f, &[0, 0, 1, 0]);
    let pairs = vec![
        (mono(sr, pa, "id:e1", a1), mono(sr, pa, "id:e1", v(f, &[1, 1, 0, 0]))),
        (mono(sr, pa, "g", vec_scale(lam, &v3)), mono(sr, pa, "g^-1", v2.clone())),
        (mono(sr, pa, "g^-1", vec_scale(&(&one - lam), &v2)), mono(sr, pa, "g", v3)),
        (mono(sr, pa, "id:e2", a2), mono(sr, pa, "id:e2", v(f, &[0, 0, 1, 1]))),
    ];
    let t = whole(sr);
    let mut amb = vec![f.zero(); t.ambient_dim()];
    for (x, y) in &pairs {
        amb = vec_add(&amb, &t.pure(sr, x, y).unwrap());
    }
    (pairs, amb)
}

#[test]
fn edge_certificates_equal_the_explicit_idempotents() {
    let f = q();
    let pa = catalog::edge_action(f);
    let sr = SkewRing::build(&pa).unwrap();
    let t = whole(&sr);
    let dense = Dense::new(&sr);
    assert_eq!(t.ambient_dim(), 36);
    assert_eq!(dense.quotient_dim(), t.dim());
    let half = f.parse_scalar("1/2").unwrap();
    for lam in [f.from_i64(0), f.from_i64(1), f.from_i64(2), half] {
        let cert = build_certificate(&pa, &a_lambda(f, &lam)).unwrap();
        assert!(cert.checks.all(), "{lam}");
        let (pairs, amb) = x_lambda(f, &sr, &pa, &lam);
        assert_eq!(t.project(&amb), cert.idempotent_x, "λ = {lam}");

        let mut x_dense = vec![f.zero(); dense.n * dense.n];
        for (x, y) in &pairs {
            x_dense = vec_add(&x_dense, &dense.pure(x, y));
        }
        assert!(dense.is_separability_element(&sr, &x_dense));
        assert!(dense.equal(&x_dense, &dense.library_form(&t, &cert.idempotent_x)));
    }
}

#[test]
fn distinct_witnesses_give_distinct_idempotents() {
    let f = q();
    let pa = catalog::edge_action(f);
    let x0 = build_certificate(&pa, &a_lambda(f, &f.zero())).unwrap().idempotent_x;
    let x1 = build_certificate(&pa, &a_lambda(f, &f.one())).unwrap().idempotent_x;
    assert_ne!(x0, x1);
}

#[test]
fn zero_cross_traces_double() {
    for f in [q(), gf(2), gf(3), gf(5)] {
        let pa = catalog::zero_cross_action(f);
        for l in [[1, 0], [4, 7], [-1, 2]] {
            let a = v(f, &l);
            assert_eq!(trace_j(&pa, ObjectId(0)).unwrap().apply(&a), v(f, &[2 * l[0], 0]));
            assert_eq!(trace_j(&pa, ObjectId(1)).unwrap().apply(&a), v(f, &[0, 2 * l[1]]));
        }
    }
}

#[test]
fn zero_cross_is_separable_exactly_away_from_two() {
    for (f, expected) in [(q(), true), (gf(2), false), (gf(3), true), (gf(7), true)] {
        let pa = catalog::zero_cross_action(f);
        let decided = decide_separability(&pa).unwrap().separable;
        let oracle = oracle_separability(&pa).unwrap().separable;
        let sr = SkewRing::build(&pa).unwrap();
        let dense = Dense::new(&sr);
        assert_eq!(decided, expected, "{f}");
        assert_eq!(oracle, expected, "{f}");
        assert_eq!(dense.separable(&sr), expected, "{f}");
        assert_eq!(dense.quotient_dim(), whole(&sr).dim(), "{f}");
    }
}

#[test]
fn zero_cross_witness_is_one_half() {
    for f in [q(), gf(3)] {
        let pa = catalog::zero_cross_action(f);
        let verdict = decide_separability(&pa).unwrap();
        let half = f.parse_scalar("1/2").unwrap();
        let expected = AffineSolutionSet { particular: Some(vec![half.clone(), half]), kernel_basis: vec![] };
        assert!(verdict.family.same_set(&expected), "{f}");
    }
}

#[test]
fn swap_global_case() {
    let f = q();
    let pa = catalog::swap_global_action(f);
    let d = decide_separability(&pa).unwrap();
    let g = decide_global(&pa).unwrap();
    assert!(d.separable && g.separable);
    // t_1(a) = λ1 + λ2 on each corner, so the solutions of the single
    // equation form a line.
    assert_eq!(g.family.kernel_basis.len(), 1);
    let b = d.family.particular.clone().unwrap();
    let moved = isotropy_witness_transport(&pa, 0, &b).unwrap();
    assert!(moved.trace_is_unit && moved.central_in_corner);
    assert_eq!(moved.a, vec_add(&[b[0].clone(), f.zero()], &[b[1].clone(), f.zero()]));
    let s = pa.groupoid().find_morphism("s").unwrap();
    let psi = isotropy_transport_psi(&pa, s).unwrap();
    assert!(psi.is_ring_isomorphism());
}

#[test]
fn trivial_and_glued_instances() {
    let f = q();
    let pa = catalog::trivial_action(f);
    let sr = SkewRing::build(&pa).unwrap();
    assert_eq!(sr.dim(), 1);
    assert_eq!(sr.table_entry(0, 0), &vec![f.one()]);
    assert!(decide_separability(&pa).unwrap().separable);

    let glued = catalog::glued_edge_pair(f);
    assert_eq!(connected_components(glued.groupoid()).classes.len(), 2);
    let verdict = decide_separability(&glued).unwrap();
    assert!(verdict.separable);
    assert_eq!(verdict.family.kernel_basis.len(), 2);
    assert!(verdict.certificate.unwrap().checks.all());
}

#[test]
fn edge_skew_table_entries() {
    let f = q();
    let pa = catalog::edge_action(f);
    let sr = SkewRing::build(&pa).unwrap();
    assert_eq!(sr.dim(), 6);
    let idx = |label: &str| (0..6).find(|&i| sr.basis_label(i) == label).unwrap();
    let e = |i: usize| common::basis(f, 6, i);
    // v3δ_g · v2δ_{g⁻¹} = α_g(α_{g⁻¹}(v3) v2) δ_{e2} = v3 δ_{e2}
    assert_eq!(sr.table_entry(idx("v3·δ[g]"), idx("v2·δ[g^-1]")), &e(idx("v3·δ[id:e2]")));
    assert_eq!(sr.table_entry(idx("v2·δ[g^-1]"), idx("v3·δ[g]")), &e(idx("v2·δ[id:e1]")));
    // v4δ_{e2} · v3δ_g = v4 v3 δ_g = 0
    assert!(sr.table_entry(idx("v4·δ[id:e2]"), idx("v3·δ[g]")).iter().all(|x| x.is_zero()));
    // v1δ_{e1} · v2δ_{g⁻¹}: src(id:e1) = tgt(g⁻¹) and v1 v2 = 0
    assert!(sr.table_entry(idx("v1·δ[id:e1]"), idx("v2·δ[g^-1]")).iter().all(|x| x.is_zero()));
}
