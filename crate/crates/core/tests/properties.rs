mod common;

use common::Dense;
use proptest::prelude::*;
use skewalg_core::fuzz::generate_batch;
use skewalg_core::invariants::invariant_suite;
use skewalg_core::linalg::{solve_affine, Field, Matrix, Scalar};
use skewalg_core::separability::{decide_separability, extract_witness, oracle_solutions};
use skewalg_core::skewring::SkewRing;
use skewalg_core::tensor::{Factor, Mid, TensorOverA};

fn fields() -> [Field; 3] {
    [Field::Rational, Field::prime(2).unwrap(), Field::prime(3).unwrap()]
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>, usize)> {
    (1usize..5, 1usize..6, 0usize..3).prop_flat_map(|(r, c, fi)| {
        (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c), Just(fi))
    })
}

fn build(f: Field, r: usize, c: usize, xs: &[i64]) -> Matrix {
    assert_eq!(xs.len(), r * c);
    let rows = xs.chunks(c).map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect();
    Matrix::from_rows(f, c, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent((r, c, xs, fi) in matrix_strategy()) {
        let m = build(fields()[fi], r, c, &xs);
        prop_assert_eq!(m.rref().rref(), m.rref());
    }

    #[test]
    fn rank_plus_nullity((r, c, xs, fi) in matrix_strategy()) {
        let m = build(fields()[fi], r, c, &xs);
        prop_assert_eq!(m.rank() + m.kernel().len(), c);
        for k in m.kernel() {
            prop_assert!(m.mul_vec(&k).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn affine_solutions_substitute((r, c, xs, fi) in matrix_strategy(), x0 in prop::collection::vec(-2i64..3, 5)) {
        let f = fields()[fi];
        let m = build(f, r, c, &xs);
        let x: Vec<Scalar> = x0[..c].iter().map(|&v| f.from_i64(v)).collect();
        let b = m.mul_vec(&x);
        let set = solve_affine(&m, &b).unwrap();
        let p = set.particular.clone().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&p), b.clone());
        for k in &set.kernel_basis {
            let pk: Vec<Scalar> = p.iter().zip(k).map(|(a, b)| a + b).collect();
            prop_assert_eq!(m.mul_vec(&pk), b.clone());
        }
        prop_assert!(set.contains(&x));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decision_matches_oracle_and_extraction(seed in any::<u64>(), fi in 0usize..3) {
        let inst = generate_batch(seed, 1, 6, 6).remove(0);
        let pa = inst.realize(fields()[fi]);
        let verdict = decide_separability(&pa).unwrap();
        let sr = SkewRing::build(&pa).unwrap();
        let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap();
        let (set, _) = oracle_solutions(&sr, &t);
        prop_assert_eq!(verdict.separable, !set.is_empty(), "{}", inst.description);
        if let Some(cert) = &verdict.certificate {
            prop_assert!(cert.checks.all());
            prop_assert!(set.contains(&cert.idempotent_x));
        }
        if let Some(x) = &set.particular {
            let w = extract_witness(&pa, &sr, &t, x).unwrap();
            prop_assert!(w.central && w.traces_are_units && w.diagonal_transport, "{}", inst.description);
        }
    }

    #[test]
    fn dense_oracle_agrees_on_small_instances(seed in any::<u64>(), fi in 0usize..3) {
        let inst = generate_batch(seed, 1, 4, 4).remove(0);
        let pa = inst.realize(fields()[fi]);
        let sr = SkewRing::build(&pa).unwrap();
        prop_assume!(sr.dim() <= 8);
        let t = TensorOverA::new(&sr, Factor::Whole, Factor::Whole, Mid::Base).unwrap();
        let dense = Dense::new(&sr);
        prop_assert_eq!(dense.quotient_dim(), t.dim());
        let verdict = decide_separability(&pa).unwrap();
        prop_assert_eq!(dense.separable(&sr), verdict.separable);
        if let Some(cert) = &verdict.certificate {
            prop_assert!(dense.is_separability_element(&sr, &dense.library_form(&t, &cert.idempotent_x)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn invariant_suite_holds(seed in any::<u64>(), fi in 0usize..3) {
        let inst = generate_batch(seed, 1, 6, 6).remove(0);
        let pa = inst.realize(fields()[fi]);
        for c in invariant_suite(&pa).unwrap() {
            prop_assert!(c.passed, "{}: {} {}", inst.description, c.name, c.detail);
        }
    }
}
