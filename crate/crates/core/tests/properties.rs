use proptest::prelude::*;

use coiso_core::cbimod::random::{bimodule, chain, rng, triple};
use coiso_core::cbimod::{reduce_bimodule, tensor3, triangle_check, Bimodule3};
use coiso_core::classlim::random::deformed_chain;
use coiso_core::classlim::{cl_data, dim_accounting_bimodule, dim_accounting_triple};
use coiso_core::coiso::canonical_bimodule;
use coiso_core::exact_core::{kernel, quotient, Field, Fp, Mat, Subspace, Q};
use coiso_core::finalg::{matrix_algebra, tensor_algebra, validate_algebra};
use coiso_core::model::{algebra_entry, FieldChoice, Workspace};

fn q() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..9).prop_map(|(n, d)| Q::new(n, d))
}

fn f7() -> impl Strategy<Value = Fp<7>> {
    (0i64..7).prop_map(Fp::<7>::from_i64)
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Q>> {
    prop::collection::vec(-2i64..3, rows * cols).prop_map(move |v| Mat::from_i64(rows, cols, &v))
}

fn field_laws<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.sub(a), F::zero());
    if let Some(i) = a.inv() {
        assert_eq!(a.mul(&i), F::one());
    } else {
        assert!(a.is_zero());
    }
    assert_eq!(F::parse(&a.render()).unwrap(), *a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_form_a_field(a in q(), b in q(), c in q()) {
        field_laws(&a, &b, &c);
    }

    #[test]
    fn f7_forms_a_field(a in f7(), b in f7(), c in f7()) {
        field_laws(&a, &b, &c);
    }

    #[test]
    fn rank_nullity(m in mat(3, 4)) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.rows, 4);
        prop_assert!(k.rows == 0 || m.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn inverse_roundtrip(m in mat(3, 3)) {
        match m.inverse() {
            Some(i) => prop_assert_eq!(m.mul(&i), Mat::identity(3)),
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn subspace_dimension_formula(u in mat(4, 2), v in mat(4, 2)) {
        let (u, v) = (Subspace::col_span(&u), Subspace::col_span(&v));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subset_of(&u) && i.is_subset_of(&v));
    }

    #[test]
    fn quotient_sections(u in mat(4, 2)) {
        let q = quotient(&Subspace::col_span(&u));
        prop_assert_eq!(q.proj.mul(&q.sect), Mat::identity(q.dim()));
        for b in q.sub.vectors() {
            prop_assert!(q.project(&b).iter().all(Field::is_zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructions_stay_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = triple::<Q>(&mut r, 3);
        prop_assert!(validate_algebra(&t.tot).passed());
        prop_assert!(validate_algebra(&tensor_algebra(&t.tot, &t.tot)).passed());
        prop_assert!(validate_algebra(&matrix_algebra(&t.tot, 2)).passed());
        prop_assert!(validate_algebra(&t.reduce().alg).passed());
    }

    #[test]
    fn canonical_bimodule_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = triple::<Q>(&mut r, 4);
        let cb = canonical_bimodule(&t);
        prop_assert!(cb.report.passed(), "{:?}", cb.report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn tensor_with_identity_keeps_reduced_dimension(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (b, a) = (triple::<Q>(&mut r, 3), triple::<Q>(&mut r, 3));
        let e = bimodule(&mut r, &b, &a, 3);
        prop_assert!(e.validate().passed());
        let t = tensor3(&Bimodule3::identity(&b), &e).unwrap();
        prop_assert_eq!(reduce_bimodule(&t.module).module.dim, reduce_bimodule(&e).module.dim);
        prop_assert!(triangle_check(&Bimodule3::identity(&b), &e).unwrap().passed());
    }

    #[test]
    fn random_chains_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = chain::<Q>(&mut r, 3, 3, 2);
        let inner = tensor3(&c[1], &c[2]).unwrap();
        let outer = tensor3(&c[0], &inner.module).unwrap();
        prop_assert!(outer.module.validate().passed());
    }

    #[test]
    fn classical_limit_dimension_accounting(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = deformed_chain::<Q>(&mut r, 1, 2);
        let d = cl_data(&c[0]).unwrap();
        prop_assert!(dim_accounting_bimodule(&c[0], &d.cl).passed());
        prop_assert!(dim_accounting_triple(&c[0].left, &d.left).passed());
        prop_assert!(dim_accounting_triple(&c[0].right, &d.right).passed());
    }

    #[test]
    fn model_roundtrip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = triple::<Q>(&mut r, 4);
        let text = format!(r#"{{"algebras": {{"A": {}}}}}"#, algebra_entry(&t.tot));
        let ws = Workspace::<Q>::parse(&text, FieldChoice::Q).unwrap();
        prop_assert_eq!(ws.algebras["A"].structure(), t.tot.structure());
        prop_assert_eq!(&ws.algebras["A"].unit, &t.tot.unit);
    }
}
