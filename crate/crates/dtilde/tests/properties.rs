use std::collections::BTreeMap;

use dtilde::formulas::{dual_fpoly, euler_strata, grassrefl_sum, Engine};
use dtilde::laurent::{
    parse_poly, substitute, to_polynomial, LaurentPoly, Monomial, RationalFunction, VarId,
};
use dtilde::quiver::{positive_real_roots, DimVec, QuiverDn};
use num_bigint::BigInt;
use proptest::prelude::*;

const VARS: [VarId; 4] = [VarId::Inner(0), VarId::A, VarId::B, VarId::C];

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-2i32..=2, VARS.len())
        .prop_map(|exps| Monomial::from_pairs(VARS.iter().copied().zip(exps)))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), -5i64..=5), 0..6).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c))))
    })
}

fn polynomial() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(0i32..=2, VARS.len()), 0i64..=4), 0..6).prop_map(
        |terms| {
            LaurentPoly::from_terms(
                terms.into_iter().map(|(e, c)| {
                    (Monomial::from_pairs(VARS.iter().copied().zip(e)), BigInt::from(c))
                }),
            )
        },
    )
}

fn orientation(n: usize) -> impl Strategy<Value = QuiverDn> {
    let all = QuiverDn::all_orientations(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert_eq!(-&(-&a), a);
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).evaluate_ones(), a.evaluate_ones() * b.evaluate_ones());
        prop_assert_eq!((&a + &b).evaluate_ones(), a.evaluate_ones() + b.evaluate_ones());
    }

    #[test]
    fn rendering_round_trips(a in laurent()) {
        prop_assert_eq!(parse_poly(&a.render()).unwrap(), a);
    }

    #[test]
    fn substitution_is_multiplicative(a in polynomial(), b in polynomial(), g in polynomial()) {
        let mut map = BTreeMap::new();
        map.insert(VarId::A, RationalFunction::from_poly(&LaurentPoly::var(VarId::A) * &LaurentPoly::one_plus(VarId::B, 1)));
        map.insert(VarId::C, RationalFunction::from_poly(&g + &LaurentPoly::one()));
        let lhs = to_polynomial(&substitute(&(&a * &b), &map)).unwrap();
        let rhs = &to_polynomial(&substitute(&a, &map)).unwrap() * &to_polynomial(&substitute(&b, &map)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_then_extraction_is_identity(a in laurent()) {
        prop_assert_eq!(to_polynomial(&RationalFunction::from_poly(a.clone())).unwrap(), a);
    }

    #[test]
    fn exact_division_undoes_multiplication(a in polynomial(), b in polynomial()) {
        let b = &b + &LaurentPoly::one();
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn strata_inversion(table in prop::collection::vec(-20i64..20, 1..6), extra in 0i64..3) {
        let len = table.len();
        let e_q = extra;
        let alpha_q = e_q + len as i64 - 1;
        let table: Vec<BigInt> = table.into_iter().map(BigInt::from).collect();
        let strata: Vec<BigInt> = (0..len).map(|m| euler_strata(&table, alpha_q, e_q, m)).collect();
        for m in 0..len {
            prop_assert_eq!(grassrefl_sum(&strata, alpha_q, e_q, m), table[m].clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sink_and_source_reflections_preserve_defect(q in orientation(5), idx in 0usize..200) {
        let roots = positive_real_roots(&q, 10);
        let a = &roots[idx % roots.len()];
        for v in q.vertices() {
            if (q.is_sink(v) || q.is_source(v)) && *a != DimVec::simple(5, v) {
                prop_assert_eq!(q.reflect(v).defect(&q.reflect_dim(v, a)), q.defect(a));
            }
        }
    }

    #[test]
    fn fpolys_are_structured(q in orientation(4), idx in 0usize..500) {
        let roots = positive_real_roots(&q, 12);
        let a = &roots[idx % roots.len()];
        let f = Engine::new().f_root(&q, a).unwrap();
        prop_assert!(f.is_nonnegative());
        prop_assert_eq!(f.coeff(&Monomial::one()), BigInt::from(1));
        prop_assert_eq!(f.coeff(&a.monomial()), BigInt::from(1));
        for (m, _) in f.terms() {
            prop_assert!(DimVec::from_monomial(4, m).le(a));
        }
        prop_assert_eq!(dual_fpoly(&dual_fpoly(&f, a), a), f);
    }

    #[test]
    fn dual_is_an_involution(f in polynomial()) {
        let top = DimVec::from_pairs(4, &[(VarId::Inner(0), 2), (VarId::A, 2), (VarId::B, 2), (VarId::C, 2)]);
        prop_assert_eq!(dual_fpoly(&dual_fpoly(&f, &top), &top), f);
    }
}
