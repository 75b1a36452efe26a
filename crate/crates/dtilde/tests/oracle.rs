use dtilde::coeffq::{build_rank2_chain, build_snake, f_t1, gen_function};
use dtilde::formulas::Engine;
use dtilde::laurent::{LaurentPoly, VarId};
use dtilde::oracle::{
    count_points, count_points_covered, counting_polynomial, end_dimension, euler_char,
    fpoly_oracle, fpoly_oracle_with_limit, gauss_binomial, good_primes, good_reduction,
    grassmannian_dimension, homogeneous_rep, kernel_q, rank_q, reflect_rep, rep_from_root,
    sub_dimensions, subspaces, tree_module, CountingPolynomial, IntMatrix, MatrixRep,
};
use dtilde::quiver::{classify_root, DimVec, QuiverDn, RootKind, TauDirection};
use dtilde::Error;
use num_bigint::BigInt;

const Q0: VarId = VarId::Inner(0);

fn dv(n: usize, s: &str) -> DimVec {
    DimVec::parse_pairs(n, s).unwrap()
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn gaussian_binomials_and_subspace_lists() {
    assert_eq!(gauss_binomial(2, 1, 2), 3);
    assert_eq!(gauss_binomial(4, 2, 3), 130);
    assert_eq!(gauss_binomial(3, 0, 5), 1);
    assert_eq!(gauss_binomial(3, 4, 5), 0);
    for (m, k, p) in [(3, 1, 2), (4, 2, 2), (3, 2, 3)] {
        assert_eq!(subspaces(m, k, p).len() as u128, gauss_binomial(m as i64, k as i64, p));
    }
}

#[test]
fn rational_linear_algebra() {
    let rows = vec![vec![big(1), big(2), big(3)], vec![big(2), big(4), big(6)]];
    assert_eq!(rank_q(&rows, 3), 1);
    let ker = kernel_q(&rows, 3);
    assert_eq!(ker.len(), 2);
    for v in ker {
        let dot: BigInt = v.iter().zip(&rows[0]).map(|(a, b)| a * b).sum();
        assert_eq!(dot, big(0));
    }
    assert_eq!(IntMatrix::identity(3).rank(), 3);
}

#[test]
fn counting_polynomial_interpolation() {
    let pts: Vec<(u64, u128)> = [2u64, 3, 5, 7].iter().map(|&p| (p, (p * p + 1) as u128)).collect();
    let poly = CountingPolynomial::interpolate(&pts).unwrap();
    assert_eq!(poly.coefficients(), &[big(1), big(0), big(1)]);
    assert_eq!(poly.degree(), Some(2));
    assert_eq!(poly.at_one(), big(2));
    let skewed = [(2u64, 1u128), (3, 2), (5, 2)];
    assert!(matches!(
        CountingPolynomial::interpolate(&skewed),
        Err(Error::NonIntegralInterpolation(_))
    ));
}

#[test]
fn simple_tree_module() {
    let q = QuiverDn::subspace(4);
    let m = MatrixRep::simple(&q, Q0);
    assert_eq!(end_dimension(&m), 1);
    assert_eq!(fpoly_oracle(&m).unwrap(), LaurentPoly::one_plus(Q0, 1));
    let one: Vec<DimVec> = sub_dimensions(m.dims());
    assert_eq!(one.len(), 2);
}

#[test]
fn chain_tree_module_is_indecomposable() {
    let q = QuiverDn::subspace(4);
    let m = tree_module(&build_rank2_chain(1), &q).unwrap();
    assert_eq!(*m.dims(), dv(4, "0=1,a=1,c=1"));
    assert_eq!(end_dimension(&m), 1);
    assert_eq!(fpoly_oracle(&m).unwrap(), f_t1());
}

#[test]
fn snake_tree_module_has_its_type() {
    let q = QuiverDn::subspace(4);
    let g = build_snake(0, 4);
    let m = tree_module(&g, &q).unwrap();
    assert_eq!(*m.dims(), g.full_type());
    assert_eq!(end_dimension(&m), 1);
    let info = classify_root(&q, m.dims()).unwrap();
    assert_eq!((info.kind, info.defect), (RootKind::RealPreprojective, -1));
}

#[test]
fn tree_modules_count_admissible_subsets() {
    for (g, n) in [
        (build_snake(0, 4), 4),
        (build_snake(0, 5), 5),
        (build_snake(0, 6), 6),
        (build_rank2_chain(2), 4),
        (build_rank2_chain(3), 4),
    ] {
        let m = tree_module(&g, &QuiverDn::subspace(n)).unwrap();
        assert_eq!(fpoly_oracle(&m).unwrap(), gen_function(&g), "{}", g.full_type());
    }
    let g = build_rank2_chain(1);
    assert!(matches!(tree_module(&g, &QuiverDn::subspace(5)), Err(Error::InconsistentLabels(_))));
}

#[test]
fn reflecting_a_simple_at_its_sink_gives_zero() {
    let q = QuiverDn::subspace(4);
    let r = reflect_rep(&MatrixRep::simple(&q, Q0), Q0).unwrap();
    assert_eq!(r.total_dim(), 0);
    let q5 = QuiverDn::subspace(5);
    let inner = VarId::Inner(1);
    assert!(reflect_rep(&MatrixRep::simple(&q5, inner), inner).is_err());
}

#[test]
fn double_reflection_restores_dimensions_and_counts() {
    let q = QuiverDn::subspace(4);
    let m = rep_from_root(&q, &dv(4, "0=2,a=1,b=1,c=1")).unwrap();
    let there = reflect_rep(&m, Q0).unwrap();
    assert_eq!(*there.dims(), q.reflect_dim(Q0, m.dims()));
    let back = reflect_rep(&there, Q0).unwrap();
    assert_eq!(back.quiver(), &q);
    assert_eq!(back.dims(), m.dims());
    assert_eq!(fpoly_oracle(&back).unwrap(), fpoly_oracle(&m).unwrap());
}

#[test]
fn reflecting_through_a_sink_order_translates() {
    // one pass of sink reflections is the Auslander-Reiten translate
    let q = QuiverDn::subspace(4);
    let mut checked = 0;
    for alpha in dtilde::quiver::positive_real_roots(&q, 9) {
        let Ok(expected) = q.tau_dim(&alpha, TauDirection::Forward) else {
            continue;
        };
        let start = rep_from_root(&q, &alpha).unwrap();
        let mut m = start.clone();
        for s in q.sink_order() {
            m = reflect_rep(&m, s).unwrap();
        }
        assert_eq!(m.quiver(), &q);
        assert_eq!(*m.dims(), expected, "{alpha}");
        assert_eq!(end_dimension(&m), end_dimension(&start));
        checked += 1;
    }
    assert!(checked > 20);
    for v in q.vertices() {
        let mut m = rep_from_root(&q, &q.projective(v)).unwrap();
        for s in q.sink_order() {
            m = reflect_rep(&m, s).unwrap();
        }
        assert_eq!(m.total_dim(), 0);
    }
}

#[test]
fn root_representation_matches_the_tree_module() {
    let q = QuiverDn::subspace(4);
    let alpha = dv(4, "0=1,a=1,c=1");
    let m = rep_from_root(&q, &alpha).unwrap();
    let t = tree_module(&build_rank2_chain(1), &q).unwrap();
    assert_eq!(m.dims(), t.dims());
    assert_eq!(end_dimension(&m), 1);
    for p in [2, 3] {
        for e in sub_dimensions(&alpha) {
            assert_eq!(count_points(&m, &e, p).unwrap(), count_points(&t, &e, p).unwrap());
        }
    }
}

#[test]
fn root_representations_are_bricks() {
    let q = QuiverDn::subspace(4);
    let m = rep_from_root(&q, &dv(4, "0=3,a=2,b=1,c=1,d=1")).unwrap();
    assert_eq!(end_dimension(&m), 1);
    assert!(matches!(rep_from_root(&q, &dv(4, "a=1,b=1")), Err(Error::NotARoot(_))));
}

#[test]
fn homogeneous_representations() {
    let q = QuiverDn::subspace(4);
    for lambda in [0, 1] {
        assert!(matches!(homogeneous_rep(&q, 1, lambda), Err(Error::BadParameter(_))));
    }
    assert!(homogeneous_rep(&q.opposite(), 1, 2).is_err());
    let m = homogeneous_rep(&q, 1, 2).unwrap();
    assert_eq!(*m.dims(), q.delta());
    assert_eq!(euler_char(&m, &DimVec::simple(4, Q0)).unwrap(), big(2));
    assert_eq!(euler_char(&m, &dv(4, "0=1,a=1")).unwrap(), big(1));
    let f = fpoly_oracle(&m).unwrap();
    assert_eq!(f.evaluate_ones(), big(23));
    assert_eq!(f, Engine::new().f_delta(&q).unwrap());
    assert_eq!(end_dimension(&homogeneous_rep(&q, 2, 3).unwrap()), 2);
}

#[test]
fn homogeneous_delta_is_independent_of_the_tube() {
    let q = QuiverDn::subspace(4);
    let a = fpoly_oracle(&homogeneous_rep(&q, 1, 2).unwrap()).unwrap();
    let b = fpoly_oracle(&homogeneous_rep(&q, 1, 3).unwrap()).unwrap();
    let c = fpoly_oracle(&homogeneous_rep(&q, 1, -1).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn lifted_delta_matches_the_oracle_on_five_vertices() {
    let q = QuiverDn::subspace(5);
    let m = homogeneous_rep(&q, 1, 2).unwrap();
    assert_eq!(fpoly_oracle(&m).unwrap(), Engine::new().f_delta(&q).unwrap());
}

#[test]
fn trivial_grassmannians_are_points() {
    let q = QuiverDn::subspace(4);
    let m = rep_from_root(&q, &dv(4, "0=2,a=1,b=1,d=1")).unwrap();
    for p in [2, 3, 5] {
        assert_eq!(count_points(&m, &DimVec::zeros(4), p).unwrap(), 1);
        assert_eq!(count_points(&m, m.dims(), p).unwrap(), 1);
    }
    assert_eq!(count_points(&m, &dv(4, "a=2"), 3).unwrap(), 0);
}

#[test]
fn projective_line_over_the_field_with_three_elements() {
    let q = QuiverDn::subspace(4);
    let m = homogeneous_rep(&q, 1, 2).unwrap();
    let e = DimVec::simple(4, Q0);
    assert!(good_reduction(&m, 3));
    assert_eq!(count_points(&m, &e, 3).unwrap(), 4);
    let poly = counting_polynomial(&m, &e).unwrap();
    assert_eq!(poly.coefficients(), &[big(1), big(1)]);
    assert_eq!(grassmannian_dimension(m.dims(), &e), 1);
}

#[test]
fn bad_reduction_is_reported() {
    let q = QuiverDn::subspace(4);
    let m = homogeneous_rep(&q, 1, 3).unwrap();
    assert!(!good_reduction(&m, 3));
    let e = DimVec::simple(4, Q0);
    assert!(matches!(count_points(&m, &e, 3), Err(Error::BadReduction(3))));
    assert!(!good_primes(&m, 5).unwrap().contains(&3));
}

#[test]
fn simple_fpolys_from_points() {
    let q = QuiverDn::subspace(4);
    for v in q.vertices() {
        let m = MatrixRep::simple(&q, v);
        assert_eq!(fpoly_oracle(&m).unwrap(), LaurentPoly::one_plus(v, 1));
    }
}

#[test]
fn direct_sums_multiply() {
    let q = QuiverDn::subspace(4);
    let m1 = rep_from_root(&q, &dv(4, "0=1,a=1")).unwrap();
    let m2 = rep_from_root(&q, &dv(4, "0=1,c=1,d=1")).unwrap();
    let sum = m1.direct_sum(&m2).unwrap();
    assert_eq!(*sum.dims(), m1.dims().add(m2.dims()));
    let f = fpoly_oracle(&sum).unwrap();
    assert_eq!(f, &fpoly_oracle(&m1).unwrap() * &fpoly_oracle(&m2).unwrap());
}

#[test]
fn size_guard() {
    let q = QuiverDn::subspace(4);
    let m = homogeneous_rep(&q, 2, 2).unwrap();
    assert_eq!(m.total_dim(), 12);
    assert!(matches!(fpoly_oracle(&m), Err(Error::TooLarge(_))));
    assert!(matches!(fpoly_oracle_with_limit(&m, 5), Err(Error::TooLarge(_))));
}

#[test]
fn fibration_over_the_covered_strata() {
    let q = QuiverDn::subspace(4);
    for alpha in ["0=2,a=1,b=1,c=1", "0=3,a=1,b=1,c=1,d=1", "0=2,a=1,c=1,d=1"] {
        let alpha = dv(4, alpha);
        let m = rep_from_root(&q, &alpha).unwrap();
        let aq = alpha.get(Q0);
        for p in [2, 3] {
            for e in sub_dimensions(&alpha) {
                let eq = e.get(Q0);
                let by_strata: u128 = (0..=eq)
                    .map(|r| {
                        let shifted = e.sub(&DimVec::simple(4, Q0).scale(r));
                        gauss_binomial(aq - eq + r, r, p)
                            * count_points_covered(&m, &shifted, Q0, p).unwrap()
                    })
                    .sum();
                assert_eq!(count_points(&m, &e, p).unwrap(), by_strata, "{alpha} {e} p={p}");
            }
        }
    }
    let m = MatrixRep::simple(&q, VarId::A);
    assert!(count_points_covered(&m, &DimVec::zeros(4), VarId::A, 2).is_err());
}

#[test]
fn oracle_agrees_with_formulas_on_small_roots() {
    let e = Engine::new();
    for q in [
        QuiverDn::subspace(4),
        QuiverDn::subspace(4).opposite(),
        QuiverDn::parse(4, "a:rev,c:rev").unwrap(),
    ] {
        for alpha in dtilde::quiver::positive_real_roots(&q, 8) {
            let m = rep_from_root(&q, &alpha).unwrap();
            assert_eq!(fpoly_oracle(&m).unwrap(), e.f_root(&q, &alpha).unwrap(), "{q} {alpha}");
        }
    }
}

#[test]
fn defect_minus_two_against_points() {
    let q = QuiverDn::subspace(4);
    let b = q.tau_dim(&q.projective(Q0), TauDirection::Inverse).unwrap();
    let m = rep_from_root(&q, &b).unwrap();
    assert_eq!(fpoly_oracle(&m).unwrap(), Engine::new().f_root(&q, &b).unwrap());
}

#[test]
fn json_round_trip() {
    let q = QuiverDn::subspace(5);
    let m = rep_from_root(&q, &dv(5, "0=2,1=2,a=1,b=1,c=1")).unwrap();
    let back = MatrixRep::from_json(&m.to_json()).unwrap();
    assert_eq!(back, m);
    assert!(MatrixRep::from_json(&serde_json::json!({"n": 4})).is_err());
}

#[test]
fn schur_roots_without_a_reflection_word_get_a_brick() {
    let engine = Engine::new();
    let mut found = 0;
    for q in QuiverDn::all_orientations(5) {
        for alpha in dtilde::quiver::positive_real_roots(&q, 8) {
            let reducible = dtilde::formulas::reduction_word(&q, &alpha).is_some();
            if reducible || alpha.is_thin() {
                continue;
            }
            let m = rep_from_root(&q, &alpha).unwrap();
            assert_eq!(end_dimension(&m), 1);
            assert_eq!(fpoly_oracle(&m).unwrap(), engine.f_root(&q, &alpha).unwrap());
            found += 1;
        }
    }
    assert!(found > 0);
}
