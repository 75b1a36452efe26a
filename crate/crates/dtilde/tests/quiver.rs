use dtilde::laurent::VarId;
use dtilde::quiver::{
    classify_root, defect, delta, euler_form, positive_real_roots, reflect_dim, sink_order,
    tau_dim, tubes, Decomposition, DimVec, EdgeId, QuiverDn, RootKind, Side, TauDirection, TubeId,
};
use dtilde::Error;

const Q0: VarId = VarId::Inner(0);

fn dv(n: usize, s: &str) -> DimVec {
    DimVec::parse_pairs(n, s).unwrap()
}

#[test]
fn euler_form_examples() {
    for q in QuiverDn::all_orientations(4) {
        let sa = DimVec::simple(4, VarId::A);
        assert_eq!(euler_form(&q, &sa, &sa), 1);
        assert_eq!(euler_form(&q, &q.delta(), &q.delta()), 0);
    }
    let q = QuiverDn::subspace(4);
    assert_eq!(euler_form(&q, &q.delta(), &dv(4, "0=1,a=1")), -1);
}

#[test]
fn delta_entries() {
    assert_eq!(delta(&QuiverDn::subspace(4)), dv(4, "0=2,a=1,b=1,c=1,d=1"));
    assert_eq!(delta(&QuiverDn::subspace(5)), dv(5, "0=2,1=2,a=1,b=1,c=1,d=1"));
    for n in 4..=7 {
        for q in QuiverDn::all_orientations(n) {
            assert_eq!(q.defect(&q.delta()), 0);
            assert_eq!(q.tits_form(&q.delta()), 0);
        }
    }
}

#[test]
fn defect_examples() {
    let q = QuiverDn::subspace(4);
    assert_eq!(defect(&q, &q.delta()), 0);
    assert_eq!(defect(&q, &dv(4, "0=1,a=1")), -1);
    assert_eq!(defect(&q, &dv(4, "0=3,a=2,b=1,c=1,d=1")), -1);
}

#[test]
fn reflection_examples() {
    let q = QuiverDn::subspace(4);
    for v in q.vertices() {
        let s = DimVec::simple(4, v);
        assert_eq!(reflect_dim(&q, v, &s), s.scale(-1));
        assert_eq!(reflect_dim(&q, v, &q.delta()), q.delta());
    }
    assert_eq!(reflect_dim(&q, Q0, &DimVec::simple(4, VarId::A)), dv(4, "0=1,a=1"));
}

#[test]
fn sink_order_examples() {
    let q = QuiverDn::subspace(4);
    assert_eq!(sink_order(&q), vec![Q0, VarId::A, VarId::B, VarId::C, VarId::D]);
    for n in 4..=6 {
        for q in QuiverDn::all_orientations(n) {
            let order = q.sink_order();
            assert_eq!(order.len(), n + 1);
            let mut cur = q.clone();
            for &v in &order {
                assert!(cur.is_sink(v), "{v} is not a sink of {cur}");
                cur = cur.reflect(v);
            }
            assert_eq!(cur, q);
        }
    }
}

#[test]
fn inverse_translate_of_a_projective() {
    let q = QuiverDn::subspace(4);
    let pa = q.projective(VarId::A);
    assert_eq!(pa, dv(4, "0=1,a=1"));
    let next = tau_dim(&q, &pa, TauDirection::Inverse).unwrap();
    assert_eq!(next, dv(4, "0=2,b=1,c=1,d=1"));
    assert_eq!(tau_dim(&q, &next, TauDirection::Forward).unwrap(), pa);
    assert!(matches!(tau_dim(&q, &pa, TauDirection::Forward), Err(Error::OutOfCategory(_))));
    assert_eq!(tau_dim(&q, &q.delta(), TauDirection::Inverse).unwrap(), q.delta());
}

#[test]
fn translate_round_trips() {
    for q in QuiverDn::all_orientations(4).into_iter().step_by(3) {
        for a in positive_real_roots(&q, 9) {
            if let Ok(b) = q.tau_dim(&a, TauDirection::Inverse) {
                assert_eq!(q.tau_dim(&b, TauDirection::Forward).unwrap(), a);
                assert_eq!(q.defect(&b), q.defect(&a));
            }
        }
    }
}

#[test]
fn classify_examples() {
    let q = QuiverDn::subspace(4);
    let info = classify_root(&q, &q.delta()).unwrap();
    assert_eq!(info.kind, RootKind::ImaginaryMultipleOfDelta);
    assert_eq!(info.decomposition, Decomposition::Homogeneous { r: 1 });

    let info = classify_root(&q, &dv(4, "0=1,a=1,c=1")).unwrap();
    assert_eq!(info.kind, RootKind::RealRegular);
    match info.decomposition {
        Decomposition::Tube { tube, r, l, .. } => {
            assert_eq!((tube, r, l), (TubeId::Rank2First, 0, 1));
        }
        other => panic!("unexpected {other:?}"),
    }

    let info = classify_root(&q, &dv(4, "0=3,a=2,b=1,c=1,d=1")).unwrap();
    assert_eq!(info.kind, RootKind::RealPreprojective);
    assert_eq!(info.defect, -1);
    match info.decomposition {
        Decomposition::Normal { r, t, .. } => {
            assert_eq!(r, 1);
            assert_eq!(t, dv(4, "0=1,a=1"));
        }
        other => panic!("unexpected {other:?}"),
    }

    assert!(matches!(classify_root(&q, &dv(4, "0=1,a=2")), Err(Error::NotARoot(_))));
    assert!(matches!(classify_root(&q, &dv(4, "a=1,b=1")), Err(Error::NotARoot(_))));
}

#[test]
fn classification_reconstructs_every_root() {
    for n in [4, 5] {
        for q in QuiverDn::all_orientations(n) {
            for a in positive_real_roots(&q, 20 - 4 * (n as i64 - 4)) {
                let info = classify_root(&q, &a).unwrap();
                assert_eq!(info.reconstruct(&q), a, "{q} {a}");
            }
        }
    }
}

#[test]
fn defect_sign_partitions_real_roots() {
    for q in QuiverDn::all_orientations(4) {
        for a in positive_real_roots(&q, 15) {
            let info = classify_root(&q, &a).unwrap();
            let d = q.defect(&a);
            let expected = match d.signum() {
                -1 => RootKind::RealPreprojective,
                1 => RootKind::RealPreinjective,
                _ => RootKind::RealRegular,
            };
            assert_eq!(info.kind, expected, "{q} {a}");
        }
    }
}

#[test]
fn reflection_preserves_defect() {
    for q in QuiverDn::all_orientations(5).into_iter().step_by(5) {
        for a in positive_real_roots(&q, 12) {
            for v in q.vertices().into_iter().filter(|&v| q.is_sink(v) || q.is_source(v)) {
                if a != DimVec::simple(5, v) {
                    let r = q.reflect(v);
                    assert_eq!(r.defect(&q.reflect_dim(v, &a)), q.defect(&a));
                }
            }
        }
    }
}

#[test]
fn big_tube_is_periodic() {
    for n in 4..=7 {
        for q in [QuiverDn::subspace(n), QuiverDn::subspace(n).opposite()] {
            let data = tubes(&q);
            let big = data.iter().find(|t| t.id == TubeId::RankN2).unwrap();
            assert_eq!(big.rank(), n - 2);
            let e0 = &big.quasi_simples[0];
            let mut cur = e0.clone();
            for _ in 0..n - 2 {
                cur = q.tau_dim(&cur, TauDirection::Inverse).unwrap();
            }
            assert_eq!(&cur, e0);
            let total = big.segment(0, n - 2);
            assert_eq!(total, q.delta());
        }
    }
}

#[test]
fn orientation_strings_round_trip() {
    for q in QuiverDn::all_orientations(5) {
        let s = q.orientation_string();
        assert_eq!(QuiverDn::parse(5, &s).unwrap(), q);
    }
    let q = QuiverDn::parse(5, "a:rev").unwrap();
    assert_eq!(q.a(Q0, VarId::A), 1);
    assert_eq!(q.a(VarId::A, Q0), 0);
    assert_eq!(QuiverDn::parse(5, "").unwrap(), QuiverDn::subspace(5));
    assert!(matches!(QuiverDn::parse(5, "e:fwd"), Err(Error::Parse(_))));
    assert!(matches!(QuiverDn::parse(4, "v0:fwd"), Err(Error::Parse(_))));
    assert!(matches!(QuiverDn::parse(4, "a:sideways"), Err(Error::Parse(_))));
}

#[test]
fn subspace_orientation_shape() {
    let q = QuiverDn::subspace(6);
    for e in [EdgeId::A, EdgeId::B] {
        assert_eq!(q.arrow(e).target, Q0);
    }
    for e in [EdgeId::C, EdgeId::D] {
        assert_eq!(q.arrow(e).target, VarId::Inner(2));
    }
    assert_eq!(q.arrow(EdgeId::V(0)).source, VarId::Inner(1));
    assert!(q.is_sink(Q0));
}

#[test]
fn dimvec_json_round_trip() {
    let a = dv(5, "0=2,1=1,a=1,d=3");
    let j = a.to_json();
    assert_eq!(DimVec::from_json(5, &j).unwrap(), a);
    assert!(DimVec::parse_pairs(4, "1=1").is_err());
    assert!(DimVec::parse_pairs(4, "a=x").is_err());
}

#[test]
fn reflection_path_connects_orientations() {
    let all = QuiverDn::all_orientations(4);
    for from in &all {
        for to in all.iter().step_by(5) {
            let mut cur = from.clone();
            for (v, side) in from.reflection_path(to) {
                match side {
                    Side::Sink => assert!(cur.is_sink(v)),
                    Side::Source => assert!(cur.is_source(v)),
                }
                cur = cur.reflect(v);
            }
            assert_eq!(&cur, to);
        }
    }
}
